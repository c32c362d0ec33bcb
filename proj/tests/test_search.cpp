#include <cmath>
#include <random>

#include "doctest.h"
#include "satlab/errors.hpp"
#include "satlab/search.hpp"

using namespace satlab;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invalid_argument;
}

Int cube_sum(const std::vector<Int>& x) {
  Int s = 0;
  for (const Int& c : x) s += c * c * c;
  return s;
}

BoxSpec box2(long ulo, long uhi, long vlo, long vhi) {
  BoxSpec b;
  b.intervals = {{Rational(ulo), Rational(uhi)}, {Rational(vlo), Rational(vhi)}};
  return b;
}

}  // namespace

TEST_CASE("box lattice") {
  BoxSpec b;
  b.intervals = {{Rational(-1, 2), Rational(7, 3)}};
  b.scale = 3;
  auto a = b.axis(0);  // [-1.5, 7]
  REQUIRE(a.size() == 9);
  CHECK(a.front() == -1);
  CHECK(a.back() == 7);
  b.step = 4;
  CHECK(b.axis(0) == std::vector<Int>{Int(-1), Int(3), Int(7)});
  b.intervals = {{Rational(1, 3), Rational(1, 2)}};
  b.scale = 1;
  CHECK(code_of([&] { b.axis(0); }) == Errc::empty_box);
}

TEST_CASE("elkies scan") {
  auto res = scan_map(ElkiesMap{}, BoxSpec::cube(3, Int(1), Int(50)));
  CHECK(res.records.size() >= 1000);
  for (const auto& r : res.records) {
    CHECK(cube_sum(r.point.coords()) == 0);
    CHECK(r.omega.is_finite());
  }
  CHECK(std::is_sorted(res.records.begin(), res.records.end(), record_less));

  auto one = scan_map(ElkiesMap{}, BoxSpec::cube(3, Int(0), Int(1)));
  bool found = false;
  for (const auto& r : one.records) {
    if (r.params == std::vector<Int>{Int(1), Int(0), Int(0)}) {
      found = true;
      CHECK(r.point.coords() == std::vector<Int>{Int(1), Int(-1), Int(-2), Int(2)});
      CHECK(r.omega == Omega(2));
    }
  }
  CHECK(found);

  auto s = density_report(res.records);
  std::size_t total = 0;
  for (const auto& [o, n] : s.histogram) total += n;
  CHECK(total == res.records.size());
}

TEST_CASE("threefold scan") {
  auto fib = threefold_fiber(Int(1471), Int(1471), Int(5881));
  auto res = scan_map(ThreefoldFiberMap{fib}, box2(1, 8, 1, 8));
  CHECK_FALSE(res.records.empty());
  for (const auto& r : res.records) {
    CHECK(cube_sum(r.point.coords()) == 0);
    Int prod = 1;
    for (const Int& c : r.point.coords()) prod *= c;
    CHECK(prod % 7 == 0);
  }
}

TEST_CASE("density report") {
  auto empty = density_report({});
  CHECK(empty.records == 0);
  CHECK(empty.distinct_points == 0);
  CHECK_FALSE(empty.min_omega.has_value());

  std::array<Int, 3> y{Int(1), Int(0), Int(0)};
  auto x = elkies_map(y);
  auto pt = to_primitive(x);
  SearchRecord r{pt, Omega(2), {}, {Int(1), Int(0), Int(0)}, pt.height(), {}, {}};
  SearchRecord r2 = r;
  r2.params = {Int(-1), Int(0), Int(0)};
  auto s = density_report({r, r2});
  CHECK(s.records == 2);
  CHECK(s.distinct_points == 1);
}

TEST_CASE("prime forms") {
  auto pairs = prime_forms_search({{Int(1), Int(0)}, {Int(0), Int(1)}}, box2(1, 20, 1, 20));
  CHECK(std::find(pairs.begin(), pairs.end(), std::array<Int, 2>{Int(2), Int(3)}) != pairs.end());
  CHECK(pairs.size() == 64);  // 8 primes below 20, squared

  std::vector<LinearForm> three{{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}};
  CHECK(local_obstruction(three, box2(1, 20, 1, 20)) == 2U);
  CHECK(code_of([&] { prime_forms_search(three, box2(1, 20, 1, 20)); }) == Errc::local_obstruction);
  PrimeFormsOptions loose;
  loose.enforce_local_condition = false;
  auto tri = prime_forms_search(three, box2(1, 20, 1, 20), loose);
  CHECK(std::find(tri.begin(), tri.end(), std::array<Int, 2>{Int(2), Int(3)}) != tri.end());

  std::vector<LinearForm> gaps{{Int(1), Int(0)}, {Int(1), Int(2)}, {Int(1), Int(4)}};
  CHECK(local_obstruction(gaps, box2(1, 200, 1, 1)) == 3U);
  CHECK_FALSE(local_obstruction(gaps, box2(1, 200, 0, 1)).has_value());

  CHECK(code_of([] {
          prime_forms_search({{Int(1), Int(1)}, {Int(2), Int(2)}}, box2(1, 5, 1, 5));
        }) == Errc::invalid_argument);

  PrimeFormsOptions neg;
  neg.signs = {1, -1};
  auto np = prime_forms_search({{Int(1), Int(0)}, {Int(0), Int(1)}}, box2(1, 10, -10, 10), neg);
  for (const auto& p : np) CHECK(p[1] < 0);
  CHECK_FALSE(np.empty());
}

TEST_CASE("skew search") {
  auto m = example_split_surface();
  auto sf = assemble_split_forms(m, Int(3), Int(1));
  CHECK(sf.product_identity);
  SkewSearchOptions split;
  split.strategy = FiberStrategy::split;
  split.fiber = std::array<Int, 2>{Int(3), Int(1)};
  CHECK(code_of([&] { skew_surface_search(m, split); }) == Errc::local_obstruction);

  SkewSearchOptions none;
  none.fiber_budget = 0;
  CHECK(skew_surface_search(m, none).records.empty());

  SkewSearchOptions small;
  small.fiber_budget = 2;
  small.uv_bound = 5;
  auto rep = skew_surface_search(m, small);
  CHECK(rep.records.size() >= 10);
  IntPoly F = surface_poly(m);
  for (const auto& r : rep.records) {
    CHECK(F.eval(r.point.coords()) == 0);
    REQUIRE(r.skew.has_value());
    CHECK(r.skew->holds());
  }
  CHECK(rep.summary.distinct_fibers == 2);
}

TEST_CASE("approximation") {
  std::array<Int, 3> y{Int(1), Int(0), Int(0)};
  auto x = elkies_map(y);
  double n = std::sqrt(10.0);
  ApproxTarget t{ElkiesMap{}, {x[0].get_d() / n, x[1].get_d() / n, x[2].get_d() / n,
                               x[3].get_d() / n}};
  auto r = approximate_point(t, 0.1, {Int(1), Int(2), Int(4)});
  REQUIRE(r.record.has_value());
  CHECK(r.distance < Rational(1, 10));

  auto none = approximate_point(t, 0.0, {Int(1), Int(2)});
  CHECK_FALSE(none.record.has_value());
  CHECK(none.near_miss.has_value());

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int trial = 0; trial < 3; ++trial) {
    double yr[3] = {U(rng), U(rng), U(rng)};
    std::vector<double> xi;
    for (const auto& f : elkies_forms()) {
      double s = 0;
      for (const auto& [e, c] : f.terms())
        s += c.get_d() * std::pow(yr[0], e[0]) * std::pow(yr[1], e[1]) * std::pow(yr[2], e[2]);
      xi.push_back(s);
    }
    auto a = approximate_point({ElkiesMap{}, xi}, 0.05, {Int(10), Int(100), Int(1000)});
    REQUIRE(a.record.has_value());
    CHECK(a.distance < Rational(1, 20));
    CHECK(normalized_distance(a.record->point.coords(), xi) == a.distance);
  }
}

TEST_CASE("thread invariance") {
  ScanOptions one, many;
  many.threads = 8;
  auto box = BoxSpec::cube(3, Int(-12), Int(12), Int(5));
  REQUIRE_FALSE(elkies_search(box, one).records.empty());
  auto a = elkies_search(box, one), b = elkies_search(box, many);
  CHECK(report_json(a) == report_json(b));
  CHECK(records_tsv(a.records) == records_tsv(b.records));
  CHECK(records_tsv(a.records).rfind("# satlab-records v1\n", 0) == 0);
}
