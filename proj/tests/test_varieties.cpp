#include <random>

#include "doctest.h"
#include "satlab/errors.hpp"
#include "satlab/varieties.hpp"

using namespace satlab;

namespace {

std::mt19937_64 rng(20261019);

Int rnd(long lo, long hi) { return Int(std::uniform_int_distribution<long>(lo, hi)(rng)); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("elkies identity") {
  const auto& f = elkies_forms();
  IntPoly sum = f[0].pow(3) + f[1].pow(3) + f[2].pow(3) + f[3].pow(3);
  CHECK(sum.is_zero());
  for (const auto& g : f) {
    CHECK(g.is_homogeneous());
    CHECK(g.total_degree() == 3);
  }
  for (int i = 0; i < 10000; ++i) {
    std::array<Int, 3> y{rnd(-1000, 1000), rnd(-1000, 1000), rnd(-1000, 1000)};
    if (y[0] == 0 && y[1] == 0 && y[2] == 0) continue;
    auto x = elkies_map(y);
    CHECK(x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + x[2] * x[2] * x[2] + x[3] * x[3] * x[3] == 0);
  }
  std::array<Int, 3> e0{Int(1), Int(0), Int(0)}, e2{Int(0), Int(0), Int(1)};
  CHECK(elkies_map(e0) == std::array<Int, 4>{Int(-1), Int(1), Int(2), Int(-2)});
  CHECK(elkies_map(e2) == std::array<Int, 4>{Int(0), Int(1), Int(-1), Int(0)});
  std::array<Int, 3> z{Int(0), Int(0), Int(0)};
  CHECK(code_of([&] { elkies_map(z); }) == Errc::zero_input);
}

TEST_CASE("skew model shape") {
  auto m = example_split_surface();
  IntPoly F = surface_poly(m);
  CHECK(F.is_homogeneous());
  CHECK(F.total_degree() == 3);
  CHECK(model_from_cubic(F) == m);
  IntPoly bad = F + IntPoly::monomial(4, {0, 0, 3, 0}, Int(1));
  CHECK(code_of([&] { model_from_cubic(bad); }) == Errc::shape_mismatch);
  CHECK(model_from_text(model_to_text(m)) == m);
  CHECK(model_from_text("# comment\n" + model_to_text(m) + "\n") == m);
  CHECK(code_of([] { model_from_text("a0=1\n"); }) == Errc::parse_error);

  auto r = model_resultants(m);
  CHECK(r.W0 == 46656);
  CHECK(r.W1 == 36);
  std::array<Int, 3> q{Int(-144), Int(0), Int(144 * 45)};
  CHECK(split_discriminant_form(m) == IntPoly::binary_form(q));
  CHECK_FALSE(split_discriminant_is_polynomial_square(m));
}

TEST_CASE("conic bundle points lie on the surface") {
  auto m = example_split_surface();
  IntPoly F = surface_poly(m);
  int done = 0;
  while (done < 2000) {
    Int s = rnd(-60, 60), t = rnd(-60, 60);
    if (int_gcd(s, t) != 1) continue;
    Int u = rnd(-500, 500), v = rnd(-500, 500);
    auto p = fiber_point(m, s, t, u, v);
    CHECK(F.eval(p.x) == 0);
    auto ff = fiber_forms(m, s, t);
    CHECK(ff.Phi == ff.Phi_prime * ff.G * ff.H);
    ++done;
  }
  CHECK(code_of([&] { fiber_forms(m, Int(2), Int(4)); }) == Errc::non_coprime_fiber);
}

TEST_CASE("normalization") {
  auto m = example_split_surface();
  CHECK(is_normalized(m));
  CHECK(normalize_model(m) == m);

  for (int trial = 0; trial < 200; ++trial) {
    SkewCubicModel r;
    for (auto& c : r.a) c = rnd(-9, 9);
    for (auto& c : r.d) c = rnd(-9, 9);
    for (auto& c : r.f) c = rnd(-9, 9);
    for (auto& c : r.b) c = rnd(-9, 9);
    for (auto& c : r.e) c = rnd(-9, 9);
    if (trial % 3 == 0) r.a[0] = 0;
    if (r.a[0] == 0 && r.a[1] == 0) continue;
    if (r.b[0] == 0 && r.b[1] == 0 && r.b[2] == 0) continue;
    SkewCubicModel n;
    try {
      n = normalize_model(r);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::degenerate_model);
      continue;
    }
    CHECK(is_normalized(n));
    CHECK(normalize_model(n) == n);
  }
  SkewCubicModel zero_a = m;
  zero_a.a = {Int(0), Int(0)};
  CHECK(code_of([&] { normalize_model(zero_a); }) == Errc::degenerate_model);
}

TEST_CASE("local conditions") {
  auto m = example_split_surface();
  auto rep = check_local_conditions(m);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.ok, c.name);
  CHECK(rep.all_ok());

  auto fib = check_local_conditions(m, std::array<Int, 2>{Int(7), Int(1)});
  CHECK(fib.all_ok());
  REQUIRE(fib.D.has_value());
  CHECK(*fib.D % 30 == 0);

  auto bad = check_local_conditions(m, std::array<Int, 2>{Int(2), Int(1)});
  CHECK_FALSE(bad.find("fiber_coprime_6_ab")->ok);

  SkewCubicModel shared = m;
  shared.b = {Int(1), Int(0), Int(-1)};
  shared.e = {Int(6), Int(-6), Int(0)};  // both divisible by s − t
  auto sh = check_local_conditions(shared);
  CHECK(sh.resultants.W0 == 0);
  CHECK_FALSE(sh.find("res_be_nonzero")->ok);

  SkewCubicModel square = m;
  square.a = {Int(1), Int(0)};
  square.d = {Int(2), Int(0)};
  square.f = {Int(1), Int(0)};
  CHECK_FALSE(check_local_conditions(square).find("split_discriminant_nonzero")->ok);
}

TEST_CASE("admissible residues") {
  auto m = example_split_surface();
  auto r = admissible_residues(m);
  CHECK(r.W == 6);
  CHECK(r.s0 == 1);
  CHECK(r.t0 == 1);
  for (int i = 0; i < 500; ++i) {
    Int s = r.s0 + r.W * rnd(-1000, 1000), t = r.t0 + r.W * rnd(-1000, 1000);
    if (int_gcd(s, t) != 1) continue;
    auto ff = fiber_forms(m, s, t);
    CHECK(content(ff.G) == 1);
    CHECK(content(ff.H) == 1);
  }
}

TEST_CASE("split fibers") {
  auto m = example_split_surface();
  auto sf = split_fiber(m, Int(3), Int(1));
  REQUIRE(sf.has_value());
  CHECK(sf->delta == 72);
  auto ff = fiber_forms(m, Int(3), Int(1));
  CHECK(sf->L4 * sf->L5 == ff.H);
  CHECK(!split_fiber(m, Int(1), Int(1)).has_value());

  auto all = find_split_fibers(m, Int(-40), Int(40), Int(-40), Int(40));
  CHECK_FALSE(all.empty());
  for (const auto& f : all) {
    CHECK(f.L4 * f.L5 == fiber_forms(m, f.s, f.t).H);
    CHECK(f.s % 3 == 0);
  }
}

TEST_CASE("threefold coordinates") {
  Vec5 x{Int(0), Int(1), Int(-1), Int(-1), Int(1)};
  CHECK(threefold_to_y_integral(x) == Vec5{Int(0), Int(0), Int(0), Int(1), Int(-1)});
  CHECK(threefold_from_y_integral(threefold_to_y_integral(x)) == x);
  Vec5 odd{Int(0), Int(1), Int(0), Int(0), Int(0)};
  CHECK(code_of([&] { threefold_to_y_integral(odd); }) == Errc::parity_mismatch);

  IntPoly Fy = threefold_y_form();
  IntPoly F5 = fermat_cubic(5);
  for (int i = 0; i < 1000; ++i) {
    Vec5 v;
    for (auto& c : v) c = rnd(-300, 300);
    if ((v[1] + v[3]) % 2 != 0) v[3] += 1;
    if ((v[2] + v[4]) % 2 != 0) v[4] += 1;
    Vec5 y = threefold_to_y_integral(v);
    CHECK(Fy.eval(y) == F5.eval(v));
    RVec5 rv;
    for (int k = 0; k < 5; ++k) {
      rv[k] = Rational(v[k], 3);
      rv[k].canonicalize();
    }
    CHECK(threefold_from_y(threefold_to_y(rv)) == rv);
  }
}

TEST_CASE("threefold fibers") {
  CHECK(threefold_residue_lift() == std::array<Int, 2>{Int(1), Int(127)});
  auto why = threefold_gate_failure(Int(1471), Int(1471), Int(1471));
  REQUIRE(why.has_value());
  CHECK(why->find("p3 divides") != std::string::npos);
  CHECK(threefold_gate_failure(Int(1471), Int(1471), Int(1473)).has_value());

  auto triples = admissible_triples(3);
  REQUIRE(triples.size() == 3);
  CHECK(triples[0] == std::array<Int, 3>{Int(1471), Int(1471), Int(5881)});

  auto fib = threefold_fiber(triples[0][0], triples[0][1], triples[0][2]);
  CHECK(fiber_from_text(fiber_to_text(fib)).K == fib.K);
  CHECK(code_of([] { fiber_from_text("p1=1\n"); }) == Errc::parse_error);
  CHECK(code_of([] { threefold_fiber(Int(1471), Int(1471), Int(1471)); }) ==
        Errc::condition_violated);

  IntPoly prod = fib.f[0] * fib.f[1] * fib.f[2] * fib.f[3] * fib.f[4];
  auto fd = fixed_divisor(prod);
  CHECK(fd.value == 7);
  CHECK(fd.exact);

  IntPoly F5 = fermat_cubic(5);
  for (int i = 0; i < 500; ++i) {
    Int u = rnd(-5000, 5000), v = rnd(-5000, 5000);
    if (u == 0 && v == 0) continue;
    auto pt = threefold_point(fib, u, v);
    CHECK(F5.eval(pt.x) == 0);
    Int expect = 1;
    for (const auto& f : fib.f) expect *= f.eval(std::array<Int, 2>{u, v});
    CHECK(pt.F * 7 == expect);
  }
  CHECK(code_of([&] { threefold_point(fib, Int(0), Int(0)); }) == Errc::zero_parameter);

  Int D = threefold_sieve_product(fib);
  CHECK(D != 0);
  for (int p : {2, 3, 5, 7}) CHECK(D % p == 0);
}
