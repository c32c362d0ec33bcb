#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "satlab/arith.hpp"
#include "satlab/constants.hpp"
#include "satlab/errors.hpp"
#include "satlab/intpoly.hpp"
#include "satlab/search.hpp"
#include "satlab/varieties.hpp"

using namespace satlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  double limit_ms;
  std::function<Outcome()> run;
};

Int rnd(std::mt19937_64& g, long long lo, long long hi) {
  return to_int(static_cast<std::int64_t>(std::uniform_int_distribution<long long>(lo, hi)(g)));
}

std::string fmt(const Real& v, int digits) { return format_real(v, digits); }

Real absr(const Real& v) { return v < 0 ? Real(-v) : v; }

Outcome c1() {
  auto v = saturation_bound(SaturationBound::polynomial_values, 12, Int(16));
  bool ok = v.value >= Real("1.240e13") && v.value <= Real("1.245e13");
  return {ok, "value=" + format_sci(v.value, 6)};
}

Outcome c2() {
  auto r = minimize_m(kappa4_function(kBeta4), kBeta4);
  bool m_ok = absr(r.m - Real("15.4274522")) <= Real("1e-5");
  bool l_ok = absr(r.lambda - Real("0.606519")) <= Real("1e-4");
  bool r_ok = admissible_r(r.m) == 16;
  return {m_ok && l_ok && r_ok, "m=" + fmt(r.m, 10) + " lambda=" + fmt(r.lambda, 8) +
                                    " r=" + admissible_r(r.m).get_str()};
}

Outcome c3() {
  Real beta = beta6_consistent();
  auto r = minimize_m(kappa6_function(beta), beta);
  bool m_ok = absr(r.m - Real("29.1527037101")) <= Real("1e-6");
  bool l_ok = absr(r.lambda - Real("0.4978357377")) <= Real("1e-4");
  bool r_ok = admissible_r(r.m) == 30;
  std::string d = "beta=" + fmt(beta, 12) + " m=" + fmt(r.m, 12) + (m_ok ? " [ok]" : " [off]") +
                  " lambda=" + fmt(r.lambda, 10) + (l_ok ? " [ok]" : " [off: expected 0.4978357377]") +
                  " r=" + admissible_r(r.m).get_str();
  return {m_ok && l_ok && r_ok, d};
}

Outcome c4() {
  const auto& f = elkies_forms();
  IntPoly sum = f[0].pow(3) + f[1].pow(3) + f[2].pow(3) + f[3].pow(3);
  if (!sum.is_zero()) return {false, "symbolic sum is nonzero"};
  std::mt19937_64 g(0xC4);
  for (int i = 0; i < 10000; ++i) {
    std::array<Int, 3> y{rnd(g, -1'000'000, 1'000'000), rnd(g, -1'000'000, 1'000'000),
                         rnd(g, -1'000'000, 1'000'000)};
    Int s = 0;
    for (const auto& fi : f) {
      Int v = fi.eval(y);
      s += v * v * v;
    }
    if (s != 0) return {false, "nonzero at sample " + std::to_string(i)};
  }
  return {true, "symbolic zero, 10000 evaluations"};
}

// Evaluates a x2^2 + d x2 x3 + f x3^2 + b x2 + e x3 coefficientwise.
Int surface_value(const SkewCubicModel& m, const std::array<Int, 4>& x) {
  auto lin = [&](const std::array<Int, 2>& c) { return Int(c[0] * x[0] + c[1] * x[1]); };
  auto quad = [&](const std::array<Int, 3>& c) {
    return Int(c[0] * x[0] * x[0] + c[1] * x[0] * x[1] + c[2] * x[1] * x[1]);
  };
  return lin(m.a) * x[2] * x[2] + lin(m.d) * x[2] * x[3] + lin(m.f) * x[3] * x[3] +
         quad(m.b) * x[2] + quad(m.e) * x[3];
}

std::vector<SkewCubicModel> random_models(std::size_t count, std::mt19937_64& g) {
  std::vector<SkewCubicModel> out;
  for (int tries = 0; out.size() < count && tries < 200000; ++tries) {
    SkewCubicModel m;
    for (auto* a : {&m.a, &m.d, &m.f}) *a = {rnd(g, -12, 12), rnd(g, -12, 12)};
    for (auto* a : {&m.b, &m.e}) *a = {rnd(g, -12, 12), rnd(g, -12, 12), rnd(g, -12, 12)};
    try {
      m = normalize_model(m);
      if (check_local_conditions(m).all_ok()) out.push_back(m);
    } catch (const Error&) {
    }
  }
  return out;
}

Outcome c5() {
  std::mt19937_64 g(0xC5);
  auto models = random_models(20, g);
  if (models.size() < 20) return {false, "only " + std::to_string(models.size()) + " valid models"};
  for (const auto& m : models) {
    for (int i = 0; i < 50;) {
      Int s = rnd(g, -1000, 1000), t = rnd(g, -1000, 1000), u = rnd(g, -1000, 1000),
          v = rnd(g, -1000, 1000);
      if (int_gcd(s, t) != 1) continue;
      ++i;
      Int bv = m.b[0] * s * s + m.b[1] * s * t + m.b[2] * t * t;
      Int ev = m.e[0] * s * s + m.e[1] * s * t + m.e[2] * t * t;
      Int G = bv * u + ev * v;
      Int H = (m.a[0] * s + m.a[1] * t) * u * u + (m.d[0] * s + m.d[1] * t) * u * v +
              (m.f[0] * s + m.f[1] * t) * v * v;
      std::array<Int, 4> x{Int(-s * H), Int(-t * H), Int(u * G), Int(v * G)};
      if (surface_value(m, x) != 0) return {false, "identity fails"};
      if (fiber_point(m, s, t, u, v).x != x) return {false, "library point differs"};
    }
  }
  return {true, "20 models x 50 samples"};
}

Outcome c6() {
  auto triples = admissible_triples(5);
  if (triples.size() < 5) return {false, "fewer than 5 admissible triples"};
  std::mt19937_64 g(0xC6);
  std::size_t nonvanishing = 0;
  for (const auto& tr : triples) {
    auto fib = threefold_fiber(tr[0], tr[1], tr[2]);
    for (int i = 0; i < 1000; ++i) {
      Int u = rnd(g, -10000, 10000), v = rnd(g, -10000, 10000);
      if (u == 0 && v == 0) v = 1;
      auto pt = threefold_point(fib, u, v);
      Int s = 0, prod = 1;
      for (const Int& c : pt.x) {
        s += c * c * c;
        prod *= c;
      }
      if (s != 0) return {false, "cube sum nonzero"};
      if (prod != 0) {
        ++nonvanishing;
        if (prod % 7 != 0) return {false, "7 does not divide the product"};
      }
    }
  }
  return {true, "5 triples x 1000 pairs, " + std::to_string(nonvanishing) + " with no zero coordinate"};
}

IntPoly random_poly(std::mt19937_64& g, std::size_t nvars, unsigned max_deg, long coef) {
  IntPoly f(nvars);
  int terms = static_cast<int>(rnd(g, 1, 6).get_si());
  for (int i = 0; i < terms; ++i) {
    std::vector<unsigned> e(nvars, 0);
    unsigned budget = static_cast<unsigned>(rnd(g, 0, max_deg).get_ui());
    for (unsigned k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(rnd(g, 0, long(nvars) - 1).get_si())];
    f += IntPoly::monomial(nvars, std::move(e), rnd(g, -coef, coef));
  }
  return f;
}

Outcome c7() {
  std::mt19937_64 g(0xC7);
  for (int n = 0; n < 200;) {
    std::size_t nv = static_cast<std::size_t>(rnd(g, 1, 3).get_si());
    IntPoly f = random_poly(g, nv, 4, 20);
    if (f.is_zero()) continue;
    ++n;
    Int d = fixed_divisor(f).value, acc = 0;
    for (int i = 0; i < 1000; ++i) {
      std::vector<Int> x(nv);
      for (auto& c : x) c = rnd(g, -1'000'000, 1'000'000);
      Int v = f.eval(x);
      if (v % d != 0) return {false, "divisor fails on " + to_text(f)};
      acc = int_gcd(acc, v);
    }
    if (acc < 0) acc = -acc;
    if (acc != d) return {false, "gcd " + acc.get_str() + " != " + d.get_str() + " for " + to_text(f)};
  }
  return {true, "200 polynomials x 1000 points"};
}

Outcome c8() {
  std::mt19937_64 g(0xC8);
  const int primes[] = {2, 3, 5, 7, 11, 13};
  for (int n = 0; n < 50;) {
    std::size_t nv = static_cast<std::size_t>(rnd(g, 1, 2).get_si());
    IntPoly f = random_poly(g, nv, 4, 20);
    if (f.is_zero() || f.total_degree() == 0) continue;
    f = primitive_part(f);
    ++n;
    Int deg = f.total_degree();
    for (int p : primes) {
      Int count = 0;
      std::vector<Int> x(nv, Int(0));
      long total = nv == 1 ? p : long(p) * p;
      for (long idx = 0; idx < total; ++idx) {
        x[0] = idx % p;
        if (nv == 2) x[1] = idx / p;
        Int r = f.eval(x) % p;
        if (r == 0) ++count;
      }
      Int bound = deg;
      for (std::size_t k = 1; k < nv; ++k) bound *= p;
      auto lib = zero_count_bound(f, Int(p));
      if (count > bound) return {false, "count exceeds bound for " + to_text(f)};
      if (lib.count_p != count || lib.bound_p != bound || !lib.within_bound)
        return {false, "library count disagrees for " + to_text(f)};
    }
  }
  return {true, "50 polynomials, p <= 13"};
}

SearchReport skew_run(unsigned threads) {
  SkewSearchOptions o;
  o.scan.threads = threads;
  return skew_surface_search(example_split_surface(), o);
}

SearchReport elkies_run(unsigned threads) {
  ScanOptions o;
  o.threads = threads;
  return elkies_search(BoxSpec::cube(3, Int(-200), Int(200), Int(13)), o);
}

SearchReport threefold_run(unsigned threads) {
  ThreefoldSearchOptions o;
  o.scan.threads = threads;
  return threefold_search(o);
}

Outcome c9() {
  auto rep = skew_run(0);
  IntPoly F = surface_poly(example_split_surface());
  std::size_t held = 0;
  for (const auto& r : rep.records) {
    std::array<Int, 4> x{r.point.coords()[0], r.point.coords()[1], r.point.coords()[2],
                         r.point.coords()[3]};
    if (surface_value(example_split_surface(), x) != 0 || F.eval(r.point.coords()) != 0)
      return {false, "record off the surface"};
    if (!r.skew) return {false, "record lacks bookkeeping"};
    auto k = *r.skew;
    if (!k.phi.is_finite() || !k.phi_prime.is_finite() || !k.uv.is_finite() ||
        k.phi.value() != 2 * k.phi_prime.value() - k.uv.value())
      return {false, "bookkeeping fails"};
    ++held;
  }
  bool ok = rep.records.size() >= 50 && held == rep.records.size();
  return {ok, std::to_string(rep.records.size()) + " records, identity holds on " + std::to_string(held)};
}

std::string min_line(const SearchReport& rep) {
  std::ostringstream os;
  os << rep.kind << " min_omega="
     << (rep.summary.min_omega ? rep.summary.min_omega->to_string() : std::string("none"));
  for (const auto& t : rep.thresholds) os << " vs " << t.name << '=' << t.value;
  return os.str();
}

Outcome c10() {
  auto elk = elkies_run(0);
  auto three = threefold_run(0);
  std::set<std::vector<Int>> distinct;
  for (const auto& r : elk.records)
    if (r.omega.is_finite()) distinct.insert(r.point.coords());
  IntPoly F5 = fermat_cubic(5);
  std::size_t verified = 0;
  for (const auto& r : three.records)
    if (F5.eval(r.point.coords()) == 0) ++verified;
  bool ok = distinct.size() >= 100 && verified >= 10 && verified == three.records.size();
  return {ok, std::to_string(distinct.size()) + " elkies points, " + std::to_string(verified) +
                  " threefold records; " + min_line(elk) + "; " + min_line(three) + "; " +
                  min_line(skew_run(0))};
}

Outcome c11() {
  std::string diffs;
  auto same = [&](const char* what, const SearchReport& a, const SearchReport& b) {
    if (report_json(a) != report_json(b) || records_tsv(a.records) != records_tsv(b.records))
      diffs += std::string(" ") + what;
  };
  same("skew", skew_run(1), skew_run(8));
  same("elkies", elkies_run(1), elkies_run(8));
  same("threefold", threefold_run(1), threefold_run(8));
  return {diffs.empty(), diffs.empty() ? "reports identical at 1 and 8 threads" : "differs:" + diffs};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{
      {"C1", 1, c1},        {"C2", 10, c2},       {"C3", 10, c3},        {"C4", 5000, c4},
      {"C5", 5000, c5},     {"C6", 60000, c6},    {"C7", 30000, c7},     {"C8", 60000, c8},
      {"C9", 300000, c9},   {"C10", 600000, c10}, {"C11", 900000, c11},
  };
  std::set<std::string> want(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : all) {
    if (!want.empty() && !want.count(c.id) && !want.count("all")) continue;
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    bool in_time = ms < c.limit_ms;
    bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(3) << ms
              << " ms (limit " << c.limit_ms << ")" << (in_time ? "" : " [too slow]") << "  " << o.detail
              << '\n';
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
