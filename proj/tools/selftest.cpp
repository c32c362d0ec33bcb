#include "selftest.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "satlab/arith.hpp"
#include "satlab/constants.hpp"
#include "satlab/intpoly.hpp"
#include "satlab/search.hpp"
#include "satlab/varieties.hpp"

namespace satlab::tools {

namespace {

using Check = std::pair<std::string, std::function<bool()>>;

Int rnd(std::mt19937_64& g, long lo, long hi) {
  return to_int(static_cast<std::int64_t>(std::uniform_int_distribution<long>(lo, hi)(g)));
}

std::vector<Check> arith_suite() {
  return {
      {"factorization reconstructs n",
       [] {
         std::mt19937_64 g(1);
         for (int i = 0; i < 300; ++i) {
           Int n = rnd(g, -1'000'000'000L, 1'000'000'000L);
           if (n == 0) continue;
           if (factor(n).value() != n) return false;
         }
         return true;
       }},
      {"primality agrees with trial division below 10^4",
       [] {
         for (std::uint64_t n = 0; n < 10000; ++n) {
           bool p = n >= 2;
           for (std::uint64_t d = 2; d * d <= n && p; ++d) p = n % d != 0;
           if (p != is_prime_u64(n)) return false;
         }
         return true;
       }},
      {"omega is additive",
       [] {
         std::mt19937_64 g(2);
         for (int i = 0; i < 200; ++i) {
           Int a = rnd(g, 1, 1'000'000), b = rnd(g, 1, 1'000'000);
           if (big_omega(a * b) != big_omega(a) + big_omega(b)) return false;
         }
         return true;
       }},
      {"projective representative is primitive and canonical",
       [] {
         std::vector<Int> v{Int(-6), Int(4), Int(10)};
         auto p = to_primitive(v);
         return p.coords() == std::vector<Int>{Int(3), Int(-2), Int(-5)} && p.height() == 5;
       }},
  };
}

std::vector<Check> intpoly_suite() {
  return {
      {"text round trip",
       [] {
         IntPoly f = parse_poly("3*x0^2*x1 - 7*x1^3 + 12345678901234567890*x0 - 1");
         return from_text(to_text(f)) == f;
       }},
      {"quadratic discriminant is b^2 - 4ac",
       [] {
         std::mt19937_64 g(3);
         for (int i = 0; i < 200; ++i) {
           std::vector<Int> c{rnd(g, -50, 50), rnd(g, -50, 50), rnd(g, -50, 50)};
           if (c[2] == 0) continue;
           if (discriminant(IntPoly::univariate(c)) != c[1] * c[1] - 4 * c[2] * c[0]) return false;
         }
         return true;
       }},
      {"resultant vanishes on a common factor",
       [] {
         IntPoly x = IntPoly::variable(1, 0);
         IntPoly h = x + IntPoly::constant(1, Int(3));
         IntPoly f = h * (x * x + IntPoly::constant(1, Int(1)));
         IntPoly g = h * (x - IntPoly::constant(1, Int(5)));
         return resultant(f, g) == 0 && resultant(f, x - IntPoly::constant(1, Int(5))) != 0;
       }},
      {"fixed divisor divides sampled values",
       [] {
         IntPoly f = parse_poly("x0^5 - x0 + 10*x1^3*x0 + 30*x1", 2);
         Int d = fixed_divisor(f).value;
         std::mt19937_64 g(4);
         for (int i = 0; i < 500; ++i) {
           std::array<Int, 2> x{rnd(g, -1000, 1000), rnd(g, -1000, 1000)};
           if (f.eval(x) % d != 0) return false;
         }
         return d == 10;
       }},
      {"zero counts are multiplicative",
       [] {
         IntPoly f = parse_poly("x0^2 - x1^3 + 2", 2);
         return count_zeros_mod(f, Int(35)).count ==
                count_zeros_mod(f, Int(5)).count * count_zeros_mod(f, Int(7)).count;
       }},
  };
}

std::vector<Check> constants_suite() {
  return {
      {"sieve minimum is stationary",
       [] {
         auto r = minimize_m(kappa4_function(kBeta4), kBeta4);
         return boost::multiprecision::abs(kappa4_function(kBeta4).derivative(r.lambda)) <
                Real("1e-6");
       }},
      {"saturation bounds are monotone",
       [] {
         for (unsigned d = 1; d < 10; ++d) {
           auto a = saturation_bound(SaturationBound::polynomial_values, d, Int(5)).value;
           auto b = saturation_bound(SaturationBound::polynomial_values, d + 1, Int(5)).value;
           auto c = saturation_bound(SaturationBound::polynomial_values, d, Int(6)).value;
           if (b < a || c < a) return false;
         }
         return true;
       }},
      {"closed form is positive",
       [] {
         for (int i = 11; i <= 100; ++i) {
           Real k = Real(i) / 10;
           if (r_closed_form(k, beta_default(k), k) <= 0) return false;
         }
         return true;
       }},
      {"admissible r is strict", [] { return admissible_r(Real(3)) == 4; }},
  };
}

std::vector<Check> varieties_suite() {
  return {
      {"cubes of the Elkies forms cancel",
       [] {
         const auto& f = elkies_forms();
         return (f[0].pow(3) + f[1].pow(3) + f[2].pow(3) + f[3].pow(3)).is_zero();
       }},
      {"conic bundle points lie on the surface",
       [] {
         auto m = example_split_surface();
         IntPoly F = surface_poly(m);
         std::mt19937_64 g(5);
         for (int i = 0; i < 200; ++i) {
           Int s = rnd(g, -40, 40), t = rnd(g, -40, 40);
           if (int_gcd(s, t) != 1) continue;
           auto p = fiber_point(m, s, t, rnd(g, -99, 99), rnd(g, -99, 99));
           if (F.eval(p.x) != 0) return false;
         }
         return true;
       }},
      {"normalization is idempotent",
       [] {
         auto m = example_split_surface();
         return is_normalized(m) && normalize_model(m) == m;
       }},
      {"threefold points satisfy the cube sum",
       [] {
         auto t = admissible_triples(1);
         if (t.empty()) return false;
         auto fib = threefold_fiber(t[0][0], t[0][1], t[0][2]);
         IntPoly F = fermat_cubic(5);
         std::mt19937_64 g(6);
         for (int i = 0; i < 100; ++i) {
           Int u = rnd(g, 1, 999), v = rnd(g, 1, 999);
           if (F.eval(threefold_point(fib, u, v).x) != 0) return false;
         }
         return true;
       }},
  };
}

std::vector<Check> search_suite() {
  return {
      {"records are verified and sorted",
       [] {
         auto r = scan_map(ElkiesMap{}, BoxSpec::cube(3, Int(-4), Int(4)));
         IntPoly F = fermat_cubic(4);
         for (const auto& rec : r.records)
           if (F.eval(rec.point.coords()) != 0) return false;
         return std::is_sorted(r.records.begin(), r.records.end(), record_less);
       }},
      {"thread count does not change reports",
       [] {
         ScanOptions a, b;
         b.threads = 4;
         auto box = BoxSpec::cube(3, Int(-6), Int(6));
         return report_json(elkies_search(box, a)) == report_json(elkies_search(box, b));
       }},
      {"histogram totals match the record count",
       [] {
         auto rep = elkies_search(BoxSpec::cube(3, Int(1), Int(6)));
         std::size_t n = 0;
         for (const auto& [o, c] : rep.summary.histogram) n += c;
         return n == rep.records.size();
       }},
      {"skew bookkeeping identity",
       [] {
         SkewSearchOptions o;
         o.fiber_budget = 1;
         o.uv_bound = 4;
         auto rep = skew_surface_search(example_split_surface(), o);
         for (const auto& r : rep.records)
           if (!r.skew || !r.skew->holds()) return false;
         return !rep.records.empty();
       }},
  };
}

const std::map<std::string, std::function<std::vector<Check>()>, std::less<>>& suites() {
  static const std::map<std::string, std::function<std::vector<Check>()>, std::less<>> s{
      {"arith", arith_suite},         {"intpoly", intpoly_suite},
      {"constants", constants_suite}, {"varieties", varieties_suite},
      {"search", search_suite},
  };
  return s;
}

}  // namespace

std::string_view module_of(std::string_view sub) {
  static const std::map<std::string, std::string, std::less<>> m{
      {"factor", "arith"},           {"omega", "arith"},
      {"fixed-divisor", "intpoly"},  {"sieve-modulus", "intpoly"},
      {"bounds", "constants"},       {"sieve-const", "constants"},
      {"elkies", "varieties"},       {"skew-check", "varieties"},
      {"skew-normalize", "varieties"}, {"fermat3-triples", "varieties"},
      {"skew-search", "search"},     {"fermat3-search", "search"},
      {"approx", "search"},          {"report", "search"},
  };
  auto it = m.find(sub);
  return it == m.end() ? std::string_view("all") : std::string_view(it->second);
}

int run_selftest(std::string_view module, std::ostream& out) {
  int failures = 0;
  for (const auto& [name, make] : suites()) {
    if (module != "all" && module != name) continue;
    int passed = 0, total = 0;
    for (const auto& [what, fn] : make()) {
      ++total;
      bool ok = false;
      try {
        ok = fn();
      } catch (const std::exception& e) {
        out << "  " << name << ": " << what << ": " << e.what() << '\n';
      }
      if (ok) ++passed;
      else out << "  FAIL " << name << ": " << what << '\n';
    }
    out << "selftest " << name << ": " << passed << "/" << total << " passed\n";
    failures += total - passed;
  }
  return failures;
}

}  // namespace satlab::tools
