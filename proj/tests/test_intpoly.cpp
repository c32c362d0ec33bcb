#include <random>

#include "doctest.h"
#include "satlab/intpoly.hpp"

using namespace satlab;

namespace {

IntPoly P(const char* s, std::size_t n = 1) { return parse_poly(s, n); }

std::vector<Int> V(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.push_back(to_int(static_cast<std::int64_t>(x)));
  return v;
}

IntPoly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned maxdeg, long maxc) {
  std::uniform_int_distribution<long> c(-maxc, maxc);
  std::uniform_int_distribution<unsigned> d(0, maxdeg);
  IntPoly f(nvars);
  int nterms = 1 + static_cast<int>(rng() % 6);
  for (int t = 0; t < nterms; ++t) {
    IntPoly::Exponents e(nvars, 0);
    unsigned budget = d(rng);
    for (std::size_t i = 0; i < nvars && budget; ++i) {
      unsigned k = static_cast<unsigned>(rng() % (budget + 1));
      e[i] = k;
      budget -= k;
    }
    f.add_term(e, to_int(static_cast<std::int64_t>(c(rng))));
  }
  if (f.is_zero()) f = IntPoly::constant(nvars, Int(1));
  return f;
}

}  // namespace

TEST_CASE("evaluation") {
  IntPoly f = P("x0^2 + x1");
  CHECK(f.nvars() == 2);
  CHECK(f.eval(V({2, 3})) == 7);
  CHECK(IntPoly(3).eval(V({4, 5, 6})) == 0);
  CHECK_THROWS_AS(f.eval(V({1})), Error);
  CHECK(f.eval_mod(V({-2, 3}), Int(5)) == 2);
}

TEST_CASE("parser and text round trip") {
  IntPoly f = P("(x0 - 2*x1)^3 - 7*x2 + 5");
  CHECK(f.nvars() == 3);
  CHECK(f.total_degree() == 3);
  CHECK(from_text(to_text(f)) == f);
  CHECK(to_text(P("6*x0^2+9*x0")) == "vars=1\n9 1\n6 2\n");
  std::vector<std::string> names{"u", "v"};
  IntPoly g = parse_poly("u^2 - 3*u*v", names);
  CHECK(g.coefficient({1, 1}) == -3);
  CHECK_THROWS_AS(parse_poly("u + w", names), Error);
  CHECK_THROWS_AS(P("x0 +"), Error);
  CHECK_THROWS_AS(from_text("vars=2\n1 1\n"), Error);
  CHECK(from_text("vars=2\n").is_zero());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    IntPoly r = random_poly(rng, 1 + rng() % 3, 6, 1'000'000'000);
    r *= Int("123456789012345678901234567890");
    CHECK(from_text(to_text(r)) == r);
  }
}

TEST_CASE("height, degree, content") {
  auto info = height_degree_content(P("6*x0^2 + 9*x0"));
  CHECK(info.height == 9);
  CHECK(info.degree == 2);
  CHECK(info.content == 3);
  CHECK(info.primitive == P("2*x0^2 + 3*x0"));

  auto neg = height_degree_content(IntPoly::constant(1, Int(-4)));
  CHECK(neg.content == 4);
  CHECK(neg.primitive == IntPoly::constant(1, Int(-1)));

  CHECK_THROWS_AS(height_degree_content(IntPoly(2)), Error);
}

TEST_CASE("resultants") {
  CHECK(resultant(P("x0"), P("x0+2")) == 2);
  CHECK(resultant(P("x0^2+1"), P("x0^2-1")) == 4);
  std::vector<std::string> st{"s", "t"};
  IntPoly b = parse_poly("-s^2", st), e = parse_poly("-216*t^2", st);
  CHECK(resultant(b, e) == 46656);
  // a = s - 6t, d = 36t
  CHECK(resultant(parse_poly("s - 6*t", st), parse_poly("36*t", st)) == 36);
  CHECK_THROWS_AS(resultant(P("x0"), IntPoly(1)), Error);

  // Res vanishes exactly when a common factor exists.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    IntPoly h = random_poly(rng, 1, 3, 9);
    IntPoly f = random_poly(rng, 1, 3, 9), g = random_poly(rng, 1, 3, 9);
    if (h.total_degree() == 0 || f.is_zero() || g.is_zero()) continue;
    CHECK(resultant(f * h, g * h) == 0);
  }
  CHECK(resultant(P("x0^2+1"), P("x0^3-x0")) != 0);
}

TEST_CASE("discriminants") {
  CHECK(discriminant(P("x0^2-1")) == 4);
  CHECK(discriminant(P("x0^2+x0+1")) == -3);
  CHECK(discriminant(P("x0^3-x0")) == 4);
  CHECK(discriminant(P("x0^3+2*x0+5")) == -4 * 8 - 27 * 25);
  CHECK(discriminant(P("3*x0+1")) == 1);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int i = 0; i < 200; ++i) {
    long a = c(rng), bb = c(rng), cc = c(rng);
    if (a == 0) continue;
    IntPoly q = IntPoly::univariate(V({cc, bb, a}));
    CHECK(discriminant(q) == Int(bb * bb - 4 * a * cc));
    IntPoly form = IntPoly::binary_form(V({a, bb, cc}));
    CHECK(discriminant(form) == Int(bb * bb - 4 * a * cc));
  }

  // Binary forms with vanishing leading coefficient use the formal degree.
  std::vector<std::string> uv{"u", "v"};
  CHECK(discriminant(parse_poly("u*v", uv)) == 1);
  CHECK(discriminant(parse_poly("u*v^2 + v^3", uv)) == 0);
  CHECK(discriminant(parse_poly("u^2*v - v^3", uv)) ==
        discriminant(parse_poly("x0^3 - x0", std::vector<std::string>{"x0"})) * 1);

  // Threefold fiber conic discriminant against its closed form.
  Int p1 = 1471, p2 = 1471, p3 = 1471;
  Int K = int_pow(p1, 3) - 2 * int_pow(p2, 6) + 2 * int_pow(p3, 6);
  IntPoly f1 = IntPoly::binary_form(std::vector<Int>{6 * p3 * p3, -12 * int_pow(p2, 3) * p3, K});
  Int expected = 24 * p3 * p3 * (-int_pow(p1, 3) + 8 * int_pow(p2, 6) - 2 * int_pow(p3, 6));
  CHECK(discriminant(f1) == expected);
  CHECK(expected != 0);
}

TEST_CASE("fixed divisor") {
  CHECK(fixed_divisor(P("x0^2+x0")).value == 2);
  CHECK(fixed_divisor(P("x0^3-x0")).value == 6);
  CHECK(fixed_divisor(IntPoly::constant(1, Int(5))).value == 5);
  CHECK(fixed_divisor(IntPoly::constant(1, Int(-5))).value == 5);
  CHECK(fixed_divisor(P("x0^2*x1^2 + x0*x1^2 + x0^2*x1 + x0*x1")).value == 4);
  CHECK_THROWS_AS(fixed_divisor(IntPoly(1)), Error);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> big(-1'000'000, 1'000'000);
  IntPoly f = P("x0^5 - x0 + 10*x1^3*x0 + 30*x1");
  Int D = fixed_divisor(f).value;
  CHECK(D == 10);
  for (int i = 0; i < 10'000; ++i) {
    auto x = V({big(rng), big(rng)});
    CHECK(f.eval(x) % D == 0);
  }
}

TEST_CASE("sieve modulus") {
  auto a = sieve_modulus(P("x0^2+x0"));
  CHECK(a.D == 2);
  CHECK(a.W == 4);
  CHECK(a.z == V({1}));

  auto b = sieve_modulus(P("x0"));
  CHECK(b.D == 1);
  CHECK(b.W == 1);
  CHECK(b.z == V({0}));

  auto c = sieve_modulus(P("x0^3-x0"));
  CHECK(c.D == 6);
  CHECK(c.W == 36);

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> k(-10'000, 10'000);
  for (const auto& f : {P("x0^3-x0"), P("x0^2*x1^2 + x0*x1^2 + x0^2*x1 + x0*x1"),
                        P("x0^5 - x0 + 10*x1^3*x0 + 30*x1")}) {
    auto sm = sieve_modulus(f);
    for (int i = 0; i < 1000; ++i) {
      std::vector<Int> x;
      for (const auto& zi : sm.z) x.push_back(zi + sm.W * k(rng));
      Int v = f.eval(x);
      REQUIRE(v % sm.D == 0);
      CHECK(int_gcd(Int(v / sm.D), sm.W) == 1);
    }
  }
}

TEST_CASE("zero counts modulo d") {
  auto a = count_zeros_mod(P("x0", 2), Int(5));
  CHECK(a.count == 5);
  CHECK(a.omega0 == 1);
  CHECK(count_zeros_mod(P("x0^2+1"), Int(3)).count == 0);
  auto c = count_zeros_mod(P("x0*x1"), Int(7));
  CHECK(c.count == 13);
  CHECK(c.omega0 == Rational(13, 7));
  CHECK_THROWS_AS(count_zeros_mod(P("x0*x1*x2"), Int(1000), 1000), Error);

  // Chinese remainder multiplicativity.
  std::mt19937_64 rng(29);
  const int pairs[][2] = {{3, 4}, {5, 7}, {4, 9}, {8, 5}, {11, 3}};
  for (int i = 0; i < 20; ++i) {
    IntPoly f = random_poly(rng, 2, 4, 30);
    auto [d1, d2] = pairs[i % 5];
    Int n1 = count_zeros_mod(f, Int(d1)).count;
    Int n2 = count_zeros_mod(f, Int(d2)).count;
    CHECK(count_zeros_mod(f, Int(d1 * d2)).count == n1 * n2);
  }
}

TEST_CASE("bound checks") {
  auto a = bound_checks(P("x0+x1"), Int(5));
  CHECK(a.mod_p.count_p == 5);
  CHECK(a.mod_p.bound_p == 5);
  CHECK(a.mod_p.within_bound);

  auto b = zero_count_bound(P("x0^2-x1"), Int(7));
  CHECK(b.count_p == 7);
  CHECK(b.bound_p == 14);
  CHECK(b.within_bound);

  CHECK_THROWS_AS(square_modulus_count(P("x0^2"), Int(3)), Error);
  try {
    bound_checks(P("x0^2"), Int(3));
    FAIL("expected RepeatedFactor");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::repeated_factor);
  }
  CHECK_THROWS_AS(zero_count_bound(P("2*x0+4"), Int(3)), Error);
  auto r = square_modulus_count(P("x0^2-x1"), Int(3));
  CHECK(r.count_p2 == 9);
  CHECK(r.ratio == 1);
}

TEST_CASE("repeated factors") {
  CHECK(has_repeated_factor(P("x0^2")));
  CHECK(has_repeated_factor(P("(x0+x1)^2*(x0-3*x1+1)")));
  CHECK(has_repeated_factor(P("(x0*x1+1)^2")));
  CHECK_FALSE(has_repeated_factor(P("x0^2-x1")));
  CHECK_FALSE(has_repeated_factor(P("x0*x1*(x0+x1)")));
  CHECK_FALSE(has_repeated_factor(P("x0+x1")));
  CHECK_FALSE(has_repeated_factor(IntPoly::constant(2, Int(4))));
}

TEST_CASE("supplied factorizations") {
  IntPoly f = P("3*(x0+1)^2*(x0-x1)");
  SuppliedFactorization ok{Int(3), {{P("x0+1", 2), 2}, {P("x0-x1"), 1}}};
  CHECK(squarefree_product(f, ok) == P("(x0+1)*(x0-x1)"));
  SuppliedFactorization bad{Int(3), {{P("x0+1", 2), 1}, {P("x0-x1"), 1}}};
  CHECK_THROWS_AS(squarefree_product(f, bad), Error);
  SuppliedFactorization nonprim{Int(1), {{P("3*x0+3", 2), 2}, {P("x0-x1"), 1}}};
  CHECK_THROWS_AS(squarefree_product(f, nonprim), Error);
}
