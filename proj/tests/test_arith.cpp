#include <random>

#include "doctest.h"
#include "satlab/arith.hpp"

using namespace satlab;

namespace {

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t naive_big_omega(std::uint64_t n) {
  std::uint64_t k = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) n /= d, ++k;
  return k + (n > 1 ? 1 : 0);
}

Int I(const char* s) { return Int(s); }

}  // namespace

TEST_CASE("factor small and signed values") {
  auto f = factor(Int(12));
  CHECK(f.sign == 1);
  CHECK(f.complete());
  CHECK(f.factors.size() == 2);
  CHECK(f.factors.at(Int(2)) == 2);
  CHECK(f.factors.at(Int(3)) == 1);

  auto g = factor(Int(-1));
  CHECK(g.sign == -1);
  CHECK(g.factors.empty());
  CHECK(g.value() == -1);

  CHECK_THROWS_AS(factor(Int(0)), Error);
}

TEST_CASE("factor reconstructs value and primes are prime") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t n = rng() % 5'000'000 + 2;
    auto f = factor(to_int(n));
    CHECK(f.value() == to_int(n));
    CHECK(f.big_omega() == naive_big_omega(n));
    for (auto& [p, e] : f.factors) CHECK(naive_prime(to_u64(p)));
  }
}

TEST_CASE("factor large semiprimes") {
  Int p = I("2305843009213693951");  // 2^61 - 1
  CHECK(is_prime(p));
  Int q = I("1000000007");
  auto f = factor(p * q * q);
  REQUIRE(f.complete());
  CHECK(f.factors.at(p) == 1);
  CHECK(f.factors.at(q) == 2);

  Int a = I("855388357"), b = I("930099858731");
  CHECK(is_prime(a));
  CHECK(is_prime(b));
  auto g = factor(-a * b * 49);
  REQUIRE(g.complete());
  CHECK(g.sign == -1);
  CHECK(g.big_omega() == 4);

  Int c = I("4611686014132420609");  // (2^31 - 1)^2
  auto h = factor(c);
  CHECK(h.factors.at(I("2147483647")) == 2);
}

TEST_CASE("factor budget exhaustion is reported") {
  Int p = I("1000000000000000000000000000057");
  Int q = I("1000000000000000000000000000099");
  REQUIRE(is_prime(p));
  REQUIRE(is_prime(q));
  FactorOptions tiny{100, 0};
  auto f = factor(p * q, tiny);
  CHECK_FALSE(f.complete());
  CHECK(f.value() == p * q);
  CHECK_THROWS_AS(arith_functions(p * q, {}, tiny), Error);
}

TEST_CASE("is_prime agrees with trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime_u64(n) == naive_prime(n));
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime(I("3317044064679887385961981")));
}

TEST_CASE("arithmetic functions") {
  std::vector<Int> ps{Int(2), Int(3), Int(5)};
  auto v = arith_functions(Int(360), ps);
  CHECK(v.omega == Omega(6));
  CHECK(*v.nu == 3);
  CHECK(*v.mu == 0);
  CHECK(*v.rad == 30);
  CHECK(v.valuations.at(Int(2)) == 3);
  CHECK(v.valuations.at(Int(5)) == 1);

  auto w = arith_functions(Int(-30));
  CHECK(w.omega == Omega(3));
  CHECK(*w.mu == -1);
  CHECK(*w.rad == 30);

  auto one = arith_functions(Int(1));
  CHECK(one.omega == Omega(0));
  CHECK(*one.mu == 1);
  CHECK(*one.rad == 1);

  auto z = arith_functions(Int(0));
  CHECK(z.omega.is_infinite());
  CHECK_FALSE(z.nu.has_value());
  CHECK(big_omega(Int(0)).is_infinite());
  CHECK(valuation(Int(-48), Int(2)) == 4);
  CHECK(valuation(Int(7), Int(2)) == 0);
}

TEST_CASE("omega ordering") {
  CHECK(Omega(3) < Omega::infinite());
  CHECK(Omega(3) + Omega(4) == Omega(7));
  CHECK((Omega(3) + Omega::infinite()).is_infinite());
  CHECK(Omega::infinite().to_string() == "inf");
}

TEST_CASE("projective points") {
  std::vector<Int> v{Int(-6), Int(4), Int(0), Int(10)};
  auto p = to_primitive(v);
  CHECK(p.coords() == std::vector<Int>{Int(3), Int(-2), Int(0), Int(-5)});
  CHECK(p.height() == 5);
  CHECK(p.has_zero_coordinate());
  CHECK(omega_projective(p).is_infinite());

  std::vector<Int> w{Int(0), Int(-2), Int(4)};
  CHECK(to_primitive(w).coords() == std::vector<Int>{Int(0), Int(1), Int(-2)});

  std::vector<Int> x{Int(12), Int(-18), Int(30)};
  auto q = to_primitive(x);
  CHECK(q.coords() == std::vector<Int>{Int(2), Int(-3), Int(5)});
  CHECK(omega_projective(q) == Omega(3));

  std::vector<Int> zero{Int(0), Int(0)};
  CHECK_THROWS_AS(to_primitive(zero), Error);
}

TEST_CASE("primes in arithmetic progressions") {
  auto a = primes_in_ap(Int(4), Int(1), 3);
  CHECK(a == std::vector<Int>{Int(5), Int(13), Int(17)});
  auto b = primes_in_ap(Int(1470), Int(1), 8);
  CHECK(b == std::vector<Int>{Int(1471), Int(5881), Int(7351), Int(8821), Int(22051),
                              Int(29401), Int(30871), Int(32341)});
  CHECK_THROWS_AS(primes_in_ap(Int(2), Int(0), 1), Error);
  auto c = primes_in_ap_between(Int(6), Int(5), Int(1), Int(50));
  CHECK(c == std::vector<Int>{Int(5), Int(11), Int(17), Int(23), Int(29), Int(41), Int(47)});
  for (auto& p : primes_in_ap(Int(30), Int(7), 40, Int(1000000))) {
    CHECK(mod_floor(p, Int(30)) == 7);
    CHECK(naive_prime(to_u64(p)));
  }
}
