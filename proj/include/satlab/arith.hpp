#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satlab/bigint.hpp"
#include "satlab/errors.hpp"

namespace satlab {

/// Element of N ∪ {∞}. Ω(0) and any point with a zero coordinate map to ∞.
class Omega {
 public:
  constexpr Omega() = default;
  constexpr explicit Omega(std::uint64_t v) : value_(v) {}

  static constexpr Omega infinite() {
    Omega o;
    o.value_.reset();
    return o;
  }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  /// Precondition: is_finite().
  constexpr std::uint64_t value() const { return *value_; }

  friend constexpr bool operator==(const Omega&, const Omega&) = default;
  friend constexpr std::strong_ordering operator<=>(const Omega& a, const Omega& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

  friend Omega operator+(const Omega& a, const Omega& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return Omega(*a.value_ + *b.value_);
  }

  /// "inf" or the decimal value.
  std::string to_string() const;

 private:
  std::optional<std::uint64_t> value_ = std::uint64_t{0};
};

inline constexpr std::uint64_t kDefaultFactorBudget = 10'000'000;
inline constexpr std::uint32_t kTrialDivisionLimit = 100'000;

struct FactorOptions {
  /// Splitter iterations allowed for the whole call.
  std::uint64_t budget = kDefaultFactorBudget;
  /// Seeds the splitter's pseudorandom start values.
  std::uint64_t seed = 0;
};

/// Signed integer as sign · ∏ p^e, with composite cofactors that resisted
/// the budget kept aside.
struct Factorization {
  int sign = 1;
  std::map<Int, unsigned> factors;
  std::vector<Int> unfactored;

  bool complete() const { return unfactored.empty(); }
  /// Product of sign, prime powers and unfactored cofactors.
  Int value() const;
  /// Ω of the prime part (a lower bound if incomplete).
  std::uint64_t big_omega() const;
};

/// Throws Error(zero_input) for n = 0.
Factorization factor(const Int& n, const FactorOptions& opts = {});

/// Deterministic for n < 2^64; otherwise Baillie-PSW plus 64 Miller-Rabin
/// rounds (error < 2^-128).
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

/// Primes below kTrialDivisionLimit, ascending.
const std::vector<std::uint32_t>& small_primes();

struct ArithValues {
  Omega omega;
  std::optional<unsigned> nu;
  std::optional<int> mu;
  std::optional<Int> rad;
  /// ν_p for each requested p (p need not divide n).
  std::map<Int, unsigned> valuations;
};

/// Ω, ν, μ, rad and ν_p. For n = 0 only `omega` (= ∞) is populated.
/// Throws Error(incomplete_factorization) if the budget was exceeded.
ArithValues arith_functions(const Int& n, std::span<const Int> primes = {},
                            const FactorOptions& opts = {});

/// Ω(n) with Ω(0) = ∞.
Omega big_omega(const Int& n, const FactorOptions& opts = {});

/// p-adic valuation for n != 0.
unsigned valuation(const Int& n, const Int& p);

Int radical(const Int& n, const FactorOptions& opts = {});

/// Canonical representative of a point of P^n(Q): coordinate gcd 1 and first
/// nonzero coordinate positive.
class ProjectivePoint {
 public:
  const std::vector<Int>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size() - 1; }
  /// max |x_i|
  Int height() const;
  bool has_zero_coordinate() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ < b.coords_;
  }

 private:
  friend ProjectivePoint to_primitive(std::span<const Int> v);
  explicit ProjectivePoint(std::vector<Int> c) : coords_(std::move(c)) {}
  std::vector<Int> coords_;
};

/// Throws Error(zero_vector) if v is identically zero.
ProjectivePoint to_primitive(std::span<const Int> v);

/// Ω(∏ x_i) on the canonical representative; ∞ if a coordinate vanishes.
Omega omega_projective(const ProjectivePoint& p, const FactorOptions& opts = {});

/// First `count` primes p ≡ a mod q in increasing order, starting above `start`.
/// Throws Error(non_coprime_residue) unless gcd(a, q) = 1.
std::vector<Int> primes_in_ap(const Int& q, const Int& a, std::size_t count,
                              const Int& start = Int(0));

/// All primes p ≡ a mod q with lo <= p <= hi.
std::vector<Int> primes_in_ap_between(const Int& q, const Int& a, const Int& lo,
                                      const Int& hi);

}  // namespace satlab
