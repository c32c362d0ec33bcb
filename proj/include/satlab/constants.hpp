#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "satlab/bigint.hpp"

namespace satlab {

/// 50 decimal digits (166-bit mantissa).
using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(const Int& v);
/// Natural log of a positive integer of any size.
Real ln_int(const Int& v);
Int floor_int(const Real& v);
/// Fixed-point decimal rendering with `digits` places after the point.
std::string format_real(const Real& v, int digits);
/// Rendering in scientific notation with `digits` significant places.
std::string format_sci(const Real& v, int digits);

/// A bound B stored as ln B; `integer_part` = floor(B) when B < 2^512.
struct LogBound {
  Real ln_value;
  std::optional<Int> integer_part;
};

enum class LemmaBound {
  square_value,         // m <= 16 a^2 exp(b^6)
  discriminant_degree,  // 16 |D_f| exp(4096 deg^6)
  univariate_height,    // ||f||^(2 deg) exp(5000 deg^6)
  multivariate_height,  // ||F||^(2 deg) exp(6000 deg^6)
};

struct LemmaParams {
  Int a = 1, b = 1;         // square_value
  Int disc = 1;             // discriminant_degree
  unsigned deg = 1;         // all but square_value
  Int height = 1;           // *_height
};

/// Throws Error(hypothesis_violated) when params fall outside the hypotheses.
LogBound lemma_bound(LemmaBound which, const LemmaParams& params);

enum class SaturationBound {
  polynomial_values,  // 1e5 deg^7 ln(2||f||)
  weighted_sieve,     // [6 deg^2 ln(2||f||) + 1e4 deg^7]
  product_form,       // [4 deg ln(2||F||) + 1e4 deg^6]
};

struct SaturationValue {
  Real value;
  Int floor;
};

/// Throws Error(hypothesis_violated) for deg = 0 or height < 1.
SaturationValue saturation_bound(SaturationBound which, unsigned deg, const Int& height);

/// Thresholds the reports compare minimum Ω against.
inline constexpr unsigned kSkewSplitThreshold = 10;
inline constexpr unsigned kSkewStatedThreshold = 32;
inline constexpr unsigned kSkewAccountedThreshold = 34;
inline constexpr unsigned kFermatThreefoldThreshold = 42;

/// β_κ upper estimate 3.75 κ, valid for κ > 1.
Real beta_default(const Real& kappa);

/// μ − 1 + (μ − κ)(1 − 1/β) + (κ + 1) ln β.
Real r_closed_form(const Real& kappa, const Real& beta, const Real& mu);

/// m(λ) = c0 + c1 λ − k ln λ − λ ln λ.
struct SieveFunction {
  Real c0, c1, k;
  Real operator()(const Real& lambda) const;
  /// m'(λ) = c1 − k/λ − ln λ − 1.
  Real derivative(const Real& lambda) const;
};

struct SieveMinimum {
  Real lambda;
  Real m;
};

inline constexpr int kMinimizeGridPoints = 10'000;

/// Global minimum of m over 0 < λ < β: dense grid, then safeguarded Newton
/// on m' until |Δλ| < 1e-30. Throws Error(domain_empty) for β <= 0 and
/// Error(hypothesis_violated) for k <= 0.
SieveMinimum minimize_m(const SieveFunction& m, const Real& beta);

/// 4 ln β + (5 − 1/β + ln β) λ − 4 ln λ − λ ln λ
SieveFunction kappa4_function(const Real& beta);
/// (3 + 6 ln β) + (10 − 4/β + ln β) λ − 6 ln λ − λ ln λ
SieveFunction kappa6_function(const Real& beta);

inline const Real kBeta4{"9.0722"};
inline const Real kKappa4Minimum{"15.4274522"};
inline const Real kKappa6Minimum{"29.1527037101"};
/// Reconstructed: the β for which min kappa6_function(β) equals
/// kKappa6Minimum (see beta6_consistent).
inline const Real kBeta6{"13.2544230196484032331855812354744890"};

/// Solves min_λ kappa6_function(β)(λ) = target for β in [7, 22.5].
Real beta6_consistent(const Real& target = kKappa6Minimum);

/// Least integer strictly greater than m.
Int admissible_r(const Real& m);

}  // namespace satlab
