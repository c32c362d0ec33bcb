#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satlab/arith.hpp"
#include "satlab/bigint.hpp"

namespace satlab {

/// Sparse multivariate polynomial over Z. Exponent vectors all have length
/// nvars(); zero coefficients are never stored.
class IntPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Int>;

  explicit IntPoly(std::size_t nvars = 1) : nvars_(nvars) {}

  static IntPoly constant(std::size_t nvars, const Int& c);
  static IntPoly variable(std::size_t nvars, std::size_t index);
  static IntPoly monomial(std::size_t nvars, Exponents exps, const Int& c);
  /// Univariate polynomial from coefficients in increasing degree.
  static IntPoly univariate(std::span<const Int> coeffs);
  /// Binary form c_0 u^d + c_1 u^{d-1} v + ... + c_d v^d in (u, v).
  static IntPoly binary_form(std::span<const Int> coeffs);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree; 0 for constants and for the zero polynomial.
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  Int coefficient(const Exponents& e) const;

  /// Adds c·x^e, dropping the term if it cancels.
  void add_term(const Exponents& e, const Int& c);

  Int eval(std::span<const Int> x) const;
  /// Value modulo m, in [0, m).
  Int eval_mod(std::span<const Int> x, const Int& m) const;

  IntPoly derivative(std::size_t var) const;
  /// Substitutes subs[i] for variable i; all subs share one arity.
  IntPoly compose(std::span<const IntPoly> subs) const;
  IntPoly pow(unsigned e) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const Int& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(IntPoly a, const Int& c) { return a *= c; }
  friend IntPoly operator*(const Int& c, IntPoly a) { return a *= c; }
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Human-readable form, e.g. "6*x0^2 + 9*x0".
  std::string pretty() const;

 private:
  void check_arity(const IntPoly& o) const;
  std::size_t nvars_;
  TermMap terms_;
};

/// Parses an expression over x0..x{n-1} (or x, y, z, u, v, s, t when
/// `nvars` names are given) with + - * ^ and parentheses.
IntPoly parse_poly(std::string_view expr, std::span<const std::string> var_names);
/// Variables named x0, x1, ...; arity is max index + 1 (at least `min_vars`).
IntPoly parse_poly(std::string_view expr, std::size_t min_vars = 1);

/// Plain-text form: "vars=N" header, then "coeff e0 ... e{N-1}" per term
/// in increasing exponent order.
std::string to_text(const IntPoly& f);
IntPoly from_text(std::string_view text);

struct PolyInfo {
  Int height;
  unsigned degree = 0;
  /// Positive content; the primitive part carries the sign.
  Int content;
  IntPoly primitive;
};

/// Throws Error(zero_polynomial) for f = 0.
PolyInfo height_degree_content(const IntPoly& f);
Int height(const IntPoly& f);
Int content(const IntPoly& f);
IntPoly primitive_part(const IntPoly& f);

/// Coefficients of a univariate polynomial, increasing degree.
std::vector<Int> univariate_coeffs(const IntPoly& f);
/// Coefficients of u^{d-i} v^i of a binary form of formal degree d.
std::vector<Int> binary_form_coeffs(const IntPoly& f, unsigned degree);

/// Sylvester determinant for coefficient lists given in decreasing degree
/// (leading zeros allowed: formal degree = size - 1).
Int sylvester_resultant(std::span<const Int> f_desc, std::span<const Int> g_desc);

/// Resultant of two univariate polynomials, or of two binary forms (using
/// their total degrees as formal degrees).
Int resultant(const IntPoly& f, const IntPoly& g);

/// Discriminant of a univariate polynomial or binary form of degree >= 1;
/// b^2 - 4ac in degree 2 and 1 in degree 1.
Int discriminant(const IntPoly& f);

struct FixedDivisor {
  Int value;
  /// False when the grid was too large and only random samples were used
  /// (value is then a multiple of the true fixed divisor).
  bool exact = true;
};

inline constexpr std::uint64_t kFixedDivisorGridLimit = 10'000'000;

/// Largest D with D | F(x) for every integer x; gcd of F over the grid
/// ∏_i {0, ..., deg_{x_i} F}. Throws Error(zero_polynomial).
FixedDivisor fixed_divisor(const IntPoly& f, std::uint64_t seed = 0);

struct SieveModulus {
  Int D;
  Int W;
  /// Residue vector mod W with gcd(F(x)/D, W) = 1 for all x ≡ z mod W.
  std::vector<Int> z;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

SieveModulus sieve_modulus(const IntPoly& f, std::uint64_t budget = kDefaultEnumerationBudget);

struct ZeroCount {
  Int count;
  /// count / d^(nvars - 1)
  Rational omega0;
};

/// #{x mod d : F(x) ≡ 0 mod d} by enumeration. Throws Error(budget_exceeded)
/// when d^nvars exceeds the budget.
ZeroCount count_zeros_mod(const IntPoly& f, const Int& d,
                          std::uint64_t budget = kDefaultEnumerationBudget);

/// True when F has a repeated nonconstant factor. A "false" answer is
/// certified by a nonzero specialised discriminant; "true" means every
/// trial specialisation had vanishing discriminant.
bool has_repeated_factor(const IntPoly& f, std::uint64_t seed = 0);

struct ZeroCountBound {
  Int count_p;
  Int bound_p;  // deg(F) · p^m
  bool within_bound = false;
};

struct SquareModulusCount {
  Int count_p2;
  Rational ratio;  // count_{p^2} / p^{2m}
};

/// Zero count mod p against deg(F)·p^m; F must be primitive.
ZeroCountBound zero_count_bound(const IntPoly& f, const Int& p,
                                std::uint64_t budget = kDefaultEnumerationBudget);
/// Zero count mod p^2; F must have positive degree and no repeated factor.
SquareModulusCount square_modulus_count(const IntPoly& f, const Int& p,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

struct BoundChecks {
  ZeroCountBound mod_p;
  SquareModulusCount mod_p2;
};

BoundChecks bound_checks(const IntPoly& f, const Int& p,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// f = c · ∏ F_i^{ν_i} supplied by the caller.
struct SuppliedFactorization {
  Int c;
  std::vector<std::pair<IntPoly, unsigned>> factors;
};

/// Verifies the supplied factorization by exact multiplication and returns
/// the product of the distinct factors ∏ F_i. Throws
/// Error(factorization_mismatch) or Error(not_primitive).
IntPoly squarefree_product(const IntPoly& f, const SuppliedFactorization& fac);

}  // namespace satlab
