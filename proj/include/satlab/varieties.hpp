#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satlab/arith.hpp"
#include "satlab/bigint.hpp"
#include "satlab/intpoly.hpp"

namespace satlab {

// ---------------------------------------------------------------------------
// Fermat cubic surface, Elkies parametrisation

/// f0..f3 in (y0, y1, y2); their cubes sum to zero identically.
const std::array<IntPoly, 4>& elkies_forms();

/// Throws Error(zero_input) for y = 0.
std::array<Int, 4> elkies_map(std::span<const Int> y);

/// x0^3 + ... + x_{n-1}^3
IntPoly fermat_cubic(std::size_t nvars);

// ---------------------------------------------------------------------------
// Cubic surfaces with two skew lines

/// F = a x2^2 + d x2 x3 + f x3^2 + b x2 + e x3 with a, d, f linear and b, e
/// quadratic forms in (x0, x1):
///   a = a0 x0 + a1 x1,  b = b0 x0^2 + b1 x0 x1 + b2 x1^2,  etc.
struct SkewCubicModel {
  std::array<Int, 2> a, d, f;
  std::array<Int, 3> b, e;

  friend bool operator==(const SkewCubicModel&, const SkewCubicModel&) = default;
};

/// The smooth surface
///   (x0 − 6x1) x2^2 + 36 x1 x2 x3 + 36 (x0 + 6x1) x3^2 = x0^2 x2 + 216 x1^2 x3
/// with everything moved to the left-hand side.
SkewCubicModel example_split_surface();

/// Binary forms in (s, t).
IntPoly linear_form(const std::array<Int, 2>& c);
IntPoly quadratic_form(const std::array<Int, 3>& c);

/// Quaternary cubic F(x0, x1, x2, x3).
IntPoly surface_poly(const SkewCubicModel& m);

/// Reads the twelve coefficients off a quaternary cubic. Throws
/// Error(shape_mismatch) on any monomial outside the model's support.
SkewCubicModel model_from_cubic(const IntPoly& F);

/// Δ = a e^2 + f b^2 − b d e as a quintic binary form in (s, t).
IntPoly delta_form(const SkewCubicModel& m);
/// d^2 − 4 a f as a binary quadratic form in (s, t).
IntPoly split_discriminant_form(const SkewCubicModel& m);

/// True when d^2 − 4af is the square of a polynomial with rational coefficients.
bool split_discriminant_is_polynomial_square(const SkewCubicModel& m);

struct ModelResultants {
  Int W0;  // Res(b, e)
  Int W1;  // first nonzero of Res(a,d), Res(a,f), Res(d,f); 0 if none
  std::string W1_pair;
};

ModelResultants model_resultants(const SkewCubicModel& m);

/// Content removal, a unimodular change x1 -> x1 + λ x0 (λ = 1, 2, ...)
/// when a0 b0 = 0, and the 2- and 3-adic rescalings. Throws
/// Error(degenerate_model) if a or b vanishes identically.
SkewCubicModel normalize_model(const SkewCubicModel& m);

/// Content 1 for (a, d, f) and for (b, e); gcd(6, a0 b0) = 1 and 6 divides
/// the other ten coefficients.
bool is_normalized(const SkewCubicModel& m);

struct FiberForms {
  Int s, t;
  Int a, d, f, b, e;   // values at (s, t)
  Int delta;           // Δ(s, t)
  IntPoly G, H;        // b u + e v,  a u^2 + d u v + f v^2
  std::array<IntPoly, 4> phi;  // u, v, G, H
  IntPoly Phi;         // u v G^2 H^2
  IntPoly Phi_prime;   // u v G H
};

/// Throws Error(non_coprime_fiber) unless gcd(s, t) = 1.
FiberForms fiber_forms(const SkewCubicModel& m, const Int& s, const Int& t);

struct FiberPoint {
  std::array<Int, 4> x;
  bool degenerate = false;  // G(u, v) = H(u, v) = 0
};

/// (−s H, −t H, u G, v G).
FiberPoint fiber_point(const FiberForms& ff, const Int& u, const Int& v);
FiberPoint fiber_point(const SkewCubicModel& m, const Int& s, const Int& t, const Int& u,
                       const Int& v);

struct ConditionCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct LocalConditionReport {
  std::vector<ConditionCheck> checks;
  ModelResultants resultants;
  /// rad(2·3·5·a b e f (d^2 − 4af) Δ) at the fiber, when the product is nonzero.
  std::optional<Int> D;
  bool all_ok() const;
  const ConditionCheck* find(std::string_view name) const;
};

/// Model-level checks, and the fiber-level congruence and coprimality
/// conditions when `fiber` is given.
LocalConditionReport check_local_conditions(const SkewCubicModel& m,
                                            std::optional<std::array<Int, 2>> fiber = {},
                                            const FactorOptions& opts = {});

struct AdmissibleResidues {
  Int W;   // squarefree; primes of W0 W1
  Int s0, t0;
};

/// Throws Error(search_exhausted) if some prime has no admissible residue
/// pair or the primitivity check fails, and Error(hypothesis_violated) if
/// W0 W1 = 0.
AdmissibleResidues admissible_residues(const SkewCubicModel& m, const FactorOptions& opts = {});

struct SplitFiber {
  Int s, t;
  Int delta;     // sqrt((d^2 − 4af)(s, t)) > 0
  IntPoly L4, L5;  // L4 L5 = a u^2 + d u v + f v^2
};

/// Splits H at (s, t) when (d^2 − 4af)(s, t) is a nonzero square.
std::optional<SplitFiber> split_fiber(const SkewCubicModel& m, const Int& s, const Int& t);

/// Coprime (s, t) in [s_lo, s_hi] x [t_lo, t_hi] whose fiber splits.
std::vector<SplitFiber> find_split_fibers(const SkewCubicModel& m, const Int& s_lo,
                                          const Int& s_hi, const Int& t_lo, const Int& t_hi);

std::string model_to_text(const SkewCubicModel& m);
/// key=value lines a0 a1 d0 d1 f0 f1 b0 b1 b2 e0 e1 e2; '#' starts a comment.
SkewCubicModel model_from_text(std::string_view text);

// ---------------------------------------------------------------------------
// Fermat cubic threefold

using Vec5 = std::array<Int, 5>;
using RVec5 = std::array<Rational, 5>;

/// y = (x0, (x1+x3)/2, (x2+x4)/2, (x1−x3)/2, (x2−x4)/2)
RVec5 threefold_to_y(const RVec5& x);
RVec5 threefold_from_y(const RVec5& y);
/// Integer version; throws Error(parity_mismatch) when x1 ≢ x3 or x2 ≢ x4 mod 2.
Vec5 threefold_to_y_integral(const Vec5& x);
Vec5 threefold_from_y_integral(const Vec5& y);

/// y0^3 + 2 y1 (y1^2 + 3 y3^2) + 2 y2 (y2^2 + 3 y4^2)
IntPoly threefold_y_form();

inline constexpr unsigned kThreefoldModulus = 1470;  // lcm(2, 3, 5, 49)

struct ThreefoldFiber {
  Int p1, p2, p3;
  Int K;  // p1^3 − 2 p2^6 + 2 p3^6
  std::array<IntPoly, 5> f;  // binary forms in (u, v)
};

/// Throws Error(condition_violated) naming the failed gate.
ThreefoldFiber threefold_fiber(const Int& p1, const Int& p2, const Int& p3);

/// Names the first failed gate, or nullopt when (p1, p2, p3) is admissible.
std::optional<std::string> threefold_gate_failure(const Int& p1, const Int& p2, const Int& p3);

struct ThreefoldPoint {
  Vec5 x;
  Int F;  // (1/7) ∏ f_i(u, v)
};

/// (12 p1 p2 p3^2 f0, p3 f1, p3 f2, p2 f3, p2 f4). Throws
/// Error(zero_parameter) for (0, 0) and Error(non_integral_f) if 7 ∤ ∏ f_i.
ThreefoldPoint threefold_point(const ThreefoldFiber& fib, const Int& u, const Int& v);

/// 2·3·5·7 · ∏ a_i c_i disc(f_i) · ∏_{i<j} Res(f_i, f_j) over i, j in 1..4,
/// a_i and c_i the u^2 and v^2 coefficients. Same prime support as the
/// sieve modulus D; not reduced to its radical.
Int threefold_sieve_product(const ThreefoldFiber& fib);

/// (u, v) residues mod 2, 3, 5, 7 used for every fiber, and their CRT lift mod 210.
inline constexpr std::array<std::array<int, 3>, 4> kThreefoldResidues{
    {{2, 1, 1}, {3, 1, 1}, {5, 1, 2}, {7, 1, 1}}};
std::array<Int, 2> threefold_residue_lift();

/// Admissible prime triples from the primes ≡ 1 mod 1470, ordered by largest
/// index then lexicographically by index. Stops after `count` triples or
/// when all triples over the first `pool` primes are exhausted.
std::vector<std::array<Int, 3>> admissible_triples(std::size_t count, std::size_t pool = 64);

std::string fiber_to_text(const ThreefoldFiber& fib);
ThreefoldFiber fiber_from_text(std::string_view text);

}  // namespace satlab
