#include "satlab/constants.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "satlab/errors.hpp"

namespace satlab {

namespace mp = boost::multiprecision;

Real to_real(const Int& v) { return Real(v.get_str()); }

Real ln_int(const Int& v) {
  if (v <= 0) throw Error(Errc::hypothesis_violated, "logarithm of a non-positive integer");
  return mp::log(to_real(v));
}

Int floor_int(const Real& v) {
  std::string s = mp::floor(v).str(0, std::ios_base::fixed);
  auto dot = s.find('.');
  if (dot != std::string::npos) s.erase(dot);
  return Int(s);
}

std::string format_real(const Real& v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string format_sci(const Real& v, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << v;
  return os.str();
}

namespace {

const Real& ln2() {
  static const Real v = mp::log(Real(2));
  return v;
}

LogBound make_bound(const Real& ln_value) {
  LogBound b;
  b.ln_value = ln_value;
  if (ln_value < 512 * ln2()) {
    b.integer_part = floor_int(mp::exp(ln_value));
  }
  return b;
}

Real pow_u(unsigned base, unsigned e) {
  Real r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

LogBound lemma_bound(LemmaBound which, const LemmaParams& p) {
  const Real ln16 = 4 * ln2();
  switch (which) {
    case LemmaBound::square_value:
      if (p.a < 1 || p.b < 1) throw Error(Errc::hypothesis_violated, "need a, b >= 1");
      return make_bound(ln16 + 2 * ln_int(p.a) + mp::pow(to_real(p.b), 6));
    case LemmaBound::discriminant_degree:
      if (p.deg < 1) throw Error(Errc::hypothesis_violated, "need deg >= 1");
      if (p.disc == 0) throw Error(Errc::hypothesis_violated, "need a nonzero discriminant");
      return make_bound(ln16 + ln_int(abs(p.disc)) + 4096 * pow_u(p.deg, 6));
    case LemmaBound::univariate_height:
    case LemmaBound::multivariate_height: {
      if (p.deg < 1) throw Error(Errc::hypothesis_violated, "need deg >= 1");
      if (p.height < 1) throw Error(Errc::hypothesis_violated, "need height >= 1");
      unsigned c = which == LemmaBound::univariate_height ? 5000 : 6000;
      return make_bound(2 * Real(p.deg) * ln_int(p.height) + c * pow_u(p.deg, 6));
    }
  }
  throw Error(Errc::invalid_argument, "unknown bound");
}

SaturationValue saturation_bound(SaturationBound which, unsigned deg, const Int& height) {
  if (deg < 1) throw Error(Errc::hypothesis_violated, "need deg >= 1");
  if (height < 1) throw Error(Errc::hypothesis_violated, "need height >= 1");
  const Real l = ln_int(2 * height);
  SaturationValue out;
  switch (which) {
    case SaturationBound::polynomial_values:
      out.value = Real(100000) * pow_u(deg, 7) * l;
      break;
    case SaturationBound::weighted_sieve:
      out.value = 6 * pow_u(deg, 2) * l + Real(10000) * pow_u(deg, 7);
      break;
    case SaturationBound::product_form:
      out.value = 4 * Real(deg) * l + Real(10000) * pow_u(deg, 6);
      break;
  }
  out.floor = floor_int(out.value);
  return out;
}

Real beta_default(const Real& kappa) {
  if (kappa <= 1) throw Error(Errc::hypothesis_violated, "need kappa > 1");
  return Real("3.75") * kappa;
}

Real r_closed_form(const Real& kappa, const Real& beta, const Real& mu) {
  if (beta < 2) throw Error(Errc::hypothesis_violated, "need beta >= 2");
  if (mu < kappa) throw Error(Errc::hypothesis_violated, "need mu >= kappa");
  return mu - 1 + (mu - kappa) * (1 - 1 / beta) + (kappa + 1) * mp::log(beta);
}

Real SieveFunction::operator()(const Real& lambda) const {
  Real l = mp::log(lambda);
  return c0 + c1 * lambda - k * l - lambda * l;
}

Real SieveFunction::derivative(const Real& lambda) const {
  return c1 - k / lambda - mp::log(lambda) - 1;
}

SieveMinimum minimize_m(const SieveFunction& m, const Real& beta) {
  if (!(beta > 0)) throw Error(Errc::domain_empty, "empty interval 0 < lambda < beta");
  if (!(m.k > 0)) throw Error(Errc::hypothesis_violated, "need k > 0");
  const long double b = beta.convert_to<long double>();
  const long double c0 = m.c0.convert_to<long double>();
  const long double c1 = m.c1.convert_to<long double>();
  const long double k = m.k.convert_to<long double>();
  const int n = kMinimizeGridPoints;
  const long double h = b / (n + 1);
  int best = 1;
  long double best_v = 0;
  for (int i = 1; i <= n; ++i) {
    long double x = h * i;
    long double lx = std::log(x);
    long double v = c0 + c1 * x - k * lx - x * lx;
    if (i == 1 || v < best_v) {
      best_v = v;
      best = i;
    }
  }
  Real lo = Real(h) * (best - 1), hi = Real(h) * (best + 1);
  if (best == n) hi = beta;
  if (lo <= 0) lo = Real(h) / 1024;
  if (m.derivative(hi) < 0) {
    // Decreasing up to the right end: the infimum sits at λ → β.
    return {beta, m(beta)};
  }
  while (m.derivative(lo) > 0 && lo > Real("1e-40")) lo /= 2;
  Real x = Real(h) * best;
  const Real tol("1e-30");
  for (int it = 0; it < 200; ++it) {
    Real g = m.derivative(x);
    if (g > 0) hi = x;
    else lo = x;
    Real gp = m.k / (x * x) - 1 / x;
    Real next = gp != 0 ? x - g / gp : (lo + hi) / 2;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    Real step = mp::abs(next - x);
    x = next;
    if (step < tol || hi - lo < tol) break;
  }
  return {x, m(x)};
}

SieveFunction kappa4_function(const Real& beta) {
  Real lb = mp::log(beta);
  return {4 * lb, 5 - 1 / beta + lb, Real(4)};
}

SieveFunction kappa6_function(const Real& beta) {
  Real lb = mp::log(beta);
  return {3 + 6 * lb, 10 - 4 / beta + lb, Real(6)};
}

Real beta6_consistent(const Real& target) {
  auto f = [&](const Real& b) { return minimize_m(kappa6_function(b), b).m - target; };
  Real lo = 7, hi = Real("22.5");
  Real flo = f(lo), fhi = f(hi);
  if ((flo > 0) == (fhi > 0)) {
    throw Error(Errc::search_exhausted, "target minimum not bracketed for beta in [7, 22.5]");
  }
  // Secant steps kept inside the bracket (Illinois variant).
  int side = 0;
  Real x = lo;
  for (int it = 0; it < 200; ++it) {
    x = (lo * fhi - hi * flo) / (fhi - flo);
    Real fx = f(x);
    if (mp::abs(fx) < Real("1e-40") || hi - lo < Real("1e-35")) break;
    if ((fx > 0) == (fhi > 0)) {
      hi = x;
      fhi = fx;
      if (side == -1) flo /= 2;
      side = -1;
    } else {
      lo = x;
      flo = fx;
      if (side == 1) fhi /= 2;
      side = 1;
    }
  }
  return x;
}

Int admissible_r(const Real& m) {
  return floor_int(m) + 1;
}

}  // namespace satlab
