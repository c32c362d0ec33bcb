#include "satlab/varieties.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "satlab/errors.hpp"

namespace satlab {

namespace {

const std::vector<std::string>& y_names() {
  static const std::vector<std::string> n{"y0", "y1", "y2"};
  return n;
}

bool all_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int eval2(const IntPoly& f, const Int& s, const Int& t) {
  std::array<Int, 2> x{s, t};
  return f.eval(x);
}

Int gcd3(const Int& a, const Int& b, const Int& c) { return int_gcd(int_gcd(a, b), c); }

}  // namespace

const std::array<IntPoly, 4>& elkies_forms() {
  static const std::array<IntPoly, 4> forms{
      parse_poly("-(y1+y0)*y2^2 + (y1^2+2*y0^2)*y2 - y1^3 + y0*y1^2 - 2*y0^2*y1 - y0^3",
                 y_names()),
      parse_poly("y2^3 - (y1+y0)*y2^2 + (y1^2+2*y0^2)*y2 + y0*y1^2 - 2*y0^2*y1 + y0^3",
                 y_names()),
      parse_poly("-y2^3 + (y1+y0)*y2^2 - (y1^2+2*y0^2)*y2 + 2*y0*y1^2 - y0^2*y1 + 2*y0^3",
                 y_names()),
      parse_poly("(y1-2*y0)*y2^2 + (y0^2-y1^2)*y2 + y1^3 - y0*y1^2 + 2*y0^2*y1 - 2*y0^3",
                 y_names()),
  };
  return forms;
}

std::array<Int, 4> elkies_map(std::span<const Int> y) {
  if (y.size() != 3) throw Error(Errc::arity_mismatch, "Elkies map takes three coordinates");
  if (all_zero(y)) throw Error(Errc::zero_input, "y = 0");
  const auto& f = elkies_forms();
  return {f[0].eval(y), f[1].eval(y), f[2].eval(y), f[3].eval(y)};
}

IntPoly fermat_cubic(std::size_t nvars) {
  IntPoly F(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    IntPoly::Exponents e(nvars, 0);
    e[i] = 3;
    F.add_term(e, Int(1));
  }
  return F;
}

// ---------------------------------------------------------------------------
// Skew-line model

SkewCubicModel example_split_surface() {
  SkewCubicModel m;
  m.a = {Int(1), Int(-6)};
  m.d = {Int(0), Int(36)};
  m.f = {Int(36), Int(216)};
  m.b = {Int(-1), Int(0), Int(0)};
  m.e = {Int(0), Int(0), Int(-216)};
  return m;
}

IntPoly linear_form(const std::array<Int, 2>& c) {
  IntPoly p(2);
  p.add_term({1, 0}, c[0]);
  p.add_term({0, 1}, c[1]);
  return p;
}

IntPoly quadratic_form(const std::array<Int, 3>& c) {
  IntPoly p(2);
  p.add_term({2, 0}, c[0]);
  p.add_term({1, 1}, c[1]);
  p.add_term({0, 2}, c[2]);
  return p;
}

IntPoly surface_poly(const SkewCubicModel& m) {
  IntPoly F(4);
  auto lin = [&](const std::array<Int, 2>& c, unsigned e2, unsigned e3) {
    F.add_term({1, 0, e2, e3}, c[0]);
    F.add_term({0, 1, e2, e3}, c[1]);
  };
  auto quad = [&](const std::array<Int, 3>& c, unsigned e2, unsigned e3) {
    F.add_term({2, 0, e2, e3}, c[0]);
    F.add_term({1, 1, e2, e3}, c[1]);
    F.add_term({0, 2, e2, e3}, c[2]);
  };
  lin(m.a, 2, 0);
  lin(m.d, 1, 1);
  lin(m.f, 0, 2);
  quad(m.b, 1, 0);
  quad(m.e, 0, 1);
  return F;
}

SkewCubicModel model_from_cubic(const IntPoly& F) {
  if (F.nvars() != 4) throw Error(Errc::shape_mismatch, "expected a quaternary cubic");
  SkewCubicModel m;
  for (auto* arr : {&m.a, &m.d, &m.f}) *arr = {Int(0), Int(0)};
  for (auto* arr : {&m.b, &m.e}) *arr = {Int(0), Int(0), Int(0)};
  for (const auto& [e, c] : F.terms()) {
    unsigned low = e[0] + e[1], high = e[2] + e[3];
    if (low == 1 && high == 2) {
      std::size_t i = e[0] == 1 ? 0 : 1;
      if (e[2] == 2) m.a[i] = c;
      else if (e[2] == 1) m.d[i] = c;
      else m.f[i] = c;
    } else if (low == 2 && high == 1) {
      std::size_t i = e[0] == 2 ? 0 : (e[0] == 1 ? 1 : 2);
      if (e[2] == 1) m.b[i] = c;
      else m.e[i] = c;
    } else {
      std::ostringstream os;
      os << "monomial x0^" << e[0] << " x1^" << e[1] << " x2^" << e[2] << " x3^" << e[3]
         << " lies outside the model's support";
      throw Error(Errc::shape_mismatch, os.str());
    }
  }
  return m;
}

IntPoly delta_form(const SkewCubicModel& m) {
  IntPoly a = linear_form(m.a), d = linear_form(m.d), f = linear_form(m.f);
  IntPoly b = quadratic_form(m.b), e = quadratic_form(m.e);
  return a * e * e + f * b * b - b * d * e;
}

IntPoly split_discriminant_form(const SkewCubicModel& m) {
  IntPoly a = linear_form(m.a), d = linear_form(m.d), f = linear_form(m.f);
  return d * d - Int(4) * a * f;
}

bool split_discriminant_is_polynomial_square(const SkewCubicModel& m) {
  IntPoly q = split_discriminant_form(m);
  if (q.is_zero()) return true;
  Int A = q.coefficient({2, 0}), B = q.coefficient({1, 1}), C = q.coefficient({0, 2});
  if (B * B != 4 * A * C) return false;
  // q = (α s + β t)^2 with α^2 = A, β^2 = C integral.
  return exact_sqrt(A).has_value() && exact_sqrt(C).has_value();
}

namespace {

Int res_or_zero(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  return resultant(f, g);
}

}  // namespace

ModelResultants model_resultants(const SkewCubicModel& m) {
  ModelResultants r;
  r.W0 = res_or_zero(quadratic_form(m.b), quadratic_form(m.e));
  IntPoly a = linear_form(m.a), d = linear_form(m.d), f = linear_form(m.f);
  const std::pair<const char*, std::pair<const IntPoly*, const IntPoly*>> pairs[] = {
      {"a,d", {&a, &d}}, {"a,f", {&a, &f}}, {"d,f", {&d, &f}}};
  r.W1 = 0;
  for (const auto& [name, pq] : pairs) {
    Int v = res_or_zero(*pq.first, *pq.second);
    if (v != 0) {
      r.W1 = v;
      r.W1_pair = name;
      break;
    }
  }
  return r;
}

namespace {

std::vector<Int*> adf_coeffs(SkewCubicModel& m) {
  return {&m.a[0], &m.a[1], &m.d[0], &m.d[1], &m.f[0], &m.f[1]};
}
std::vector<Int*> be_coeffs(SkewCubicModel& m) {
  return {&m.b[0], &m.b[1], &m.b[2], &m.e[0], &m.e[1], &m.e[2]};
}

Int coeff_gcd(const std::vector<Int*>& cs) {
  Int g = 0;
  for (const Int* c : cs) g = int_gcd(g, *c);
  return g;
}

bool local_normal_at(const SkewCubicModel& m, unsigned p) {
  if (int_gcd(Int(m.a[0] * m.b[0]), Int(p)) != 1) return false;
  const Int* rest[] = {&m.a[1], &m.d[0], &m.d[1], &m.f[0], &m.f[1],
                       &m.b[1], &m.b[2], &m.e[0], &m.e[1], &m.e[2]};
  for (const Int* c : rest)
    if (*c % p != 0) return false;
  return true;
}

// (x0, x1, x2, x3) -> (p^νa x0, p^β x1, p^νb x2, p^α x3), then divide by p^(2νa + 2νb).
SkewCubicModel padic_rescale(const SkewCubicModel& m, unsigned p) {
  const Int P(p);
  long na = static_cast<long>(valuation(m.a[0], P));
  long nb = static_cast<long>(valuation(m.b[0], P));
  long alpha = 1 + std::max(na + nb, 2 * nb);
  long beta = 1 + std::max(na + nb, 2 * na);
  const long w[4] = {na, beta, nb, alpha};
  const long shift = 2 * na + 2 * nb;
  IntPoly F = surface_poly(m);
  IntPoly G(4);
  for (const auto& [e, c] : F.terms()) {
    long k = -shift;
    for (int i = 0; i < 4; ++i) k += w[i] * static_cast<long>(e[i]);
    Int v = c;
    if (k >= 0) {
      v *= int_pow(P, static_cast<unsigned long>(k));
    } else {
      Int q = int_pow(P, static_cast<unsigned long>(-k));
      if (v % q != 0) throw Error(Errc::degenerate_model, "inexact p-adic rescaling");
      v /= q;
    }
    G.add_term(e, v);
  }
  return model_from_cubic(G);
}

void remove_content(SkewCubicModel& m) {
  auto adf = adf_coeffs(m);
  auto be = be_coeffs(m);
  Int k2 = coeff_gcd(adf), k1 = coeff_gcd(be);
  for (Int* c : adf) *c /= k2;
  for (Int* c : be) *c /= k1;
}

}  // namespace

bool is_normalized(const SkewCubicModel& m) {
  SkewCubicModel c = m;
  if (coeff_gcd(adf_coeffs(c)) != 1 || coeff_gcd(be_coeffs(c)) != 1) return false;
  return local_normal_at(m, 2) && local_normal_at(m, 3);
}

SkewCubicModel normalize_model(const SkewCubicModel& m) {
  if (m.a[0] == 0 && m.a[1] == 0) throw Error(Errc::degenerate_model, "a vanishes identically");
  if (m.b[0] == 0 && m.b[1] == 0 && m.b[2] == 0) {
    throw Error(Errc::degenerate_model, "b vanishes identically");
  }
  SkewCubicModel out = m;
  if (out.a[0] * out.b[0] == 0) {
    IntPoly F = surface_poly(out);
    IntPoly x0 = IntPoly::variable(4, 0), x1 = IntPoly::variable(4, 1);
    IntPoly x2 = IntPoly::variable(4, 2), x3 = IntPoly::variable(4, 3);
    bool done = false;
    for (long lambda = 1; lambda <= 8 && !done; ++lambda) {
      std::vector<IntPoly> subs{x0, x1 + x0 * Int(lambda), x2, x3};
      SkewCubicModel c = model_from_cubic(F.compose(subs));
      if (c.a[0] * c.b[0] != 0) {
        out = c;
        done = true;
      }
    }
    if (!done) throw Error(Errc::degenerate_model, "no substitution makes a0 b0 nonzero");
  }
  remove_content(out);
  for (unsigned p : {2U, 3U}) {
    if (!local_normal_at(out, p)) out = padic_rescale(out, p);
  }
  if (!is_normalized(out)) throw Error(Errc::degenerate_model, "normalization failed");
  return out;
}

// ---------------------------------------------------------------------------
// Fibers

FiberForms fiber_forms(const SkewCubicModel& m, const Int& s, const Int& t) {
  if (int_gcd(s, t) != 1) {
    throw Error(Errc::non_coprime_fiber, "gcd(" + s.get_str() + ", " + t.get_str() + ") != 1");
  }
  FiberForms ff;
  ff.s = s;
  ff.t = t;
  ff.a = eval2(linear_form(m.a), s, t);
  ff.d = eval2(linear_form(m.d), s, t);
  ff.f = eval2(linear_form(m.f), s, t);
  ff.b = eval2(quadratic_form(m.b), s, t);
  ff.e = eval2(quadratic_form(m.e), s, t);
  ff.delta = ff.a * ff.e * ff.e + ff.f * ff.b * ff.b - ff.b * ff.d * ff.e;
  ff.G = linear_form({ff.b, ff.e});
  ff.H = quadratic_form({ff.a, ff.d, ff.f});
  IntPoly u = IntPoly::variable(2, 0), v = IntPoly::variable(2, 1);
  ff.phi = {u, v, ff.G, ff.H};
  ff.Phi_prime = u * v * ff.G * ff.H;
  ff.Phi = ff.Phi_prime * ff.G * ff.H;
  return ff;
}

FiberPoint fiber_point(const FiberForms& ff, const Int& u, const Int& v) {
  Int G = ff.b * u + ff.e * v;
  Int H = ff.a * u * u + ff.d * u * v + ff.f * v * v;
  FiberPoint p;
  p.x = {Int(-ff.s * H), Int(-ff.t * H), Int(u * G), Int(v * G)};
  p.degenerate = G == 0 && H == 0;
  return p;
}

FiberPoint fiber_point(const SkewCubicModel& m, const Int& s, const Int& t, const Int& u,
                       const Int& v) {
  return fiber_point(fiber_forms(m, s, t), u, v);
}

bool LocalConditionReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

const ConditionCheck* LocalConditionReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

LocalConditionReport check_local_conditions(const SkewCubicModel& m,
                                            std::optional<std::array<Int, 2>> fiber,
                                            const FactorOptions& opts) {
  LocalConditionReport r;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  SkewCubicModel c = m;
  Int k2 = coeff_gcd(adf_coeffs(c)), k1 = coeff_gcd(be_coeffs(c));
  add("content_adf", k2 == 1, "gcd = " + k2.get_str());
  add("content_be", k1 == 1, "gcd = " + k1.get_str());
  add("coprime_6_a0b0", int_gcd(Int(m.a[0] * m.b[0]), Int(6)) == 1,
      "a0 b0 = " + Int(m.a[0] * m.b[0]).get_str());
  {
    bool ok = true;
    const Int* rest[] = {&m.a[1], &m.d[0], &m.d[1], &m.f[0], &m.f[1],
                         &m.b[1], &m.b[2], &m.e[0], &m.e[1], &m.e[2]};
    for (const Int* v : rest) ok = ok && (*v % 6 == 0);
    add("six_divides_rest", ok);
  }
  IntPoly a = linear_form(m.a), d = linear_form(m.d), f = linear_form(m.f);
  IntPoly b = quadratic_form(m.b), e = quadratic_form(m.e);
  {
    std::string zero;
    if (a.is_zero()) zero += " a";
    if (b.is_zero()) zero += " b";
    if (e.is_zero()) zero += " e";
    if (f.is_zero()) zero += " f";
    add("forms_nonzero", zero.empty(), zero.empty() ? "" : "vanishing:" + zero);
  }
  add("split_discriminant_nonzero", !split_discriminant_form(m).is_zero(),
      "d^2 - 4af = " + split_discriminant_form(m).pretty());
  r.resultants = model_resultants(m);
  add("adf_no_common_factor", r.resultants.W1 != 0,
      r.resultants.W1 != 0 ? "Res(" + r.resultants.W1_pair + ") = " + r.resultants.W1.get_str()
                           : "all pairwise resultants vanish");
  add("res_be_nonzero", r.resultants.W0 != 0, "Res(b,e) = " + r.resultants.W0.get_str());
  {
    IntPoly delta = delta_form(m);
    bool ok = !delta.is_zero() && delta.is_homogeneous() && delta.total_degree() == 5 &&
              discriminant(delta) != 0;
    add("delta_separable", ok);
  }

  if (fiber) {
    const Int& s = (*fiber)[0];
    const Int& t = (*fiber)[1];
    bool coprime = int_gcd(s, t) == 1;
    add("fiber_coprime_st", coprime);
    if (coprime) {
      FiberForms ff = fiber_forms(m, s, t);
      add("fiber_six_divides_def", ff.d % 6 == 0 && ff.e % 6 == 0 && ff.f % 6 == 0);
      add("fiber_coprime_6_ab", int_gcd(Int(ff.a * ff.b), Int(6)) == 1);
      Int gbe = int_gcd(ff.b, ff.e), gadf = gcd3(ff.a, ff.d, ff.f);
      add("fiber_gcd_be", gbe == 1, "gcd = " + gbe.get_str());
      add("fiber_gcd_adf", gadf == 1, "gcd = " + gadf.get_str());
      Int disc = ff.d * ff.d - 4 * ff.a * ff.f;
      Int prod = Int(30) * ff.a * ff.b * ff.e * ff.f * disc * ff.delta;
      add("fiber_D_nonzero", prod != 0);
      if (prod != 0) r.D = radical(prod, opts);
    }
  }
  return r;
}

AdmissibleResidues admissible_residues(const SkewCubicModel& m, const FactorOptions& opts) {
  ModelResultants mr = model_resultants(m);
  if (mr.W0 == 0 || mr.W1 == 0) {
    throw Error(Errc::hypothesis_violated, "W0 W1 = 0: forms share a common factor");
  }
  Factorization f0 = factor(mr.W0, opts), f1 = factor(mr.W1, opts);
  if (!f0.complete() || !f1.complete()) {
    throw Error(Errc::incomplete_factorization, "cannot factor W0 W1");
  }
  std::map<Int, unsigned> primes = f0.factors;
  for (const auto& [p, e] : f1.factors) primes[p] = 1;

  IntPoly a = linear_form(m.a), d = linear_form(m.d), f = linear_form(m.f);
  IntPoly b = quadratic_form(m.b), e = quadratic_form(m.e);
  auto good = [&](const Int& s, const Int& t, const Int& p) {
    Int gbe = int_gcd(eval2(b, s, t), eval2(e, s, t));
    Int gadf = gcd3(eval2(a, s, t), eval2(d, s, t), eval2(f, s, t));
    return gbe % p != 0 && gadf % p != 0;
  };

  AdmissibleResidues out;
  out.W = 1;
  std::vector<Int> ss, ts, ms;
  for (const auto& [p, unused] : primes) {
    std::optional<std::pair<Int, Int>> found;
    if ((p == 2 || p == 3) && good(Int(1), Int(1), p)) {
      found = {Int(1), Int(1)};
    } else {
      for (Int s = 1; s < p && !found; ++s)
        for (Int t = 1; t < p && !found; ++t)
          if (good(s, t, p)) found = {s, t};
    }
    if (!found) {
      throw Error(Errc::search_exhausted, "no admissible residue pair modulo " + p.get_str());
    }
    ss.push_back(found->first);
    ts.push_back(found->second);
    ms.push_back(p);
    out.W *= p;
  }
  out.s0 = crt(ss, ms);
  out.t0 = crt(ts, ms);

  std::mt19937_64 rng(0xA11CEULL);
  std::uniform_int_distribution<long> k(-100000, 100000);
  int checked = 0;
  for (int tries = 0; checked < 100 && tries < 100000; ++tries) {
    Int s = out.s0 + out.W * k(rng), t = out.t0 + out.W * k(rng);
    if (int_gcd(s, t) != 1) continue;
    ++checked;
    FiberForms ff = fiber_forms(m, s, t);
    if (int_gcd(ff.b, ff.e) != 1 || gcd3(ff.a, ff.d, ff.f) != 1) {
      throw Error(Errc::search_exhausted, "fiber forms not primitive at admissible residues");
    }
  }
  return out;
}

std::optional<SplitFiber> split_fiber(const SkewCubicModel& m, const Int& s, const Int& t) {
  FiberForms ff = fiber_forms(m, s, t);
  Int disc = ff.d * ff.d - 4 * ff.a * ff.f;
  if (disc <= 0) return std::nullopt;
  auto delta = exact_sqrt(disc);
  if (!delta) return std::nullopt;
  SplitFiber sf;
  sf.s = s;
  sf.t = t;
  sf.delta = *delta;
  if (ff.a == 0) {
    sf.L4 = linear_form({Int(0), Int(1)});
    sf.L5 = linear_form({ff.d, ff.f});
  } else {
    // (2a u + (d − δ) v)(2a u + (d + δ) v) = 4a H
    IntPoly L = linear_form({Int(2 * ff.a), Int(ff.d - sf.delta)});
    IntPoly M = linear_form({Int(2 * ff.a), Int(ff.d + sf.delta)});
    Int c1 = content(L), c2 = content(M);
    Int k = c1 * c2;
    if (k % (4 * ff.a) != 0) throw Error(Errc::invalid_argument, "split content mismatch");
    k /= 4 * ff.a;
    sf.L4 = primitive_part(L) * k;
    sf.L5 = primitive_part(M);
  }
  if (!(sf.L4 * sf.L5 == ff.H)) throw Error(Errc::invalid_argument, "split product mismatch");
  return sf;
}

std::vector<SplitFiber> find_split_fibers(const SkewCubicModel& m, const Int& s_lo,
                                          const Int& s_hi, const Int& t_lo, const Int& t_hi) {
  std::vector<SplitFiber> out;
  for (Int s = s_lo; s <= s_hi; ++s) {
    for (Int t = t_lo; t <= t_hi; ++t) {
      if (s < 0 || (s == 0 && t <= 0)) continue;  // one representative of ±(s, t)
      if (int_gcd(s, t) != 1) continue;
      if (auto sf = split_fiber(m, s, t)) out.push_back(std::move(*sf));
    }
  }
  return out;
}

namespace {

const char* const kModelKeys[12] = {"a0", "a1", "d0", "d1", "f0", "f1",
                                    "b0", "b1", "b2", "e0", "e1", "e2"};

std::array<Int*, 12> model_slots(SkewCubicModel& m) {
  return {&m.a[0], &m.a[1], &m.d[0], &m.d[1], &m.f[0], &m.f[1],
          &m.b[0], &m.b[1], &m.b[2], &m.e[0], &m.e[1], &m.e[2]};
}

std::map<std::string, std::string> parse_kv(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, "expected key=value: " + line);
    auto trim = [](std::string s) {
      auto i = s.find_first_not_of(" \t\r");
      auto j = s.find_last_not_of(" \t\r");
      return i == std::string::npos ? std::string() : s.substr(i, j - i + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (kv.count(key)) throw Error(Errc::parse_error, "duplicate key " + key);
    kv[key] = val;
  }
  return kv;
}

}  // namespace

std::string model_to_text(const SkewCubicModel& m) {
  SkewCubicModel c = m;
  auto slots = model_slots(c);
  std::string out;
  for (int i = 0; i < 12; ++i) out += std::string(kModelKeys[i]) + "=" + slots[i]->get_str() + "\n";
  return out;
}

SkewCubicModel model_from_text(std::string_view text) {
  auto kv = parse_kv(text);
  SkewCubicModel m;
  auto slots = model_slots(m);
  for (int i = 0; i < 12; ++i) {
    auto it = kv.find(kModelKeys[i]);
    if (it == kv.end()) throw Error(Errc::parse_error, std::string("missing key ") + kModelKeys[i]);
    *slots[i] = parse_int(it->second);
    kv.erase(it);
  }
  if (!kv.empty()) throw Error(Errc::parse_error, "unknown key " + kv.begin()->first);
  return m;
}

// ---------------------------------------------------------------------------
// Threefold

RVec5 threefold_to_y(const RVec5& x) {
  RVec5 y;
  y[0] = x[0];
  y[1] = (x[1] + x[3]) / 2;
  y[2] = (x[2] + x[4]) / 2;
  y[3] = (x[1] - x[3]) / 2;
  y[4] = (x[2] - x[4]) / 2;
  return y;
}

RVec5 threefold_from_y(const RVec5& y) {
  RVec5 x;
  x[0] = y[0];
  x[1] = y[1] + y[3];
  x[2] = y[2] + y[4];
  x[3] = y[1] - y[3];
  x[4] = y[2] - y[4];
  return x;
}

Vec5 threefold_to_y_integral(const Vec5& x) {
  if (mod_floor(Int(x[1] + x[3]), Int(2)) != 0 || mod_floor(Int(x[2] + x[4]), Int(2)) != 0) {
    throw Error(Errc::parity_mismatch, "x1 + x3 and x2 + x4 must be even");
  }
  return {x[0], Int((x[1] + x[3]) / 2), Int((x[2] + x[4]) / 2), Int((x[1] - x[3]) / 2),
          Int((x[2] - x[4]) / 2)};
}

Vec5 threefold_from_y_integral(const Vec5& y) {
  return {y[0], Int(y[1] + y[3]), Int(y[2] + y[4]), Int(y[1] - y[3]), Int(y[2] - y[4])};
}

IntPoly threefold_y_form() {
  std::vector<std::string> names{"y0", "y1", "y2", "y3", "y4"};
  return parse_poly("y0^3 + 2*y1*(y1^2 + 3*y3^2) + 2*y2*(y2^2 + 3*y4^2)", names);
}

std::optional<std::string> threefold_gate_failure(const Int& p1, const Int& p2, const Int& p3) {
  const Int* ps[3] = {&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i) {
    if (!is_prime(*ps[i])) return "p" + std::to_string(i + 1) + " is not prime";
  }
  for (int i = 0; i < 3; ++i) {
    for (int q : {2, 3, 5, 49}) {
      if (mod_floor(*ps[i], Int(q)) != 1) {
        return "p" + std::to_string(i + 1) + " is not 1 mod " + std::to_string(q);
      }
    }
  }
  Int p1c = int_pow(p1, 3), p26 = int_pow(p2, 6), p36 = int_pow(p3, 6);
  if (Int(p1c - 2 * p26) % p3 == 0) return "p3 divides p1^3 - 2 p2^6";
  if (p1c - 8 * p26 + 2 * p36 == 0) return "p1^3 - 8 p2^6 + 2 p3^6 vanishes";
  if (p3 * (p1c - 2 * p26 + 2 * p36) == 0) return "p3 (p1^3 - 2 p2^6 + 2 p3^6) vanishes";
  return std::nullopt;
}

ThreefoldFiber threefold_fiber(const Int& p1, const Int& p2, const Int& p3) {
  if (auto why = threefold_gate_failure(p1, p2, p3)) throw Error(Errc::condition_violated, *why);
  ThreefoldFiber fib;
  fib.p1 = p1;
  fib.p2 = p2;
  fib.p3 = p3;
  fib.K = int_pow(p1, 3) - 2 * int_pow(p2, 6) + 2 * int_pow(p3, 6);
  const Int A = 6 * p3 * p3;
  const Int B1 = 12 * int_pow(p2, 3) * p3;
  const Int B3 = 12 * int_pow(p3, 4);
  const Int& K = fib.K;
  fib.f[0] = quadratic_form({Int(0), Int(1), Int(0)});
  fib.f[1] = quadratic_form({A, Int(-B1), K});
  fib.f[2] = quadratic_form({Int(-A), Int(-B1), Int(-K)});
  fib.f[3] = quadratic_form({Int(-A), B3, K});
  fib.f[4] = quadratic_form({A, B3, Int(-K)});
  IntPoly uv = quadratic_form({Int(0), Int(1), Int(0)});
  if (!(fib.f[1] + fib.f[2] == uv * Int(-B1 * 2)) || !(fib.f[3] + fib.f[4] == uv * Int(B3 * 2))) {
    throw Error(Errc::condition_violated, "form relations fail");
  }
  return fib;
}

ThreefoldPoint threefold_point(const ThreefoldFiber& fib, const Int& u, const Int& v) {
  if (u == 0 && v == 0) throw Error(Errc::zero_parameter, "(u, v) = (0, 0)");
  std::array<Int, 5> fv;
  for (int i = 0; i < 5; ++i) fv[i] = eval2(fib.f[i], u, v);
  ThreefoldPoint pt;
  pt.x = {Int(12 * fib.p1 * fib.p2 * fib.p3 * fib.p3 * fv[0]), Int(fib.p3 * fv[1]),
          Int(fib.p3 * fv[2]), Int(fib.p2 * fv[3]), Int(fib.p2 * fv[4])};
  Int prod = fv[0] * fv[1] * fv[2] * fv[3] * fv[4];
  if (prod % 7 != 0) throw Error(Errc::non_integral_f, "7 does not divide the form product");
  pt.F = prod / 7;
  return pt;
}

Int threefold_sieve_product(const ThreefoldFiber& fib) {
  Int D = 2 * 3 * 5 * 7;
  for (int i = 1; i <= 4; ++i) {
    D *= fib.f[i].coefficient({2, 0}) * fib.f[i].coefficient({0, 2}) * discriminant(fib.f[i]);
    for (int j = i + 1; j <= 4; ++j) D *= resultant(fib.f[i], fib.f[j]);
  }
  return abs(D);
}

std::array<Int, 2> threefold_residue_lift() {
  std::vector<Int> us, vs, ms;
  for (const auto& r : kThreefoldResidues) {
    ms.push_back(Int(r[0]));
    us.push_back(Int(r[1]));
    vs.push_back(Int(r[2]));
  }
  return {crt(us, ms), crt(vs, ms)};
}

std::vector<std::array<Int, 3>> admissible_triples(std::size_t count, std::size_t pool) {
  std::vector<std::array<Int, 3>> out;
  if (count == 0) return out;
  auto primes = primes_in_ap(Int(kThreefoldModulus), Int(1), pool);
  for (std::size_t mx = 0; mx < pool; ++mx) {
    for (std::size_t i = 0; i <= mx; ++i)
      for (std::size_t j = 0; j <= mx; ++j)
        for (std::size_t k = 0; k <= mx; ++k) {
          if (std::max({i, j, k}) != mx) continue;
          if (threefold_gate_failure(primes[i], primes[j], primes[k])) continue;
          out.push_back({primes[i], primes[j], primes[k]});
          if (out.size() == count) return out;
        }
  }
  return out;
}

std::string fiber_to_text(const ThreefoldFiber& fib) {
  std::string out = "# satlab-fiber v1\n";
  out += "p1=" + fib.p1.get_str() + "\n";
  out += "p2=" + fib.p2.get_str() + "\n";
  out += "p3=" + fib.p3.get_str() + "\n";
  for (int i = 0; i < 5; ++i) {
    const IntPoly& f = fib.f[i];
    out += "f" + std::to_string(i) + "=" + f.coefficient({2, 0}).get_str() + "," +
           f.coefficient({1, 1}).get_str() + "," + f.coefficient({0, 2}).get_str() + "\n";
  }
  return out;
}

ThreefoldFiber fiber_from_text(std::string_view text) {
  if (text.rfind("# satlab-fiber v1", 0) != 0) {
    throw Error(Errc::parse_error, "missing '# satlab-fiber v1' header");
  }
  auto kv = parse_kv(text);
  auto get = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(Errc::parse_error, "missing key " + k);
    return it->second;
  };
  ThreefoldFiber fib = threefold_fiber(parse_int(get("p1")), parse_int(get("p2")),
                                       parse_int(get("p3")));
  for (int i = 0; i < 5; ++i) {
    std::string key = "f" + std::to_string(i);
    if (!kv.count(key)) continue;
    auto c = parse_int_list(kv[key]);
    if (c.size() != 3) throw Error(Errc::parse_error, key + " needs three coefficients");
    if (!(quadratic_form({c[0], c[1], c[2]}) == fib.f[i])) {
      throw Error(Errc::parse_error, key + " disagrees with the prime triple");
    }
  }
  return fib;
}

}  // namespace satlab
