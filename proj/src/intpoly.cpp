#include "satlab/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "satlab/errors.hpp"

namespace satlab {

namespace {

std::vector<std::vector<Int>> power_tables(const IntPoly& f, std::span<const Int> x) {
  std::vector<std::vector<Int>> pw(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    unsigned d = f.degree_in(i);
    pw[i].resize(d + 1);
    pw[i][0] = 1;
    for (unsigned k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  return pw;
}

}  // namespace

IntPoly IntPoly::constant(std::size_t nvars, const Int& c) {
  IntPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

IntPoly IntPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(Errc::arity_mismatch, "variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), Int(1));
}

IntPoly IntPoly::monomial(std::size_t nvars, Exponents exps, const Int& c) {
  if (exps.size() != nvars) throw Error(Errc::arity_mismatch, "exponent vector length");
  IntPoly p(nvars);
  p.add_term(exps, c);
  return p;
}

IntPoly IntPoly::univariate(std::span<const Int> coeffs) {
  IntPoly p(1);
  for (unsigned i = 0; i < coeffs.size(); ++i) p.add_term({i}, coeffs[i]);
  return p;
}

IntPoly IntPoly::binary_form(std::span<const Int> coeffs) {
  IntPoly p(2);
  if (coeffs.empty()) return p;
  unsigned d = static_cast<unsigned>(coeffs.size() - 1);
  for (unsigned i = 0; i <= d; ++i) p.add_term({d - i, i}, coeffs[i]);
  return p;
}

unsigned IntPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

unsigned IntPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

bool IntPoly::is_homogeneous() const {
  bool first = true;
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    if (first) {
      deg = s;
      first = false;
    } else if (s != deg) {
      return false;
    }
  }
  return true;
}

Int IntPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void IntPoly::add_term(const Exponents& e, const Int& c) {
  if (e.size() != nvars_) throw Error(Errc::arity_mismatch, "exponent vector length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Int IntPoly::eval(std::span<const Int> x) const {
  if (x.size() != nvars_) {
    throw Error(Errc::arity_mismatch, "expected " + std::to_string(nvars_) + " values, got " +
                                          std::to_string(x.size()));
  }
  auto pw = power_tables(*this, x);
  Int sum = 0, t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pw[i][e[i]];
    sum += t;
  }
  return sum;
}

Int IntPoly::eval_mod(std::span<const Int> x, const Int& m) const {
  if (x.size() != nvars_) throw Error(Errc::arity_mismatch, "eval_mod arity");
  Int sum = 0, t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      Int r;
      Int base = mod_floor(x[i], m);
      mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), e[i], m.get_mpz_t());
      t = mod_floor(Int(t * r), m);
    }
    sum += t;
  }
  return mod_floor(sum, m);
}

IntPoly IntPoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw Error(Errc::arity_mismatch, "derivative variable out of range");
  IntPoly d(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    d.add_term(f, c * e[var]);
  }
  return d;
}

IntPoly IntPoly::compose(std::span<const IntPoly> subs) const {
  if (subs.size() != nvars_) throw Error(Errc::arity_mismatch, "compose: substitution count");
  std::size_t n = subs.empty() ? 0 : subs[0].nvars();
  for (const auto& s : subs)
    if (s.nvars() != n) throw Error(Errc::arity_mismatch, "compose: mixed arities");
  std::vector<std::vector<IntPoly>> pw(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    unsigned d = degree_in(i);
    pw[i].push_back(IntPoly::constant(n, Int(1)));
    for (unsigned k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * subs[i]);
  }
  IntPoly out(n);
  for (const auto& [e, c] : terms_) {
    IntPoly t = IntPoly::constant(n, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pw[i][e[i]];
    out += t;
  }
  return out;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = IntPoly::constant(nvars_, Int(1));
  IntPoly base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

void IntPoly::check_arity(const IntPoly& o) const {
  if (o.nvars_ != nvars_) {
    throw Error(Errc::arity_mismatch, "polynomials over " + std::to_string(nvars_) + " and " +
                                          std::to_string(o.nvars_) + " variables");
  }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  check_arity(o);
  IntPoly r(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(r.terms_);
  return *this;
}

IntPoly& IntPoly::operator*=(const Int& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

std::string IntPoly::pretty() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Int a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (constant) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::vector<std::string> names, bool auto_x)
      : s_(s), names_(std::move(names)), auto_x_(auto_x) {}

  // First pass collects the arity when variables are x0, x1, ...
  std::size_t scan_arity(std::size_t min_vars) const {
    std::size_t n = min_vars;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] == 'x' && (i == 0 || !std::isalnum(static_cast<unsigned char>(s_[i - 1])))) {
        std::size_t j = i + 1;
        std::size_t idx = 0;
        bool digits = false;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
          idx = idx * 10 + static_cast<std::size_t>(s_[j] - '0');
          digits = true;
          ++j;
        }
        if (digits) n = std::max(n, idx + 1);
      }
    }
    return n;
  }

  IntPoly parse(std::size_t nvars) {
    nvars_ = nvars;
    IntPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse_error,
                what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expr() {
    IntPoly acc(nvars_);
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  IntPoly term() {
    IntPoly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  IntPoly factor() {
    IntPoly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      base = base.pow(e);
    }
    return base;
  }

  IntPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      IntPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return IntPoly::constant(nvars_, parse_int(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return IntPoly::variable(nvars_, i);
      if (auto_x_ && name.size() > 1 && name[0] == 'x' &&
          std::all_of(name.begin() + 1, name.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        return IntPoly::variable(nvars_, std::stoul(name.substr(1)));
      }
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::vector<std::string> names_;
  bool auto_x_;
  std::size_t pos_ = 0;
  std::size_t nvars_ = 1;
};

}  // namespace

IntPoly parse_poly(std::string_view expr, std::span<const std::string> var_names) {
  Parser p(expr, std::vector<std::string>(var_names.begin(), var_names.end()), false);
  return p.parse(std::max<std::size_t>(1, var_names.size()));
}

IntPoly parse_poly(std::string_view expr, std::size_t min_vars) {
  Parser p(expr, {}, true);
  return p.parse(p.scan_arity(std::max<std::size_t>(1, min_vars)));
}

std::string to_text(const IntPoly& f) {
  std::string out = "vars=" + std::to_string(f.nvars()) + "\n";
  for (const auto& [e, c] : f.terms()) {
    out += c.get_str();
    for (unsigned k : e) out += " " + std::to_string(k);
    out += "\n";
  }
  return out;
}

IntPoly from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t nvars = 0;
  bool header = false;
  IntPoly f(1);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header) {
      if (line.rfind("vars=", 0) != 0) throw Error(Errc::parse_error, "missing 'vars=' header");
      try {
        nvars = std::stoul(line.substr(5));
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, "bad variable count: " + line);
      }
      if (nvars == 0) throw Error(Errc::parse_error, "vars must be positive");
      f = IntPoly(nvars);
      header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    Int c = parse_int(tok);
    IntPoly::Exponents e;
    while (ls >> tok) {
      if (!std::all_of(tok.begin(), tok.end(),
                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw Error(Errc::parse_error, "bad exponent: " + tok);
      e.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    if (e.size() != nvars) throw Error(Errc::parse_error, "term arity mismatch: " + line);
    if (c == 0) throw Error(Errc::parse_error, "zero coefficient stored: " + line);
    if (f.terms().count(e)) throw Error(Errc::parse_error, "duplicate monomial: " + line);
    f.add_term(e, c);
  }
  if (!header) throw Error(Errc::parse_error, "missing 'vars=' header");
  return f;
}

// ---------------------------------------------------------------------------
// Height, content

Int height(const IntPoly& f) {
  Int h = 0;
  for (const auto& [e, c] : f.terms()) {
    Int a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

Int content(const IntPoly& f) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "content of the zero polynomial");
  Int g = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  Int c = content(f);
  IntPoly p(f.nvars());
  for (const auto& [e, v] : f.terms()) p.add_term(e, Int(v / c));
  return p;
}

PolyInfo height_degree_content(const IntPoly& f) {
  PolyInfo info;
  info.height = height(f);
  info.degree = f.total_degree();
  info.content = content(f);
  info.primitive = primitive_part(f);
  return info;
}

// ---------------------------------------------------------------------------
// Resultants

std::vector<Int> univariate_coeffs(const IntPoly& f) {
  if (f.nvars() != 1) throw Error(Errc::arity_mismatch, "expected a univariate polynomial");
  std::vector<Int> c(f.total_degree() + 1);
  for (const auto& [e, v] : f.terms()) c[e[0]] = v;
  return c;
}

std::vector<Int> binary_form_coeffs(const IntPoly& f, unsigned degree) {
  if (f.nvars() != 2) throw Error(Errc::arity_mismatch, "expected a binary form");
  std::vector<Int> c(degree + 1);
  for (const auto& [e, v] : f.terms()) {
    if (e[0] + e[1] != degree) throw Error(Errc::invalid_argument, "form is not homogeneous");
    c[e[1]] = v;
  }
  return c;
}

namespace {

Int bareiss_det(std::vector<std::vector<Int>> a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
    }
    prev = a[k][k];
  }
  Int d = a[n - 1][n - 1];
  return sign < 0 ? Int(-d) : d;
}

bool is_binary_form(const IntPoly& f) { return f.nvars() == 2 && f.is_homogeneous(); }

std::vector<Int> descending(const IntPoly& f) {
  if (f.nvars() == 1) {
    auto c = univariate_coeffs(f);
    std::reverse(c.begin(), c.end());
    return c;
  }
  if (!is_binary_form(f)) {
    throw Error(Errc::arity_mismatch, "expected a univariate polynomial or a binary form");
  }
  return binary_form_coeffs(f, f.total_degree());
}

}  // namespace

Int sylvester_resultant(std::span<const Int> f, std::span<const Int> g) {
  if (f.empty() || g.empty()) throw Error(Errc::zero_polynomial, "empty coefficient list");
  std::size_t n = f.size() - 1, m = g.size() - 1;
  std::size_t N = n + m;
  if (N == 0) return 1;
  std::vector<std::vector<Int>> s(N, std::vector<Int>(N, Int(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[i][i + j] = f[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[m + i][i + j] = g[j];
  return bareiss_det(std::move(s));
}

Int resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::zero_polynomial, "resultant with zero");
  if (f.nvars() != g.nvars()) throw Error(Errc::arity_mismatch, "resultant arity");
  auto a = descending(f);
  auto b = descending(g);
  return sylvester_resultant(a, b);
}

Int discriminant(const IntPoly& f) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "discriminant of zero");
  std::vector<Int> c = descending(f);  // c[0] is the (formal) leading coefficient
  std::size_t n = c.size() - 1;
  if (n == 0) throw Error(Errc::invalid_argument, "discriminant needs degree >= 1");
  if (n == 1) return 1;
  if (c[0] == 0) {
    // Binary form with vanishing u^n coefficient: move to an SL2(Z)-equivalent
    // form F(u, v + k u) whose leading coefficient F(1, k) is nonzero.
    IntPoly u = IntPoly::variable(2, 0), v = IntPoly::variable(2, 1);
    for (long k = 1;; ++k) {
      std::vector<IntPoly> subs{u, v + u * Int(k)};
      IntPoly g = f.compose(subs);
      auto gc = binary_form_coeffs(g, static_cast<unsigned>(n));
      if (gc[0] != 0) return discriminant(g);
    }
  }
  std::vector<Int> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = c[i] * static_cast<unsigned long>(n - i);
  Int r = sylvester_resultant(c, d);
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), c[0].get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

// ---------------------------------------------------------------------------
// Fixed divisor, sieve modulus

FixedDivisor fixed_divisor(const IntPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "fixed divisor of zero");
  std::size_t n = f.nvars();
  std::vector<unsigned> deg(n);
  long double grid = 1;
  for (std::size_t i = 0; i < n; ++i) {
    deg[i] = f.degree_in(i);
    grid *= static_cast<long double>(deg[i] + 1);
  }
  FixedDivisor out;
  Int g = 0;
  std::vector<Int> x(n, Int(0));
  if (grid <= static_cast<long double>(kFixedDivisorGridLimit)) {
    std::vector<unsigned> idx(n, 0);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) x[i] = idx[i];
      Int v = f.eval(x);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
      std::size_t k = 0;
      while (k < n && ++idx[k] > deg[k]) idx[k++] = 0;
      if (k == n) break;
    }
    out.exact = true;
  } else {
    std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
    std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
    for (int t = 0; t < 10'000 && g != 1; ++t) {
      for (std::size_t i = 0; i < n; ++i) x[i] = to_int(static_cast<std::int64_t>(dist(rng)));
      Int v = f.eval(x);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    out.exact = g == 1;
  }
  out.value = g;
  return out;
}

SieveModulus sieve_modulus(const IntPoly& f, std::uint64_t budget) {
  FixedDivisor fd = fixed_divisor(f);
  SieveModulus sm;
  sm.D = fd.value;
  sm.W = 1;
  std::size_t n = f.nvars();
  sm.z.assign(n, Int(0));
  if (sm.D == 1) return sm;

  Factorization fac = factor(sm.D);
  if (!fac.complete()) throw Error(Errc::incomplete_factorization, "cannot factor fixed divisor");

  std::vector<std::vector<Int>> residues(n);
  std::vector<Int> moduli;
  for (const auto& [p, e] : fac.factors) {
    Int q = int_pow(p, e + 1);
    std::vector<Int> x(n, Int(0));
    std::uint64_t steps = 0;
    bool found = false;
    for (;;) {
      if (f.eval_mod(x, q) != 0) {
        found = true;
        break;
      }
      if (++steps > budget) throw Error(Errc::budget_exceeded, "sieve modulus residue scan");
      std::size_t k = 0;
      while (k < n) {
        x[k] += 1;
        if (x[k] < q) break;
        x[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
    if (!found) {
      throw Error(Errc::search_exhausted,
                  "no residue mod " + q.get_str() + " avoids the fixed divisor");
    }
    for (std::size_t i = 0; i < n; ++i) residues[i].push_back(x[i]);
    moduli.push_back(q);
    sm.W *= q;
  }
  for (std::size_t i = 0; i < n; ++i) sm.z[i] = crt(residues[i], moduli);

  std::mt19937_64 rng(0x5EEDULL);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  std::vector<Int> x(n);
  for (int t = 0; t < 32; ++t) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = sm.z[i] + sm.W * to_int(static_cast<std::int64_t>(dist(rng)));
    Int v = f.eval(x);
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), sm.D.get_mpz_t());
    if (int_gcd(v, sm.W) != 1) throw Error(Errc::search_exhausted, "sieve residue failed check");
  }
  return sm;
}

// ---------------------------------------------------------------------------
// Zero counting

ZeroCount count_zeros_mod(const IntPoly& f, const Int& d, std::uint64_t budget) {
  if (d < 2) throw Error(Errc::invalid_argument, "modulus must be at least 2");
  std::size_t n = f.nvars();
  long double cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= d.get_d();
  if (cells > static_cast<long double>(budget)) {
    throw Error(Errc::budget_exceeded,
                d.get_str() + "^" + std::to_string(n) + " exceeds the enumeration budget");
  }
  const std::uint64_t m = to_u64(d);
  struct Term {
    std::vector<unsigned> e;
    std::uint64_t c;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : f.terms()) terms.push_back({e, to_u64(mod_floor(c, d))});
  // pw[i][x][k] = x^k mod d
  std::vector<std::vector<std::vector<std::uint64_t>>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned deg = f.degree_in(i);
    pw[i].assign(m, std::vector<std::uint64_t>(deg + 1, 1));
    for (std::uint64_t x = 0; x < m; ++x)
      for (unsigned k = 1; k <= deg; ++k)
        pw[i][x][k] = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(pw[i][x][k - 1]) * x % m);
  }
  std::vector<std::uint64_t> x(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    std::uint64_t s = 0;
    for (const auto& t : terms) {
      unsigned __int128 v = t.c;
      for (std::size_t i = 0; i < n; ++i)
        if (t.e[i]) v = v * pw[i][x[i]][t.e[i]] % m;
      s = static_cast<std::uint64_t>((s + v) % m);
    }
    if (s == 0) ++count;
    std::size_t k = 0;
    while (k < n && ++x[k] == m) x[k++] = 0;
    if (k == n) break;
  }
  ZeroCount zc;
  zc.count = to_int(count);
  zc.omega0 = Rational(zc.count, int_pow(d, static_cast<unsigned long>(n - 1)));
  zc.omega0.canonicalize();
  return zc;
}

namespace {

bool univariate_squarefree(const IntPoly& g) {
  if (g.total_degree() <= 1) return true;
  return discriminant(g) != 0;
}

}  // namespace

bool has_repeated_factor(const IntPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "repeated-factor test on zero");
  std::size_t n = f.nvars();
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (std::size_t var = 0; var < n; ++var) {
    unsigned d = f.degree_in(var);
    if (d < 2) continue;
    bool certified = false;
    for (int trial = 0; trial < 8 && !certified; ++trial) {
      std::vector<IntPoly> subs;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == var) subs.push_back(IntPoly::variable(1, 0));
        else subs.push_back(IntPoly::constant(1, to_int(static_cast<std::int64_t>(dist(rng)))));
      }
      IntPoly g = f.compose(subs);
      if (g.degree_in(0) != d) continue;
      certified = univariate_squarefree(g);
    }
    if (!certified) return true;
  }
  // A factor P^2 gives degree >= 2 in every variable P involves.
  return false;
}

ZeroCountBound zero_count_bound(const IntPoly& f, const Int& p, std::uint64_t budget) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "zero polynomial");
  if (content(f) != 1) throw Error(Errc::not_primitive, "polynomial is not primitive");
  ZeroCountBound r;
  r.count_p = count_zeros_mod(f, p, budget).count;
  r.bound_p = Int(f.total_degree()) * int_pow(p, static_cast<unsigned long>(f.nvars() - 1));
  r.within_bound = r.count_p <= r.bound_p;
  return r;
}

SquareModulusCount square_modulus_count(const IntPoly& f, const Int& p, std::uint64_t budget) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "zero polynomial");
  if (f.total_degree() == 0) throw Error(Errc::hypothesis_violated, "degree must be positive");
  if (has_repeated_factor(f)) throw Error(Errc::repeated_factor, "polynomial has a repeated factor");
  SquareModulusCount r;
  r.count_p2 = count_zeros_mod(f, Int(p * p), budget).count;
  r.ratio = Rational(r.count_p2, int_pow(p, 2 * static_cast<unsigned long>(f.nvars() - 1)));
  r.ratio.canonicalize();
  return r;
}

BoundChecks bound_checks(const IntPoly& f, const Int& p, std::uint64_t budget) {
  return {zero_count_bound(f, p, budget), square_modulus_count(f, p, budget)};
}

IntPoly squarefree_product(const IntPoly& f, const SuppliedFactorization& fac) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "zero polynomial");
  IntPoly prod = IntPoly::constant(f.nvars(), fac.c);
  IntPoly distinct = IntPoly::constant(f.nvars(), Int(1));
  for (const auto& [g, e] : fac.factors) {
    if (g.nvars() != f.nvars()) throw Error(Errc::arity_mismatch, "factor arity");
    if (g.is_zero() || content(g) != 1)
      throw Error(Errc::not_primitive, "supplied factor is not primitive");
    if (e == 0) throw Error(Errc::invalid_argument, "factor exponent must be positive");
    prod *= g.pow(e);
    distinct *= g;
  }
  if (!(prod == f)) throw Error(Errc::factorization_mismatch, "product differs from polynomial");
  return distinct;
}

}  // namespace satlab
