#include "satlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "satlab/constants.hpp"
#include "satlab/errors.hpp"

namespace satlab {

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested;
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SATLAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  std::size_t t = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (t == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    pool.emplace_back([&, i] {
      try {
        body(i * n / t, (i + 1) * n / t, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------

BoxSpec BoxSpec::cube(std::size_t dim, const Int& lo, const Int& hi, const Int& step) {
  BoxSpec b;
  b.intervals.assign(dim, {Rational(lo), Rational(hi)});
  b.step = step;
  return b;
}

std::vector<Int> BoxSpec::axis(std::size_t i) const {
  if (i >= intervals.size()) throw Error(Errc::arity_mismatch, "box has too few coordinates");
  if (scale <= 0 || step <= 0) throw Error(Errc::invalid_argument, "scale and step must be positive");
  Rational lo = intervals[i].first * scale, hi = intervals[i].second * scale;
  Int first, last;
  mpz_cdiv_q(first.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(last.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  std::vector<Int> out;
  for (Int v = first; v <= last; v += step) out.push_back(v);
  if (out.empty()) throw Error(Errc::empty_box, "coordinate " + std::to_string(i) + " is empty");
  return out;
}

bool SkewBookkeeping::holds() const {
  if (phi.is_infinite() || phi_prime.is_infinite() || uv.is_infinite()) return false;
  return phi.value() + uv.value() == 2 * phi_prime.value();
}

bool record_less(const SearchRecord& a, const SearchRecord& b) {
  if (a.omega != b.omega) return a.omega < b.omega;
  if (a.height != b.height) return a.height < b.height;
  if (a.point.coords() != b.point.coords()) return a.point.coords() < b.point.coords();
  if (a.fiber != b.fiber) return a.fiber < b.fiber;
  return a.params < b.params;
}

ScanStats& ScanStats::operator+=(const ScanStats& o) {
  visited += o.visited;
  degenerate += o.degenerate;
  unfactored += o.unfactored;
  over_budget += o.over_budget;
  return *this;
}

namespace {

constexpr std::uint64_t kSecondSeed = 0x9E3779B97F4A7C15ULL;

bool is_incomplete(const Error& e) { return e.code() == Errc::incomplete_factorization; }

class RecordBuilder {
 public:
  RecordBuilder(const VarietyMap& map, const ScanOptions& opts) : map_(map), opts_(opts) {
    if (auto* sk = std::get_if<SkewFiberMap>(&map_)) {
      ff_ = fiber_forms(sk->model, sk->s, sk->t);
      surface_ = surface_poly(sk->model);
    } else if (auto* tf = std::get_if<ThreefoldFiberMap>(&map_)) {
      D_ = threefold_sieve_product(tf->fiber);
      surface_ = fermat_cubic(5);
    } else {
      surface_ = fermat_cubic(4);
    }
  }

  std::size_t arity() const { return std::holds_alternative<ElkiesMap>(map_) ? 3 : 2; }

  /// Raw coordinates, empty when the parameters are degenerate.
  std::vector<Int> coordinates(std::span<const Int> p) const {
    if (std::all_of(p.begin(), p.end(), [](const Int& v) { return v == 0; })) return {};
    if (std::holds_alternative<ElkiesMap>(map_)) {
      auto x = elkies_map(p);
      return {x.begin(), x.end()};
    }
    if (ff_) {
      auto pt = fiber_point(*ff_, p[0], p[1]);
      if (pt.degenerate) return {};
      return {pt.x.begin(), pt.x.end()};
    }
    const auto& fib = std::get<ThreefoldFiberMap>(map_).fiber;
    auto pt = threefold_point(fib, p[0], p[1]);
    return {pt.x.begin(), pt.x.end()};
  }

  std::optional<SearchRecord> build(std::span<const Int> p, ScanStats& st) const {
    ++st.visited;
    if (gcd_all(p) > 1) return std::nullopt;  // projective duplicate of p / gcd
    std::vector<Int> x = coordinates(p);
    if (x.empty() || std::any_of(x.begin(), x.end(), [](const Int& v) { return v == 0; })) {
      ++st.degenerate;
      return std::nullopt;
    }
    if (surface_.eval(x) != 0) throw Error(Errc::invalid_argument, "point off the variety");
    ProjectivePoint pt = to_primitive(x);

    Omega omega;
    std::optional<SkewBookkeeping> skew;
    std::optional<bool> coprime;
    try {
      omega = omega_projective(pt, opts_.factor);
      if (opts_.verify_twice) {
        FactorOptions again = opts_.factor;
        again.seed ^= kSecondSeed;
        if (omega_projective(pt, again) != omega) {
          throw Error(Errc::factorization_mismatch, "two factorization passes disagree");
        }
      }
      if (opts_.omega_budget && omega > Omega(*opts_.omega_budget)) {
        ++st.over_budget;
        return std::nullopt;
      }
      if (ff_) {
        const Int& u = p[0];
        const Int& v = p[1];
        Int G = ff_->b * u + ff_->e * v;
        Int H = ff_->a * u * u + ff_->d * u * v + ff_->f * v * v;
        Int uv = u * v;
        Int phi_prime = uv * G * H;
        Int phi = phi_prime * G * H;
        skew = SkewBookkeeping{big_omega(phi, opts_.factor), big_omega(phi_prime, opts_.factor),
                               big_omega(uv, opts_.factor)};
      }
    } catch (const Error& e) {
      if (!is_incomplete(e)) throw;
      ++st.unfactored;
      return std::nullopt;
    }

    std::vector<Int> fiber;
    if (auto* sk = std::get_if<SkewFiberMap>(&map_)) {
      fiber = {sk->s, sk->t};
    } else if (auto* tf = std::get_if<ThreefoldFiberMap>(&map_)) {
      const auto& f = tf->fiber;
      fiber = {f.p1, f.p2, f.p3};
      Int prod = 1;
      for (const Int& c : x) prod *= c;
      if (prod % 7 != 0) throw Error(Errc::non_integral_f, "7 does not divide the coordinate product");
      auto tp = threefold_point(f, p[0], p[1]);
      coprime = int_gcd(tp.F, D_) == 1;
    }
    Int h = pt.height();
    return SearchRecord{std::move(pt), omega, std::move(fiber), {p.begin(), p.end()}, h, skew,
                        coprime};
  }

 private:
  VarietyMap map_;
  ScanOptions opts_;
  std::optional<FiberForms> ff_;
  IntPoly surface_;
  Int D_;
};

ScanResult run_points(const RecordBuilder& rb, const std::vector<std::vector<Int>>& points,
                      unsigned threads) {
  unsigned t = resolve_threads(threads);
  std::vector<ScanResult> parts(std::max<std::size_t>(1, std::min<std::size_t>(t, points.size())));
  parallel_chunks(points.size(), t, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    ScanResult& r = parts[chunk];
    for (std::size_t i = b; i < e; ++i) {
      if (auto rec = rb.build(points[i], r.stats)) r.records.push_back(std::move(*rec));
    }
  });
  ScanResult out;
  for (auto& p : parts) {
    out.stats += p.stats;
    for (auto& r : p.records) out.records.push_back(std::move(r));
  }
  std::sort(out.records.begin(), out.records.end(), record_less);
  return out;
}

std::vector<std::vector<Int>> box_points(const BoxSpec& box, std::size_t dim) {
  if (box.intervals.size() != dim) {
    throw Error(Errc::arity_mismatch, "box needs " + std::to_string(dim) + " coordinates");
  }
  std::vector<std::vector<Int>> axes;
  for (std::size_t i = 0; i < dim; ++i) axes.push_back(box.axis(i));
  std::vector<std::vector<Int>> out;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    std::vector<Int> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = axes[i][idx[i]];
    out.push_back(std::move(p));
    std::size_t k = dim;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

}  // namespace

ScanResult scan_map(const VarietyMap& map, const BoxSpec& box, const ScanOptions& opts) {
  RecordBuilder rb(map, opts);
  return run_points(rb, box_points(box, rb.arity()), opts.threads);
}

// ---------------------------------------------------------------------------
// Approximation

Rational normalized_distance(std::span<const Int> x, std::span<const double> xi) {
  if (x.size() != xi.size()) throw Error(Errc::arity_mismatch, "dimension mismatch");
  std::vector<Rational> q;
  Rational qmax = 0;
  for (double d : xi) {
    q.push_back(exact_rational(d));
    qmax = std::max(qmax, Rational(abs(q.back())));
  }
  Int xmax = 0;
  for (const Int& v : x) xmax = std::max(xmax, Int(abs(v)));
  if (qmax == 0 || xmax == 0) throw Error(Errc::zero_vector, "cannot normalize the zero vector");
  Rational best;
  for (int sign : {1, -1}) {
    Rational worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational diff = Rational(x[i], xmax) - sign * q[i] / qmax;
      diff.canonicalize();
      worst = std::max(worst, Rational(abs(diff)));
    }
    if (sign == 1 || worst < best) best = worst;
  }
  return best;
}

namespace {

using LD = long double;

std::vector<LD> normalize_ld(const std::vector<LD>& v) {
  LD m = 0;
  for (LD c : v) m = std::max(m, std::fabs(c));
  std::vector<LD> out(v);
  if (m > 0)
    for (LD& c : out) c /= m;
  return out;
}

LD eval_ld(const IntPoly& f, const std::vector<LD>& y) {
  LD s = 0;
  for (const auto& [e, c] : f.terms()) {
    LD t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(y[i], static_cast<int>(e[i]));
    s += t;
  }
  return s;
}

LD signed_distance_ld(const std::vector<LD>& x, const std::vector<LD>& target) {
  auto nx = normalize_ld(x);
  LD best = 1e300L;
  for (int sign : {1, -1}) {
    LD w = 0;
    for (std::size_t i = 0; i < nx.size(); ++i) w = std::max(w, std::fabs(nx[i] - sign * target[i]));
    best = std::min(best, w);
  }
  return best;
}

LD elkies_objective(const std::vector<LD>& y, const std::vector<LD>& target) {
  LD n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  if (n == 0) return 1e300L;
  std::vector<LD> u{y[0] / n, y[1] / n, y[2] / n};
  std::vector<LD> x;
  for (const auto& f : elkies_forms()) x.push_back(eval_ld(f, u));
  if (std::all_of(x.begin(), x.end(), [](LD c) { return c == 0; })) return 1e300L;
  return signed_distance_ld(x, target);
}

std::vector<LD> nelder_mead(const std::function<LD(const std::vector<LD>&)>& f,
                            std::vector<LD> start, LD step, int iters) {
  const std::size_t n = start.size();
  std::vector<std::vector<LD>> s{start};
  for (std::size_t i = 0; i < n; ++i) {
    auto p = start;
    p[i] += step;
    s.push_back(p);
  }
  std::vector<LD> fs;
  for (auto& p : s) fs.push_back(f(p));
  for (int it = 0; it < iters; ++it) {
    std::vector<std::size_t> ord(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    std::vector<std::vector<LD>> s2;
    std::vector<LD> f2;
    for (auto i : ord) {
      s2.push_back(s[i]);
      f2.push_back(fs[i]);
    }
    s = std::move(s2);
    fs = std::move(f2);
    std::vector<LD> c(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / n;
    auto along = [&](LD t) {
      std::vector<LD> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = c[k] + t * (s[n][k] - c[k]);
      return p;
    };
    auto r = along(-1);
    LD fr = f(r);
    if (fr < fs[0]) {
      auto e = along(-2);
      LD fe = f(e);
      if (fe < fr) {
        s[n] = e;
        fs[n] = fe;
      } else {
        s[n] = r;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      s[n] = r;
      fs[n] = fr;
    } else {
      auto k = along(0.5L);
      LD fk = f(k);
      if (fk < fs[n]) {
        s[n] = k;
        fs[n] = fk;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) s[i][j] = s[0][j] + 0.5L * (s[i][j] - s[0][j]);
          fs[i] = f(s[i]);
        }
      }
    }
  }
  auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
  return s[best];
}

std::vector<LD> elkies_preimage(const std::vector<LD>& target) {
  constexpr int kSamples = 6000;
  const LD golden = std::numbers::pi_v<LD> * (3 - std::sqrt(5.0L));
  std::vector<std::pair<LD, std::vector<LD>>> seeds;
  for (int i = 0; i < kSamples; ++i) {
    LD z = 1 - 2 * (i + 0.5L) / kSamples;
    LD r = std::sqrt(1 - z * z);
    std::vector<LD> y{r * std::cos(golden * i), r * std::sin(golden * i), z};
    seeds.push_back({elkies_objective(y, target), y});
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 8, seeds.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  auto obj = [&](const std::vector<LD>& y) { return elkies_objective(y, target); };
  std::vector<LD> best = seeds[0].second;
  LD fbest = seeds[0].first;
  for (int i = 0; i < 8; ++i) {
    auto y = nelder_mead(obj, seeds[i].second, 0.02L, 600);
    LD fy = obj(y);
    if (fy < fbest) {
      fbest = fy;
      best = y;
    }
  }
  LD n = std::sqrt(best[0] * best[0] + best[1] * best[1] + best[2] * best[2]);
  for (LD& c : best) c /= n;
  return best;
}

Int round_ld(LD v) { return to_int(static_cast<std::int64_t>(std::llround(v))); }

}  // namespace

ApproxResult approximate_point(const ApproxTarget& target, double eps,
                               const std::vector<Int>& schedule, const ScanOptions& opts) {
  const bool elkies = std::holds_alternative<ElkiesMap>(target.map);
  if (!elkies && !std::holds_alternative<SkewFiberMap>(target.map)) {
    throw Error(Errc::invalid_argument, "approximation supports the Elkies and skew maps");
  }
  if (target.xi.size() != 4) throw Error(Errc::arity_mismatch, "target needs four coordinates");
  if (std::all_of(target.xi.begin(), target.xi.end(), [](double v) { return v == 0; })) {
    throw Error(Errc::zero_vector, "target is the zero vector");
  }
  std::vector<LD> nxi = normalize_ld({target.xi.begin(), target.xi.end()});
  const Rational eps_q = exact_rational(eps);

  ApproxResult out;
  std::optional<Rational> near;
  auto consider = [&](SearchRecord rec) {
    ++out.candidates;
    Rational d = normalized_distance(rec.point.coords(), target.xi);
    if (eps > 0 && d < eps_q) {
      if (!out.record || record_less(rec, *out.record)) {
        out.record = std::move(rec);
        out.distance = d;
      }
    } else if (!near || d < *near) {
      near = d;
      out.near_miss = std::move(rec);
    }
  };

  ScanStats st;
  if (elkies) {
    RecordBuilder rb(ElkiesMap{}, opts);
    std::vector<LD> y = elkies_preimage(nxi);
    for (const Int& B : schedule) {
      LD b = B.get_d();
      std::set<std::vector<Int>> seen;
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
          for (int k = -1; k <= 1; ++k) {
            std::vector<Int> p{round_ld(b * y[0]) + i, round_ld(b * y[1]) + j,
                               round_ld(b * y[2]) + k};
            if (!seen.insert(p).second) continue;
            if (auto rec = rb.build(p, st)) consider(std::move(*rec));
          }
    }
  } else {
    const auto& model = std::get<SkewFiberMap>(target.map).model;
    auto dir = [](LD a, LD b) {
      LD m = std::max(std::fabs(a), std::fabs(b));
      return std::pair<LD, LD>{a / m, b / m};
    };
    if (nxi[0] == 0 && nxi[1] == 0) throw Error(Errc::invalid_argument, "target lies on x0 = x1 = 0");
    if (nxi[2] == 0 && nxi[3] == 0) throw Error(Errc::invalid_argument, "target lies on x2 = x3 = 0");
    auto [s0, t0] = dir(nxi[0], nxi[1]);
    auto [u0, v0] = dir(nxi[2], nxi[3]);
    for (const Int& B : schedule) {
      LD b = B.get_d();
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
          Int s = round_ld(b * s0) + i, t = round_ld(b * t0) + j;
          if (int_gcd(s, t) != 1) continue;
          RecordBuilder rb(SkewFiberMap{model, s, t}, opts);
          for (int k = -1; k <= 1; ++k)
            for (int l = -1; l <= 1; ++l) {
              std::vector<Int> p{round_ld(b * u0) + k, round_ld(b * v0) + l};
              if (auto rec = rb.build(p, st)) consider(std::move(*rec));
            }
        }
    }
  }
  if (!out.record && near) out.distance = *near;
  return out;
}

// ---------------------------------------------------------------------------
// Linear forms

namespace {

void validate_forms(const std::vector<LinearForm>& forms) {
  if (forms.empty() || forms.size() > 5) {
    throw Error(Errc::invalid_argument, "between one and five linear forms are supported");
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i][0] == 0 && forms[i][1] == 0) {
      throw Error(Errc::invalid_argument, "form " + std::to_string(i) + " is zero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (forms[i][0] * forms[j][1] == forms[i][1] * forms[j][0]) {
        throw Error(Errc::invalid_argument,
                    "forms " + std::to_string(j) + " and " + std::to_string(i) + " are proportional");
      }
    }
  }
}

std::vector<unsigned long> residues_on_axis(const std::vector<Int>& axis, unsigned long p) {
  std::set<unsigned long> r;
  for (const Int& v : axis) {
    r.insert(mod_floor(v, Int(p)).get_ui());
    if (r.size() == p) break;
  }
  return {r.begin(), r.end()};
}

}  // namespace

std::optional<unsigned> local_obstruction(const std::vector<LinearForm>& forms,
                                          const BoxSpec& box) {
  validate_forms(forms);
  auto us = box.axis(0), vs = box.axis(1);
  for (std::uint32_t p : small_primes()) {
    if (p > 100) break;
    auto ru = residues_on_axis(us, p), rv = residues_on_axis(vs, p);
    bool free = false;
    for (auto u : ru) {
      for (auto v : rv) {
        bool ok = true;
        for (const auto& L : forms) {
          if (mod_floor(L[0] * u + L[1] * v, Int(p)) == 0) {
            ok = false;
            break;
          }
        }
        if (ok) {
          free = true;
          break;
        }
      }
      if (free) break;
    }
    if (!free) return p;
  }
  return std::nullopt;
}

std::vector<std::array<Int, 2>> prime_forms_search(const std::vector<LinearForm>& forms,
                                                   const BoxSpec& box,
                                                   const PrimeFormsOptions& opts) {
  validate_forms(forms);
  if (!opts.signs.empty() && opts.signs.size() != forms.size()) {
    throw Error(Errc::arity_mismatch, "one sign per form");
  }
  if (box.intervals.size() != 2) throw Error(Errc::arity_mismatch, "box must be two-dimensional");
  if (opts.enforce_local_condition) {
    if (auto p = local_obstruction(forms, box)) {
      throw Error(Errc::local_obstruction,
                  "p=" + std::to_string(*p) + " divides the product of the forms on the whole box");
    }
  }
  auto us = box.axis(0), vs = box.axis(1);
  unsigned t = resolve_threads(opts.threads);
  std::vector<std::vector<std::array<Int, 2>>> parts(
      std::max<std::size_t>(1, std::min<std::size_t>(t, us.size())));
  parallel_chunks(us.size(), t, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    for (std::size_t i = b; i < e; ++i) {
      for (const Int& v : vs) {
        bool ok = true;
        for (std::size_t k = 0; k < forms.size() && ok; ++k) {
          Int val = forms[k][0] * us[i] + forms[k][1] * v;
          int want = opts.signs.empty() ? 0 : opts.signs[k];
          if (want != 0 && sgn(val) != want) ok = false;
          else ok = is_prime(abs(val));
        }
        if (ok) parts[chunk].push_back({us[i], v});
      }
    }
  });
  std::vector<std::array<Int, 2>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---------------------------------------------------------------------------
// Reports

DensitySummary density_report(const std::vector<SearchRecord>& records) {
  DensitySummary s;
  s.records = records.size();
  std::set<std::vector<Int>> points, fibers;
  for (const auto& r : records) {
    ++s.histogram[r.omega];
    if (!s.min_omega || r.omega < *s.min_omega) s.min_omega = r.omega;
    points.insert(r.point.coords());
    if (!r.fiber.empty()) fibers.insert(r.fiber);
  }
  s.distinct_points = points.size();
  s.distinct_fibers = fibers.size();
  return s;
}

namespace {

void finish(SearchReport& r) {
  std::sort(r.records.begin(), r.records.end(), record_less);
  r.summary = density_report(r.records);
  for (const auto& rec : r.records) {
    if (rec.fiber.empty()) continue;
    std::string key = join(rec.fiber);
    auto it = r.fiber_min.find(key);
    if (it == r.fiber_min.end() || rec.omega < it->second) r.fiber_min[key] = rec.omega;
  }
}

void absorb(SearchReport& r, ScanResult&& s) {
  r.stats += s.stats;
  for (auto& rec : s.records) r.records.push_back(std::move(rec));
}

std::string fiber_key(const Int& s, const Int& t) { return s.get_str() + "," + t.get_str(); }

}  // namespace

SplitForms assemble_split_forms(const SkewCubicModel& m, const Int& s, const Int& t) {
  auto sf = split_fiber(m, s, t);
  if (!sf) throw Error(Errc::invalid_argument, "fiber " + fiber_key(s, t) + " does not split");
  FiberForms ff = fiber_forms(m, s, t);
  auto coeffs = [](const IntPoly& L) { return LinearForm{L.coefficient({1, 0}), L.coefficient({0, 1})}; };
  SplitForms out;
  out.fiber = {s, t};
  out.forms = {LinearForm{Int(1), Int(0)}, LinearForm{Int(0), Int(1)}, LinearForm{ff.b, ff.e},
               coeffs(sf->L4), coeffs(sf->L5)};
  IntPoly prod = IntPoly::constant(2, Int(1));
  for (const auto& L : out.forms) prod *= linear_form(L);
  out.product_identity = prod == ff.Phi_prime;
  return out;
}

SearchReport skew_surface_search(const SkewCubicModel& m, const SkewSearchOptions& opts) {
  SearchReport rep;
  rep.kind = "skew";
  rep.thresholds = {{"skew_split_fibers", kSkewSplitThreshold},
                    {"skew_stated", kSkewStatedThreshold},
                    {"skew_accounted", kSkewAccountedThreshold}};
  auto gates = check_local_conditions(m, std::nullopt, opts.scan.factor);
  if (!gates.all_ok()) {
    std::string failed;
    for (const auto& c : gates.checks)
      if (!c.ok) failed += (failed.empty() ? "" : ", ") + c.name;
    throw Error(Errc::condition_violated, "model gates failed: " + failed);
  }
  rep.facts["strategy"] = opts.strategy == FiberStrategy::split ? "split" : "admissible";
  rep.facts["W0"] = gates.resultants.W0.get_str();
  rep.facts["W1"] = gates.resultants.W1.get_str();
  if (opts.fiber_budget == 0) {
    rep.facts["fibers_visited"] = "0";
    finish(rep);
    return rep;
  }

  BoxSpec uv;
  uv.intervals = {{Rational(1), Rational(opts.uv_bound)},
                  {Rational(-opts.uv_bound), Rational(opts.uv_bound)}};
  std::size_t visited = 0, obstructed = 0, gated = 0;

  if (opts.strategy == FiberStrategy::split) {
    std::vector<std::array<Int, 2>> fibers;
    if (opts.fiber) {
      fibers.push_back(*opts.fiber);
    } else {
      for (auto& sf : find_split_fibers(m, -opts.fiber_bound, opts.fiber_bound, -opts.fiber_bound,
                                        opts.fiber_bound))
        fibers.push_back({sf.s, sf.t});
      std::stable_sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) {
        Int ha = std::max(Int(abs(a[0])), Int(abs(a[1])));
        Int hb = std::max(Int(abs(b[0])), Int(abs(b[1])));
        if (ha != hb) return ha < hb;
        return a < b;
      });
    }
    rep.facts["split_fibers_found"] = std::to_string(fibers.size());
    for (const auto& f : fibers) {
      if (visited == opts.fiber_budget) break;
      ++visited;
      SplitForms sf = assemble_split_forms(m, f[0], f[1]);
      if (!sf.product_identity) throw Error(Errc::invalid_argument, "split product identity fails");
      std::vector<LinearForm> forms(sf.forms.begin(), sf.forms.end());
      std::vector<std::array<Int, 2>> pairs;
      try {
        PrimeFormsOptions po;
        po.threads = opts.scan.threads;
        pairs = prime_forms_search(forms, uv, po);
      } catch (const Error& e) {
        if (e.code() != Errc::local_obstruction || opts.fiber) throw;
        ++obstructed;
        continue;
      }
      RecordBuilder rb(SkewFiberMap{m, f[0], f[1]}, opts.scan);
      std::vector<std::vector<Int>> pts;
      for (auto& p : pairs) pts.push_back({p[0], p[1]});
      absorb(rep, run_points(rb, pts, opts.scan.threads));
    }
  } else {
    AdmissibleResidues ar = admissible_residues(m, opts.scan.factor);
    rep.facts["W"] = ar.W.get_str();
    rep.facts["residue_s"] = ar.s0.get_str();
    rep.facts["residue_t"] = ar.t0.get_str();
    std::vector<Int> coords;
    for (const Int& p : primes_in_ap_between(Int(1), Int(0), Int(2), opts.fiber_bound)) {
      for (const Int& c : {p, Int(-p)})
        if (mod_floor(c - ar.s0, ar.W) == 0 || mod_floor(c - ar.t0, ar.W) == 0) coords.push_back(c);
    }
    std::vector<std::array<Int, 2>> fibers;
    for (const Int& s : coords) {
      if (mod_floor(s - ar.s0, ar.W) != 0) continue;
      for (const Int& t : coords) {
        if (mod_floor(t - ar.t0, ar.W) != 0) continue;
        if (int_gcd(s, t) == 1) fibers.push_back({s, t});
      }
    }
    std::sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) {
      Int ha = std::max(Int(abs(a[0])), Int(abs(a[1])));
      Int hb = std::max(Int(abs(b[0])), Int(abs(b[1])));
      if (ha != hb) return ha < hb;
      return a < b;
    });
    for (const auto& f : fibers) {
      if (visited == opts.fiber_budget) break;
      auto fc = check_local_conditions(m, f, opts.scan.factor);
      if (!fc.all_ok()) {
        ++gated;
        continue;
      }
      ++visited;
      absorb(rep, scan_map(SkewFiberMap{m, f[0], f[1]}, uv, opts.scan));
    }
  }
  rep.facts["fibers_visited"] = std::to_string(visited);
  rep.facts["fibers_obstructed"] = std::to_string(obstructed);
  rep.facts["fibers_failing_gates"] = std::to_string(gated);
  finish(rep);
  std::size_t ok = 0;
  for (const auto& r : rep.records) ok += r.skew && r.skew->holds();
  rep.facts["bookkeeping_holds"] = std::to_string(ok);
  return rep;
}

SearchReport threefold_search(const ThreefoldSearchOptions& opts) {
  SearchReport rep;
  rep.kind = "threefold";
  rep.thresholds = {{"threefold", kFermatThreefoldThreshold}};
  if (opts.triple_budget == 0 || opts.uv_steps == 0) {
    throw Error(Errc::invalid_argument, "budgets must be positive");
  }
  std::vector<std::array<Int, 3>> triples;
  if (opts.target) {
    const auto& xi = *opts.target;
    LD z0 = xi[0], z1 = (xi[1] + xi[3]) / 2, z2 = (xi[2] + xi[4]) / 2;
    LD zn = std::sqrt(z0 * z0 + z1 * z1 + z2 * z2);
    if (zn == 0) throw Error(Errc::zero_vector, "target has ζ0 = ζ1 = ζ2 = 0");
    auto pool = admissible_triples(64, opts.triple_pool);
    std::vector<std::pair<LD, std::size_t>> scored;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      LD a = pool[i][0].get_d(), b = -std::pow(pool[i][1].get_d(), 2), c = std::pow(pool[i][2].get_d(), 2);
      LD n = std::sqrt(a * a + b * b + c * c);
      LD d = std::sqrt(std::pow(a / n - z0 / zn, 2) + std::pow(b / n - z1 / zn, 2) +
                       std::pow(c / n - z2 / zn, 2));
      scored.push_back({d, i});
    }
    std::stable_sort(scored.begin(), scored.end());
    for (std::size_t i = 0; i < scored.size() && triples.size() < opts.triple_budget; ++i)
      triples.push_back(pool[scored[i].second]);
  } else {
    triples = admissible_triples(opts.triple_budget, opts.triple_pool);
  }
  if (triples.empty()) throw Error(Errc::no_admissible_triples, "no admissible triple in the pool");

  auto z = threefold_residue_lift();
  rep.facts["residue_u"] = z[0].get_str();
  rep.facts["residue_v"] = z[1].get_str();
  rep.facts["triples"] = std::to_string(triples.size());
  BoxSpec box;
  const Int span = Int(210) * Int(static_cast<unsigned long>(opts.uv_steps - 1));
  box.intervals = {{Rational(z[0]), Rational(z[0] + span)}, {Rational(z[1]), Rational(z[1] + span)}};
  box.step = 210;
  for (const auto& t : triples) {
    ThreefoldFiber fib = threefold_fiber(t[0], t[1], t[2]);
    absorb(rep, scan_map(ThreefoldFiberMap{fib}, box, opts.scan));
  }
  finish(rep);
  std::size_t coprime = 0;
  for (const auto& r : rep.records) coprime += r.coprime_to_D.value_or(false);
  rep.facts["coprime_to_D"] = std::to_string(coprime);
  return rep;
}

SearchReport elkies_search(const BoxSpec& box, const ScanOptions& opts) {
  SearchReport rep;
  rep.kind = "elkies";
  absorb(rep, scan_map(ElkiesMap{}, box, opts));
  finish(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

std::string records_tsv(const std::vector<SearchRecord>& records) {
  std::ostringstream os;
  os << "# satlab-records v1\n";
  os << "coords\tomega\theight\tfiber\tparams\tchecks\n";
  for (const auto& r : records) {
    os << join(r.point.coords()) << '\t' << r.omega.to_string() << '\t' << r.height << '\t'
       << (r.fiber.empty() ? "-" : join(r.fiber)) << '\t' << join(r.params) << '\t';
    if (r.skew) {
      os << "phi=" << r.skew->phi.to_string() << ";phi_prime=" << r.skew->phi_prime.to_string()
         << ";uv=" << r.skew->uv.to_string();
    } else if (r.coprime_to_D) {
      os << "coprime_D=" << (*r.coprime_to_D ? 1 : 0);
    } else {
      os << '-';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

nlohmann::json omega_json(const Omega& o) {
  if (o.is_infinite()) return "inf";
  return o.value();
}

nlohmann::json strings(const std::vector<Int>& v) {
  auto a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

}  // namespace

std::string report_json(const SearchReport& r) {
  using nlohmann::json;
  json j;
  j["format"] = "satlab-report v1";
  j["kind"] = r.kind;
  j["facts"] = json::object();
  for (const auto& [k, v] : r.facts) j["facts"][k] = v;
  j["stats"] = {{"visited", r.stats.visited},
                {"degenerate", r.stats.degenerate},
                {"unfactored", r.stats.unfactored},
                {"over_budget", r.stats.over_budget}};
  json hist = json::array();
  for (const auto& [o, n] : r.summary.histogram) hist.push_back({omega_json(o), n});
  j["summary"] = {{"records", r.summary.records},
                  {"histogram", hist},
                  {"min_omega", r.summary.min_omega ? omega_json(*r.summary.min_omega) : json()},
                  {"distinct_points", r.summary.distinct_points},
                  {"distinct_fibers", r.summary.distinct_fibers}};
  json th = json::array();
  for (const auto& t : r.thresholds) {
    json e = {{"name", t.name}, {"value", t.value}};
    if (r.summary.min_omega) e["min_omega_at_most_value"] = *r.summary.min_omega <= Omega(t.value);
    th.push_back(e);
  }
  j["thresholds"] = th;
  j["fiber_min_omega"] = json::object();
  for (const auto& [k, o] : r.fiber_min) j["fiber_min_omega"][k] = omega_json(o);
  json recs = json::array();
  for (const auto& rec : r.records) {
    json e = {{"coords", strings(rec.point.coords())},
              {"omega", omega_json(rec.omega)},
              {"height", rec.height.get_str()},
              {"fiber", strings(rec.fiber)},
              {"params", strings(rec.params)}};
    if (rec.skew) {
      e["bookkeeping"] = {{"phi", omega_json(rec.skew->phi)},
                          {"phi_prime", omega_json(rec.skew->phi_prime)},
                          {"uv", omega_json(rec.skew->uv)},
                          {"holds", rec.skew->holds()}};
    }
    if (rec.coprime_to_D) e["coprime_to_D"] = *rec.coprime_to_D;
    recs.push_back(e);
  }
  j["records"] = recs;
  return j.dump(2) + "\n";
}

std::string report_text(const SearchReport& r) {
  std::ostringstream os;
  os << "[" << r.kind << "] records=" << r.summary.records
     << " distinct_points=" << r.summary.distinct_points
     << " distinct_fibers=" << r.summary.distinct_fibers << '\n';
  os << "  visited=" << r.stats.visited << " degenerate=" << r.stats.degenerate
     << " unfactored=" << r.stats.unfactored << " over_budget=" << r.stats.over_budget << '\n';
  os << "  min_omega=" << (r.summary.min_omega ? r.summary.min_omega->to_string() : "none") << '\n';
  for (const auto& t : r.thresholds) {
    os << "  threshold " << t.name << "=" << t.value << ": ";
    if (!r.summary.min_omega) os << "no records\n";
    else os << (*r.summary.min_omega <= Omega(t.value) ? "min_omega <= threshold" : "min_omega > threshold")
            << '\n';
  }
  os << "  histogram:";
  for (const auto& [o, n] : r.summary.histogram) os << ' ' << o.to_string() << ':' << n;
  os << '\n';
  for (const auto& [k, v] : r.facts) os << "  " << k << "=" << v << '\n';
  return os.str();
}

}  // namespace satlab
