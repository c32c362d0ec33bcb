#include "satlab/arith.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace satlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

class Budget {
 public:
  explicit Budget(u64 limit) : remaining_(limit) {}
  bool take(u64 n) {
    if (n > remaining_) {
      remaining_ = 0;
      return false;
    }
    remaining_ -= n;
    return true;
  }

 private:
  u64 remaining_;
};

constexpr u64 kBatch = 128;

// Brent's variant of Pollard rho. Returns a nontrivial divisor of the odd
// composite n, or 0 once the budget runs out.
u64 rho_u64(u64 n, Budget& budget, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  for (;;) {
    const u64 c = rng() % (n - 1) + 1;
    auto step = [&](u64 v) {
      u64 s = mulmod(v, v, n) + c;
      return s >= n ? s - n : s;
    };
    u64 y = rng() % n, x = y, ys = y, q = 1, g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      if (!budget.take(r)) return 0;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        if (!budget.take(lim)) return 0;
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        if (!budget.take(1)) return 0;
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

Int rho_mpz(const Int& n, Budget& budget, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  Int c, y, x, ys, q, g, t;
  for (;;) {
    mpz_set_ui(c.get_mpz_t(), static_cast<unsigned long>(rng() % 1000003 + 1));
    mpz_set_ui(y.get_mpz_t(), static_cast<unsigned long>(rng()));
    y %= n;
    auto step = [&](Int& v) {
      mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
      mpz_add(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    q = 1;
    g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      if (!budget.take(r)) return Int(0);
      for (u64 i = 0; i < r; ++i) step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        if (!budget.take(lim)) return Int(0);
        for (u64 i = 0; i < lim; ++i) {
          step(y);
          mpz_sub(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        if (!budget.take(1)) return Int(0);
        step(ys);
        mpz_sub(t.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Strips primes below kTrialDivisionLimit from m.
void trial_divide(Int& m, std::map<Int, unsigned>& out) {
  for (std::uint32_t p : small_primes()) {
    if (fits_u64(m)) {
      u64 v = to_u64(m);
      if (static_cast<u64>(p) * p > v) break;
      if (v % p) continue;
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out[Int(p)] += e;
      m = to_int(v);
    } else if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      out[Int(p)] += e;
    }
  }
}

// Writes (root, k) if c = root^k with k >= 2 maximal.
bool perfect_power(const Int& c, Int& root, unsigned& k) {
  if (mpz_perfect_power_p(c.get_mpz_t()) == 0) return false;
  const auto bits = mpz_sizeinbase(c.get_mpz_t(), 2);
  for (unsigned e = static_cast<unsigned>(bits); e >= 2; --e) {
    if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), e) != 0) {
      k = e;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string Omega::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(*value_);
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionLimit, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i < kTrialDivisionLimit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (u64 j = static_cast<u64>(i) * i; j < kTrialDivisionLimit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a deterministic witness set for all n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  // GMP runs Baillie-PSW followed by (reps - 24) Miller-Rabin rounds.
  return mpz_probab_prime_p(n.get_mpz_t(), 88) > 0;
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [p, e] : factors) v *= int_pow(p, e);
  for (const Int& c : unfactored) v *= c;
  return v;
}

std::uint64_t Factorization::big_omega() const {
  std::uint64_t s = 0;
  for (const auto& [p, e] : factors) s += e;
  return s;
}

Factorization factor(const Int& n, const FactorOptions& opts) {
  if (n == 0) throw Error(Errc::zero_input, "factor(0)");
  Factorization out;
  out.sign = sgn(n) < 0 ? -1 : 1;
  Int m = abs(n);
  trial_divide(m, out.factors);

  const Int small_square = Int(kTrialDivisionLimit) * kTrialDivisionLimit;
  Budget budget(opts.budget);
  std::vector<std::pair<Int, unsigned>> work;
  if (m > 1) work.emplace_back(m, 1u);

  while (!work.empty()) {
    auto [c, mult] = std::move(work.back());
    work.pop_back();
    if (c == 1) continue;
    // No prime below the trial limit divides c.
    if (c < small_square || is_prime(c)) {
      out.factors[c] += mult;
      continue;
    }
    Int root;
    unsigned k = 0;
    if (perfect_power(c, root, k)) {
      work.emplace_back(root, mult * k);
      continue;
    }
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + mpz_get_ui(c.get_mpz_t()));
    Int d;
    if (fits_u64(c)) {
      d = to_int(rho_u64(to_u64(c), budget, rng));
    } else {
      d = rho_mpz(c, budget, rng);
    }
    if (d == 0) {
      for (unsigned i = 0; i < mult; ++i) out.unfactored.push_back(c);
      continue;
    }
    Int other;
    mpz_divexact(other.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    work.emplace_back(std::move(d), mult);
    work.emplace_back(std::move(other), mult);
  }
  std::sort(out.unfactored.begin(), out.unfactored.end());
  return out;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error(Errc::zero_input, "valuation of 0");
  Int rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

ArithValues arith_functions(const Int& n, std::span<const Int> primes, const FactorOptions& opts) {
  ArithValues out;
  if (n == 0) {
    out.omega = Omega::infinite();
    return out;
  }
  Factorization f = factor(n, opts);
  if (!f.complete()) {
    throw Error(Errc::incomplete_factorization,
                "cofactor " + to_string(f.unfactored.front()) + " resisted the budget");
  }
  out.omega = Omega(f.big_omega());
  out.nu = static_cast<unsigned>(f.factors.size());
  bool squarefree = true;
  Int rad = 1;
  for (const auto& [p, e] : f.factors) {
    rad *= p;
    if (e > 1) squarefree = false;
  }
  out.rad = rad;
  out.mu = squarefree ? ((f.factors.size() % 2) ? -1 : 1) : 0;
  for (const Int& p : primes) {
    auto it = f.factors.find(p);
    out.valuations[p] = it == f.factors.end() ? 0u : it->second;
  }
  return out;
}

Omega big_omega(const Int& n, const FactorOptions& opts) { return arith_functions(n, {}, opts).omega; }

Int radical(const Int& n, const FactorOptions& opts) {
  auto v = arith_functions(n, {}, opts);
  if (!v.rad) throw Error(Errc::zero_input, "rad(0)");
  return *v.rad;
}

Int ProjectivePoint::height() const {
  Int h = 0;
  for (const Int& c : coords_) {
    if (abs(c) > h) h = abs(c);
  }
  return h;
}

bool ProjectivePoint::has_zero_coordinate() const {
  return std::any_of(coords_.begin(), coords_.end(), [](const Int& c) { return c == 0; });
}

ProjectivePoint to_primitive(std::span<const Int> v) {
  Int g = gcd_all(v);
  if (g == 0) throw Error(Errc::zero_vector, "projective point needs a nonzero coordinate");
  std::vector<Int> c(v.begin(), v.end());
  auto first = std::find_if(c.begin(), c.end(), [](const Int& x) { return x != 0; });
  if (sgn(*first) < 0) g = -g;
  for (Int& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return ProjectivePoint(std::move(c));
}

Omega omega_projective(const ProjectivePoint& p, const FactorOptions& opts) {
  if (p.has_zero_coordinate()) return Omega::infinite();
  Omega total(0);
  for (const Int& c : p.coords()) total = total + big_omega(c, opts);
  return total;
}

namespace {

void check_progression(const Int& q, const Int& a) {
  if (q <= 0) throw Error(Errc::invalid_argument, "modulus must be positive");
  if (int_gcd(a, q) != 1) {
    throw Error(Errc::non_coprime_residue,
                "gcd(" + to_string(a) + ", " + to_string(q) + ") != 1");
  }
}

// Least n > bound with n ≡ a mod q.
Int next_in_class(const Int& q, const Int& a, const Int& bound) {
  Int n = bound + 1;
  Int r = mod_floor(Int(a - n), q);
  return n + r;
}

}  // namespace

std::vector<Int> primes_in_ap(const Int& q, const Int& a, std::size_t count, const Int& start) {
  check_progression(q, a);
  std::vector<Int> out;
  Int n = next_in_class(q, a, start < 1 ? Int(1) : start);
  while (out.size() < count) {
    if (is_prime(n)) out.push_back(n);
    n += q;
  }
  return out;
}

std::vector<Int> primes_in_ap_between(const Int& q, const Int& a, const Int& lo, const Int& hi) {
  check_progression(q, a);
  std::vector<Int> out;
  Int n = next_in_class(q, a, (lo < 2 ? Int(2) : lo) - 1);
  for (; n <= hi; n += q) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

}  // namespace satlab
