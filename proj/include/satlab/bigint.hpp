#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satlab {

using Int = mpz_class;
using Rational = mpq_class;

inline Int to_int(std::int64_t v) {
  Int r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

inline Int to_int(std::uint64_t v) {
  Int r;
  mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
  return r;
}

/// Parses a decimal integer with optional sign; throws Error(parse_error).
Int parse_int(std::string_view text);

/// Parses "a,b,c" (whitespace tolerated) into integers.
std::vector<Int> parse_int_list(std::string_view text);

std::string to_string(const Int& v);
std::string join(std::span<const Int> values, std::string_view sep = ",");

inline bool fits_u64(const Int& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& v) {
  // mpz_get_ui is 64-bit on LP64 targets.
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

inline bool fits_i64(const Int& v) {
  return mpz_fits_slong_p(v.get_mpz_t()) != 0;
}

inline std::int64_t to_i64(const Int& v) {
  return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// gcd of all entries (0 for an empty or all-zero list).
Int gcd_all(std::span<const Int> values);

/// Non-negative residue of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Integer square root when v is a perfect square (v >= 0).
std::optional<Int> exact_sqrt(const Int& v);

/// Solves x = r_i mod m_i for pairwise coprime moduli; returns x in [0, prod m_i).
Int crt(std::span<const Int> residues, std::span<const Int> moduli);

/// Exact rational value of a finite double.
Rational exact_rational(double v);

}  // namespace satlab
