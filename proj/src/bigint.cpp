#include "satlab/bigint.hpp"

#include <cctype>
#include <cmath>

#include "satlab/errors.hpp"

namespace satlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::zero_input: return "ZeroInput";
    case Errc::zero_vector: return "ZeroVector";
    case Errc::incomplete_factorization: return "IncompleteFactorization";
    case Errc::non_coprime_residue: return "NonCoprimeResidue";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::search_exhausted: return "SearchExhausted";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::repeated_factor: return "RepeatedFactor";
    case Errc::not_primitive: return "NotPrimitive";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::domain_empty: return "DomainEmpty";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::degenerate_model: return "DegenerateModel";
    case Errc::non_coprime_fiber: return "NonCoprimeFiber";
    case Errc::parity_mismatch: return "ParityMismatch";
    case Errc::condition_violated: return "ConditionViolated";
    case Errc::zero_parameter: return "ZeroParameter";
    case Errc::non_integral_f: return "NonIntegralF";
    case Errc::empty_box: return "EmptyBox";
    case Errc::local_obstruction: return "LocalObstruction";
    case Errc::no_admissible_triples: return "NoAdmissibleTriples";
    case Errc::factorization_mismatch: return "FactorizationMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

Int parse_int(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || s == "-") throw Error(Errc::parse_error, "empty integer");
  for (std::size_t i = (s[0] == '-' ? 1 : 0); i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(Errc::parse_error, "not an integer: '" + s + "'");
    }
  }
  Int r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0) {
    throw Error(Errc::parse_error, "not an integer: '" + s + "'");
  }
  return r;
}

std::vector<Int> parse_int_list(std::string_view text) {
  std::vector<Int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_int(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::string to_string(const Int& v) { return v.get_str(10); }

std::string join(std::span<const Int> values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].get_str(10);
  }
  return out;
}

Int gcd_all(std::span<const Int> values) {
  Int g = 0;
  for (const Int& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::optional<Int> exact_sqrt(const Int& v) {
  if (sgn(v) < 0) return std::nullopt;
  if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

Int crt(std::span<const Int> residues, std::span<const Int> moduli) {
  if (residues.size() != moduli.size()) {
    throw Error(Errc::invalid_argument, "crt: residue/modulus count mismatch");
  }
  Int x = 0, m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Int& mi = moduli[i];
    if (mi == 1) continue;
    Int ri = mod_floor(residues[i], mi);
    // x + m*k ≡ ri (mod mi)
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), Int(m % mi).get_mpz_t(), mi.get_mpz_t()) == 0) {
      throw Error(Errc::invalid_argument, "crt: moduli not coprime");
    }
    Int k = mod_floor(Int((ri - x) * inv), mi);
    x += m * k;
    m *= mi;
  }
  return mod_floor(x, m);
}

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "non-finite real");
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace satlab
