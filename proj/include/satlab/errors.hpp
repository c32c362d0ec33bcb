#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace satlab {

/// Failure categories surfaced by the library. The CLI maps every kind
/// except `usage` to exit status 2.
enum class Errc {
  zero_input,
  zero_vector,
  incomplete_factorization,
  non_coprime_residue,
  arity_mismatch,
  zero_polynomial,
  search_exhausted,
  budget_exceeded,
  repeated_factor,
  not_primitive,
  hypothesis_violated,
  domain_empty,
  shape_mismatch,
  degenerate_model,
  non_coprime_fiber,
  parity_mismatch,
  condition_violated,
  zero_parameter,
  non_integral_f,
  empty_box,
  local_obstruction,
  no_admissible_triples,
  factorization_mismatch,
  parse_error,
  invalid_argument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace satlab
