#pragma once

#include <ostream>
#include <string_view>

namespace satlab::tools {

/// Runs the invariant suite of one module ("arith", "intpoly", "constants",
/// "varieties", "search") or all of them ("all"). Returns the failure count.
int run_selftest(std::string_view module, std::ostream& out);

/// Module whose suite a subcommand's --selftest runs.
std::string_view module_of(std::string_view subcommand);

}  // namespace satlab::tools
