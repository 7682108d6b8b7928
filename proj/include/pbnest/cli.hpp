#pragma once

#include <iosfwd>

namespace pbnest {

/// Runs one subcommand. Returns 0 on success, 2 on validation failure or failed checks,
/// 1 on internal errors and 64 for a missing or unknown subcommand.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pbnest
