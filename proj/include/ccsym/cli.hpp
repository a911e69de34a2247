#pragma once

#include <ostream>

namespace ccsym {

/// Exit status: 0 when the command succeeds or its check passes, 1 when a
/// check fails, 2 on malformed input.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ccsym
