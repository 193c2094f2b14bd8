#pragma once

#include <iosfwd>

namespace ottr {

/// Exit codes: 0 success, 1 error-severity diagnostics or findings, 2 usage or I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ottr
