#pragma once

#include <iosfwd>

namespace petrisiegel {

/// Exit codes: 0 PASS, 1 FAIL, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace petrisiegel
