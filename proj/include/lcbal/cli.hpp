#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcbal {

inline constexpr const char* tool_version = "1.0.0";

/// Exit codes: 0 holds/success, 1 condition fails, 2 structural or parse error.
/// args excludes the program name. The default seed comes from LCBAL_SEED
/// when set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lcbal
