#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghlab::cli {

/// Exit codes: 0 success, 1 error (usage, schema, I/O, library), 2 honest
/// indeterminacy (Indeterminate errors or an INCONCLUSIVE verdict).
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kIndeterminate = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghlab::cli
