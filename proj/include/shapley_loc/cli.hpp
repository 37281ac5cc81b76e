#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shapley_loc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

/// Entry point of the shapley-loc command. `args` excludes the program
/// name. Tables go to --out or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapley_loc::cli
