#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pndiag::cli {

/// Exit codes: 0 success, 1 analysis finding (e.g. imprecision witnesses),
/// 2 usage or input error, 3 search budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pndiag::cli
