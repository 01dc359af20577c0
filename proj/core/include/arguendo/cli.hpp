#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arguendo::cli {

// Exit code contract: 0 success, 1 validation/check failure, 2 parse or
// usage error. Reports go to `out`, diagnostics to `err`.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

// Subcommands:
//   validate FILE
//   catalog list [--extensions FILE]
//   plan FILE --goal ID [--depth N]
//   refine FILE [--enumerate N] [--map FILE]
//   contract check FILE [--checklist FILE]
//   contract query FILE --question Q --node ID
//   export FILE --format dot
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace arguendo::cli
