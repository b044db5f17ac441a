#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace erws::cli {

// Exit codes shared by every subcommand:
//   0  success
//   2  usage or input error (bad flags, parameter validation failures)
//   3  --strict was set and a resonance fallback replaced a closed form
//   4  oracle cross-check disagreement beyond tolerance
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace erws::cli
