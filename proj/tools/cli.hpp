#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mwis/alg2.hpp"
#include "mwis/verify.hpp"

namespace mwis::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kViolation = 3 };

/// Parses "kind:size[:key=value...]", e.g. "pk-free:40:k=5:p=0.9:seed=7".
/// Kinds: gnp, cograph, pk-free, h-free, path, cycle, star, complete.
/// Keys: p, k, pattern, seed, wmin, wmax, attempts, mode (edge|graph).
GeneratorSpec parse_generator_spec(std::string_view text);

/// "bruteforce", "bruteforce:<cap>" or "pk:<k>".
ComponentOracle parse_oracle_spec(std::string_view text);

/// Pattern given as an expression ("2K2", "P4+fork") or a graph file path.
Graph load_pattern(const std::string& arg);

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwis::cli
