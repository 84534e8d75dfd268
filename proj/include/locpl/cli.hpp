#pragma once

// Command-line front end. Exit codes: 0 success or identity, 1 relation does
// not hold (or a finite-difference check fails), 2 usage or parse error,
// 3 domain error (pole, convergence, invalid mathematical input).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "locpl/identities.hpp"
#include "locpl/serialize.hpp"

namespace locpl {

constexpr int kExitOk = 0;
constexpr int kExitNotIdentity = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

// Environment variable overriding the default series tolerance.
constexpr const char* kToleranceEnv = "LOCPL_TOLERANCE";

// Settings of a variety run, read from JSON:
//   {"variables": [...], "endpoints": "symbolic" | "fixed" | {"start", "end"},
//    "N": 1, "pairs": [{"kind", "A", "B", "orders"}], "max_weight": 3,
//    "samples": 0, "seed": 1, "output": "path"}
// Without "pairs" the default relation list up to max_weight is used.
struct RunConfig {
  std::vector<std::string> variables;  // empty: collected from the pairs
  Letter start = Letter::variable("z0");
  Letter end = Letter::variable("z1");
  int N = 1;
  std::vector<RelationSpec> pairs;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string output;
};

RunConfig parse_run_config(const Json& j);
// The ideal, its provenance and any sample points with their membership check.
Json run_variety(const RunConfig& config);

// argv-style arguments including the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locpl
