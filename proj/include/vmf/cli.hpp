#pragma once

#include <string>
#include <vector>

#include "vmf/config.hpp"

namespace vmf {

struct RunResult {
  bool pass = false;
  std::vector<std::string> artifacts;  // files written
  std::vector<std::string> summary;    // one line per executed check
};

// Subcommands: verify-kernels, verify-identity, fields, decompose, bounds,
// theorem, all. Writes JSON + CSV (+ plot data) into out_dir; reports carry
// the canonical config hash. Deterministic for a fixed config, independent of
// the thread count.
RunResult run(const std::string& subcommand, const RunConfig& config,
              const std::string& out_dir);

}  // namespace vmf
