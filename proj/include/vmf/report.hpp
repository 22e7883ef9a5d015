#pragma once

#include <map>
#include <string>
#include <vector>

namespace vmf {

// One measured/bound comparison inside a check.
struct EstimateCase {
  std::map<std::string, double> inputs;  // named index values (j, k, t, ...)
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::string note;  // e.g. active branch of a min{}
};

// Structured result of a verification sweep. `fitted_constant` is the largest
// measured/bound ratio seen; `pass` is the check-specific verdict.
struct EstimateReport {
  std::string name;
  std::string config_hash;
  std::vector<EstimateCase> cases;
  double fitted_constant = 0.0;
  bool pass = false;
  std::map<std::string, double> tolerances;

  void add_case(std::map<std::string, double> inputs, double measured, double bound,
                std::string note = {});
  // fitted_constant = max ratio; throws on non-finite entries, naming the case.
  void finalize_fit();

  std::string to_json() const;  // UTF-8, sorted keys, deterministic float formatting
  void write_json(const std::string& path) const;
  void write_csv(const std::string& path) const;
};

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace vmf
