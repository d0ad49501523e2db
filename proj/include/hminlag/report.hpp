#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hminlag/config.hpp"

namespace hminlag {

enum Suite : unsigned {
  kSuiteLattice = 1u,
  kSuiteCn = 2u,
  kSuiteCpn = 4u,
  kSuiteScan = 8u,
  kSuiteClassify = 16u,
  kSuiteAll = 31u,
};

/// Suites enabled by the config's sweep flags (lattice always on).
unsigned suites_from_config(const InstanceConfig& config);

struct AnalysisResult {
  nlohmann::ordered_json report;
  bool all_pass = true;
  std::vector<std::string> failed;
};

/// Runs the selected suites. Module errors are recorded under the property
/// that raised them; only configuration errors propagate.
AnalysisResult run_analyze(const InstanceConfig& config, unsigned suites);

/// {max, mean, count, tol, pass}; pass means max <= tol.
nlohmann::ordered_json defect_entry(const std::vector<double>& values, double tol);

/// JSON text with every float printed to 17 significant digits.
std::string dump_report(const nlohmann::ordered_json& report);

}  // namespace hminlag
