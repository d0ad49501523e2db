#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

/// Named tolerances with their defaults; every name is also a --tol-<name> flag.
const std::map<std::string, double>& default_tolerances();

struct SweepFlags {
  bool cn = true;
  bool cpn = false;
  bool quotient = true;
};

struct MeshOptions {
  std::array<int, 3> axes{0, 1, 2};
  int theta_steps = 128;
  int y_steps = 64;
};

struct InstanceConfig {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  IntMatrix exponents;
  Eigen::VectorXd constants;
  std::size_t sample_count = 1000;
  std::size_t scan_count = 5000;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  SweepFlags sweeps;
  MeshOptions mesh;

  double tol(const std::string& name) const;
  QuadricSystem system() const;
  VarietyTolerances variety_tolerances() const;
};

/// Validates and fills defaults. Errors are ConfigInvalid with the field name.
InstanceConfig parse_config(const nlohmann::json& doc);
InstanceConfig load_config(const std::string& path);

/// Effective configuration with defaults filled in.
nlohmann::ordered_json echo_config(const InstanceConfig& config);

}  // namespace hminlag
