#include "hminlag/config.hpp"

#include <fstream>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ConfigInvalid, field + ": " + what);
}

template <typename T>
T read(const nlohmann::json& doc, const char* field, T fallback) {
  if (!doc.contains(field)) return fallback;
  try {
    return doc.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    invalid(field, std::string("wrong type (") + e.what() + ")");
  }
}

std::size_t read_count(const nlohmann::json& doc, const char* field, std::size_t fallback, bool required) {
  if (!doc.contains(field)) {
    if (required) invalid(field, "missing");
    return fallback;
  }
  const auto& v = doc.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 0) invalid(field, "must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"residual", 1e-12},   {"rank", 1e-9},          {"u_floor", 1e-3},        {"r_max", 1e3},
      {"lagrangian", 1e-10}, {"cross_block", 1e-10},  {"torus_gram", 1e-9},     {"curvature", 1e-4},
      {"harmonic", 1e-6},    {"variation", 1e-4},     {"orbit", 1e-9},          {"collision", 1e-8},
      {"submersion", 1e-8},  {"psi2_lagrangian", 1e-8}, {"fiber", 1e-10},       {"cp_curvature", 1e-3},
      {"cp_harmonic", 1e-5}, {"chart_u_floor", 0.1},
  };
  return table;
}

double InstanceConfig::tol(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

QuadricSystem InstanceConfig::system() const { return QuadricSystem(ExponentMatrix(exponents), constants); }

VarietyTolerances InstanceConfig::variety_tolerances() const {
  VarietyTolerances t;
  t.residual = tol("residual");
  t.rank = tol("rank");
  t.u_floor = tol("u_floor");
  t.r_max = tol("r_max");
  return t;
}

InstanceConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) invalid("<root>", "expected an object");
  InstanceConfig c;
  c.name = read<std::string>(doc, "name", "");
  c.n = read_count(doc, "n", 0, true);
  c.k = read_count(doc, "k", 0, true);
  if (c.n == 0) invalid("n", "must be at least 1");
  if (c.k >= c.n) invalid("k", "must satisfy 0 <= k < n");
  const std::size_t r = c.n - c.k;

  if (!doc.contains("E")) invalid("E", "missing");
  const auto& e = doc.at("E");
  if (!e.is_array() || e.size() != c.n) invalid("E", "expected " + std::to_string(c.n) + " rows");
  c.exponents = IntMatrix(c.n, r);
  for (std::size_t i = 0; i < c.n; ++i) {
    const auto& row = e.at(i);
    if (!row.is_array() || row.size() != r)
      invalid("E[" + std::to_string(i) + "]", "expected " + std::to_string(r) + " integers");
    for (std::size_t j = 0; j < r; ++j) {
      if (!row.at(j).is_number_integer()) invalid("E[" + std::to_string(i) + "][" + std::to_string(j) + "]", "not an integer");
      c.exponents(i, j) = row.at(j).get<std::int64_t>();
    }
  }
  try {
    ExponentMatrix check(c.exponents);
  } catch (const Error& err) {
    std::string rows;
    for (std::size_t i = 0; i < c.n; ++i) rows += (i ? ", " : "") + std::to_string(i);
    invalid("E", "rows [" + rows + "] do not generate a lattice of rank n-k = " + std::to_string(r) + " (" +
                     err.what() + ")");
  }

  if (!doc.contains("d")) invalid("d", "missing");
  const auto& d = doc.at("d");
  if (!d.is_array() || d.size() != r) invalid("d", "expected " + std::to_string(r) + " numbers");
  c.constants.resize(static_cast<Eigen::Index>(r));
  for (std::size_t j = 0; j < r; ++j) {
    if (!d.at(j).is_number()) invalid("d[" + std::to_string(j) + "]", "not a number");
    c.constants(static_cast<Eigen::Index>(j)) = d.at(j).get<double>();
  }

  c.sample_count = read_count(doc, "sample_count", c.sample_count, false);
  c.scan_count = read_count(doc, "scan_count", c.scan_count, false);
  if (c.sample_count == 0) invalid("sample_count", "must be positive");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) invalid("seed", "must be a non-negative integer");
    c.seed = doc.at("seed").get<std::uint64_t>();
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc.at("tolerances");
    if (!t.is_object()) invalid("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      if (!default_tolerances().contains(key)) invalid("tolerances." + key, "unknown tolerance");
      if (!value.is_number() || !(value.get<double>() > 0.0)) invalid("tolerances." + key, "must be a positive number");
      c.tolerances[key] = value.get<double>();
    }
  }

  if (doc.contains("sweeps")) {
    const auto& s = doc.at("sweeps");
    if (!s.is_object()) invalid("sweeps", "expected an object");
    for (const auto& [key, value] : s.items()) {
      if (!value.is_boolean()) invalid("sweeps." + key, "expected true or false");
      if (key == "cn") c.sweeps.cn = value.get<bool>();
      else if (key == "cpn") c.sweeps.cpn = value.get<bool>();
      else if (key == "quotient") c.sweeps.quotient = value.get<bool>();
      else invalid("sweeps." + key, "unknown sweep");
    }
  }

  if (doc.contains("mesh")) {
    const auto& m = doc.at("mesh");
    if (!m.is_object()) invalid("mesh", "expected an object");
    if (m.contains("axes")) {
      const auto& a = m.at("axes");
      if (!a.is_array() || a.size() != 3) invalid("mesh.axes", "expected three axis indices");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!a.at(i).is_number_integer()) invalid("mesh.axes", "axis indices must be integers");
        c.mesh.axes[i] = a.at(i).get<int>();
      }
    }
    if (m.contains("resolution")) {
      const auto& res = m.at("resolution");
      if (!res.is_array() || res.size() != 2 || !res.at(0).is_number_integer() || !res.at(1).is_number_integer())
        invalid("mesh.resolution", "expected [theta_steps, y_steps]");
      c.mesh.theta_steps = res.at(0).get<int>();
      c.mesh.y_steps = res.at(1).get<int>();
      if (c.mesh.theta_steps <= 0 || c.mesh.y_steps <= 0) invalid("mesh.resolution", "must be positive");
    }
  }
  return c;
}

InstanceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IOError, "cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(path, std::string("parse error: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json echo_config(const InstanceConfig& c) {
  nlohmann::ordered_json out;
  out["name"] = c.name;
  out["n"] = c.n;
  out["k"] = c.k;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c.exponents.rows(); ++i) rows.push_back(c.exponents.row_vector(i));
  out["E"] = rows;
  out["d"] = std::vector<double>(c.constants.data(), c.constants.data() + c.constants.size());
  out["sample_count"] = c.sample_count;
  out["scan_count"] = c.scan_count;
  out["seed"] = c.seed;
  nlohmann::ordered_json tol;
  for (const auto& [name, value] : default_tolerances()) tol[name] = c.tol(name);
  out["tolerances"] = tol;
  out["sweeps"] = {{"cn", c.sweeps.cn}, {"cpn", c.sweeps.cpn}, {"quotient", c.sweeps.quotient}};
  out["mesh"] = {{"axes", c.mesh.axes}, {"resolution", {c.mesh.theta_steps, c.mesh.y_steps}}};
  return out;
}

}  // namespace hminlag
