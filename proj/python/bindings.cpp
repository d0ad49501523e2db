#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hminlag/config.hpp"
#include "hminlag/error.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/lattice.hpp"
#include "hminlag/projective.hpp"
#include "hminlag/quotient.hpp"
#include "hminlag/report.hpp"

namespace py = pybind11;
using namespace hminlag;

namespace {

QuadricSystem make_system(const std::vector<IntVector>& rows, const std::vector<double>& d) {
  return QuadricSystem(ExponentMatrix(IntMatrix::from_rows(rows)),
                       Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
}

std::vector<std::vector<std::string>> as_strings(const LatticeBasis& b) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : b.rows) {
    out.emplace_back();
    for (const auto& v : row) out.back().push_back(v.to_string());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lagrangian immersions from integer quadric systems";

  py::register_exception<Error>(m, "HminlagError", PyExc_RuntimeError);

  m.def("hermite_normal_form", [](const std::vector<IntVector>& rows) {
    const IntMatrix h = hermite_normal_form(IntMatrix::from_rows(rows));
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row_vector(i));
    return out;
  }, py::arg("rows"));

  m.def("lattice", [](const std::vector<IntVector>& rows) {
    const LatticePack pack = make_lattice_pack(ExponentMatrix(IntMatrix::from_rows(rows)));
    py::dict d;
    d["lambda_basis"] = as_strings(pack.lattice);
    d["dual_basis"] = as_strings(pack.dual);
    std::vector<std::vector<std::string>> gamma;
    for (const auto& g : pack.gamma.elements) {
      gamma.emplace_back();
      for (const auto& v : g) gamma.back().push_back(v.to_string());
    }
    d["gamma"] = gamma;
    d["free_action"] = pack.free_action.free;
    d["e"] = pack.sum;
    return d;
  }, py::arg("rows"), "Lattice, dual lattice and Gamma representatives as exact fraction strings.");

  m.def("sample_points", [](const std::vector<IntVector>& rows, const std::vector<double>& d, std::size_t count,
                            std::uint64_t seed, double u_floor) {
    const QuadricSystem sys = make_system(rows, d);
    SamplingOptions opts;
    opts.tol.u_floor = u_floor;
    return sample_points(sys, count, seed, opts);
  }, py::arg("rows"), py::arg("d"), py::arg("count"), py::arg("seed") = 1, py::arg("u_floor") = 1e-3);

  m.def("phi", [](const std::vector<IntVector>& rows, const std::vector<double>& d, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& y) { return CVector(phi(make_system(rows, d), u, y)); },
        py::arg("rows"), py::arg("d"), py::arg("u"), py::arg("y"));

  m.def("lagrangian_defect", [](const std::vector<IntVector>& rows, const std::vector<double>& d,
                                const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
    return lagrangian_defect(make_system(rows, d), u, y);
  }, py::arg("rows"), py::arg("d"), py::arg("u"), py::arg("y"));

  m.def("mean_curvature", [](const std::vector<IntVector>& rows, const std::vector<double>& d,
                             const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
    return CVector(mean_curvature_from_angle(make_system(rows, d), u, y));
  }, py::arg("rows"), py::arg("d"), py::arg("u"), py::arg("y"), "Mean curvature vector from the Lagrangian angle.");

  m.def("mean_curvature_oracle", [](const std::vector<IntVector>& rows, const std::vector<double>& d,
                                    const Eigen::VectorXd& u, const Eigen::VectorXd& y, double h) {
    return CVector(mean_curvature_oracle(make_system(rows, d), u, y, h));
  }, py::arg("rows"), py::arg("d"), py::arg("u"), py::arg("y"), py::arg("h") = 1e-5);

  m.def("cp_mean_curvature_norm", [](const std::vector<IntVector>& rows, const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& y) {
    const std::vector<double> zero(rows.empty() ? 0 : rows.front().size(), 0.0);
    return cp_mean_curvature_norm(make_system(rows, zero), u, y);
  }, py::arg("rows"), py::arg("u"), py::arg("y"));

  m.def("classify", [](const std::vector<IntVector>& rows, const std::vector<double>& d) {
    const QuadricSystem sys = make_system(rows, d);
    return to_string(classify_quotient(sys, make_lattice_pack(sys.exponents())));
  }, py::arg("rows"), py::arg("d"));

  m.def("classify_projective", [](const std::vector<IntVector>& rows) {
    const std::vector<double> zero(rows.empty() ? 0 : rows.front().size(), 0.0);
    return to_string(classify_projective_quotient(make_system(rows, zero)));
  }, py::arg("rows"));

  m.def("analyze_json", [](const std::string& config_json, unsigned suites) {
    const InstanceConfig cfg = parse_config(nlohmann::json::parse(config_json));
    const auto result = run_analyze(cfg, suites == 0 ? suites_from_config(cfg) : suites);
    return dump_report(result.report);
  }, py::arg("config_json"), py::arg("suites") = 0u,
     "Run the analysis on a JSON config string; returns the report as JSON text.");

  m.attr("SUITE_LATTICE") = static_cast<unsigned>(kSuiteLattice);
  m.attr("SUITE_CN") = static_cast<unsigned>(kSuiteCn);
  m.attr("SUITE_CPN") = static_cast<unsigned>(kSuiteCpn);
  m.attr("SUITE_SCAN") = static_cast<unsigned>(kSuiteScan);
  m.attr("SUITE_CLASSIFY") = static_cast<unsigned>(kSuiteClassify);
}
