#include "hminlag/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "hminlag/error.hpp"
#include "hminlag/harmonic.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/projective.hpp"
#include "hminlag/quotient.hpp"

namespace hminlag {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Independent streams per suite so that toggling one does not shift another.
std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) { return seed * 0x9e3779b97f4a7c15ull + tag; }

ojson error_entry(const std::exception& e) {
  ojson j;
  j["status"] = "error";
  j["error"] = e.what();
  j["pass"] = false;
  return j;
}

ojson skipped_entry(const std::string& reason) {
  ojson j;
  j["status"] = "skipped";
  j["reason"] = reason;
  return j;
}

template <typename Fn>
ojson guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DimensionUnsupported || e.kind() == ErrorKind::Unsupported) return skipped_entry(e.what());
    return error_entry(e);
  } catch (const std::exception& e) {
    return error_entry(e);
  }
}

ojson rational_rows(const LatticeBasis& b) {
  ojson rows = ojson::array();
  for (const auto& r : b.rows) {
    ojson row = ojson::array();
    for (const auto& v : r) row.push_back(v.to_string());
    rows.push_back(row);
  }
  return rows;
}

double wrapped_difference(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

std::vector<CoverPoint> random_cover(const QuadricSystem& sys, const LatticePack& pack, std::size_t count,
                                     std::uint64_t seed, const VarietyTolerances& tol) {
  SamplingOptions opts;
  opts.tol = tol;
  const auto us = sample_points(sys, count, seed, opts);
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5ull);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  std::vector<CoverPoint> out;
  for (const auto& u : us) {
    std::vector<double> c(sys.codim());
    for (auto& v : c) v = unit(rng);
    const auto y = pack.from_dual_coordinates(c);
    out.push_back({u, Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))});
  }
  return out;
}

bool e_is_zero(const LatticePack& pack) {
  for (auto v : pack.sum)
    if (v != 0) return false;
  return true;
}

ojson lattice_section(const QuadricSystem& sys, const LatticePack& pack) {
  ojson j;
  j["lambda_basis"] = rational_rows(pack.lattice);
  j["dual_basis"] = rational_rows(pack.dual);
  j["gamma_order"] = pack.gamma.size();
  ojson gamma = ojson::array();
  for (const auto& g : pack.gamma.elements) {
    ojson row = ojson::array();
    for (const auto& v : g) row.push_back(v.to_string());
    gamma.push_back(row);
  }
  j["gamma"] = gamma;
  j["free_action"] = pack.free_action.free;
  ojson witnesses = ojson::array();
  for (const auto& w : pack.free_action.witnesses) witnesses.push_back(w ? ojson(*w) : ojson(nullptr));
  j["witnesses"] = witnesses;
  j["e"] = pack.sum;
  j["e_zero"] = e_is_zero(pack);
  j["is_cone"] = sys.is_cone();
  j["pass"] = pack.free_action.free;
  return j;
}

ojson cn_section(const InstanceConfig& cfg, const QuadricSystem& sys, const LatticePack& pack) {
  ojson j;
  const VarietyTolerances vt = cfg.variety_tolerances();
  std::vector<CoverPoint> samples;
  try {
    samples = random_cover(sys, pack, cfg.sample_count, stream(cfg.seed, 1), vt);
  } catch (const std::exception& e) {
    j["sampling"] = error_entry(e);
    return j;
  }

  j["variety_residual"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(residual(sys, s.u).cwiseAbs().maxCoeff() / std::max(1.0, s.u.squaredNorm()));
    return defect_entry(v, cfg.tol("residual"));
  });
  j["lagrangian"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(lagrangian_defect(sys, s.u, s.y));
    return defect_entry(v, cfg.tol("lagrangian"));
  });
  j["cross_block"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(cross_block_defect(frame_at(sys, s.u, s.y, vt.rank)));
    return defect_entry(v, cfg.tol("cross_block"));
  });
  j["torus_gram"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) {
      const FrameBundle f = frame_at(sys, s.u, s.y, vt.rank);
      v.push_back((f.g_torus - torus_gram_closed_form(sys, s.u)).cwiseAbs().maxCoeff() / std::max(1.0, s.u.squaredNorm()));
    }
    return defect_entry(v, cfg.tol("torus_gram"));
  });

  // curvature needs samples away from the coordinate hyperplanes
  std::vector<CoverPoint> chart_samples;
  ojson chart_error;
  try {
    VarietyTolerances ct = vt;
    ct.u_floor = cfg.tol("chart_u_floor");
    chart_samples = random_cover(sys, pack, std::min<std::size_t>(200, cfg.sample_count), stream(cfg.seed, 2), ct);
  } catch (const std::exception& e) {
    chart_error = error_entry(e);
  }
  const bool minimal = e_is_zero(pack);
  if (chart_samples.empty()) {
    j["mean_curvature"] = chart_error;
    j["minimality"] = chart_error;
    j["harmonicity"] = chart_error;
  } else {
    std::vector<double> oracle_norms, angle_norms;
    j["mean_curvature"] = guarded([&] {
      std::vector<double> v;
      for (const auto& s : chart_samples) {
        const CVector ha = mean_curvature_from_angle(sys, s.u, s.y);
        const CVector ho = mean_curvature_oracle(sys, s.u, s.y);
        v.push_back((ha - ho).norm() / (1.0 + ha.norm()));
        oracle_norms.push_back(ho.norm());
        angle_norms.push_back(ha.norm());
      }
      return defect_entry(v, cfg.tol("curvature"));
    });
    j["minimality"] = guarded([&] {
      if (oracle_norms.empty()) throw Error(ErrorKind::ChartFailure, "no curvature samples");
      ojson m;
      m["e"] = pack.sum;
      m["minimal"] = minimal;
      const double hi = *std::max_element(oracle_norms.begin(), oracle_norms.end());
      const double lo = *std::min_element(oracle_norms.begin(), oracle_norms.end());
      m["max_norm"] = hi;
      m["min_norm"] = lo;
      m["count"] = oracle_norms.size();
      m["tol"] = cfg.tol("curvature");
      // minimal iff e = 0: H vanishes identically, otherwise it is nowhere zero
      m["pass"] = minimal ? hi <= cfg.tol("curvature") : lo > cfg.tol("curvature");
      return m;
    });
    j["harmonicity"] = guarded([&] {
      ojson h = defect_entry({harmonicity_defect(sys, pack, chart_samples.front().u, 64)}, cfg.tol("harmonic"));
      h["grid"] = 64;
      return h;
    });
  }
  j["hamiltonian_variation"] = guarded([&] {
    std::vector<double> v;
    for (std::uint64_t t = 0; t < 5; ++t)
      v.push_back(hamiltonian_variation_check(sys, pack, 64, TrigPolynomial::random(sys.n(), 3, 4, stream(cfg.seed, 10 + t))));
    ojson h = defect_entry(v, cfg.tol("variation"));
    h["functions"] = 5;
    return h;
  });
  j["orbits"] = guarded([&] {
    std::size_t failures = 0;
    std::vector<double> spread;
    for (const auto& s : samples) {
      try {
        const auto pts = orbit(sys, pack, s, cfg.tol("orbit"));
        const CVector z0 = phi(sys, s.u, s.y);
        double worst = 0.0;
        for (const auto& p : pts) worst = std::max(worst, (phi(sys, p.u, p.y) - z0).norm());
        spread.push_back(worst);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonFreeWitness) throw;
        ++failures;
      }
    }
    ojson o = defect_entry(spread, 1e-12);
    o["non_free"] = failures;
    o["orbit_size"] = pack.gamma.size();
    o["pass"] = o["pass"].get<bool>() && failures == 0;
    return o;
  });
  return j;
}

ojson cpn_section(const InstanceConfig& cfg, const QuadricSystem& sys, const LatticePack& pack) {
  ojson j;
  if (!sys.is_cone()) {
    j["status"] = "skipped";
    j["reason"] = "NotACone: constants d are not all zero";
    return j;
  }
  std::vector<CoverPoint> samples;
  try {
    VarietyTolerances ct = cfg.variety_tolerances();
    ct.u_floor = cfg.tol("chart_u_floor");
    samples = random_cover(sys, pack, std::min<std::size_t>(100, cfg.sample_count), stream(cfg.seed, 3), ct);
  } catch (const std::exception& e) {
    j["sampling"] = error_entry(e);
    return j;
  }
  const bool minimal = e_is_zero(pack);
  j["submersion"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) {
      const CVector p = phi(sys, s.u, s.y) / s.u.norm();
      const SubmersionDefect d = submersion_isometry_check(p, link_frame(sys, s.u / s.u.norm(), s.y));
      v.push_back(std::max(d.metric, d.symplectic));
    }
    return defect_entry(v, cfg.tol("submersion"));
  });
  j["psi2_lagrangian"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(psi2_lagrangian_defect(sys, {LinkSample{s.u, s.y}}));
    return defect_entry(v, cfg.tol("psi2_lagrangian"));
  });
  j["fiber_hopf"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) {
      const ProjectivePoint base = hopf_project(phi(sys, s.u, s.y));
      for (const auto& f : fiber_preimages(sys, s.u, s.y))
        v.push_back((hopf_project(phi(sys, f.u, f.y)).z - base.z).cwiseAbs().maxCoeff());
    }
    return defect_entry(v, cfg.tol("fiber"));
  });
  j["fiber_angle"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) {
      const double beta = cp_angle(sys, s.u, s.y).value;
      for (const auto& f : fiber_preimages(sys, s.u, s.y)) v.push_back(wrapped_difference(cp_angle(sys, f.u, f.y).value, beta));
    }
    ojson a = defect_entry(v, cfg.tol("fiber"));
    if (!minimal) {
      a["status"] = "informational";
      a["reason"] = "the angle is not constant on fibers when e != 0";
      a.erase("pass");
    }
    return a;
  });
  j["cp_harmonicity"] = guarded([&] {
    const CoverPoint& s = samples.front();
    const double width = 0.2 * std::min(1.0, s.u.cwiseAbs().minCoeff() / s.u.norm());
    const ParametrizedImmersion chart = link_chart(sys, pack, s.u, width);
    ojson h = defect_entry({harmonicity_defect(chart, GridSpec::uniform(chart.lower, chart.upper, 33))},
                           cfg.tol("cp_harmonic"));
    h["grid"] = 33;
    return h;
  });
  j["cp_minimality"] = guarded([&] {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(cp_mean_curvature_norm(sys, s.u, s.y));
    ojson m = defect_entry(v, cfg.tol("cp_curvature"));
    m["min"] = *std::min_element(v.begin(), v.end());
    m["minimal"] = minimal;
    if (!minimal) m["pass"] = m["min"].get<double>() > 10.0 * cfg.tol("cp_curvature");
    return m;
  });
  return j;
}

ojson scan_section(const InstanceConfig& cfg, const QuadricSystem& sys, const LatticePack& pack) {
  return guarded([&] {
    const double tol = cfg.tol("collision");
    const auto samples = scan_samples(sys, pack, cfg.scan_count, stream(cfg.seed, 4), 0.25, 16, cfg.variety_tolerances());
    const auto pairs = self_intersection_scan(sys, pack, samples, tol);
    ojson j;
    j["samples"] = samples.size();
    j["tol"] = tol;
    j["count"] = pairs.size();
    double worst = 0.0;
    ojson listed = ojson::array();
    for (const auto& p : pairs) {
      worst = std::max(worst, p.min_abs_u);
      if (listed.size() < 10) listed.push_back({{"first", p.first}, {"second", p.second}, {"distance", p.distance}, {"min_abs_u", p.min_abs_u}});
    }
    j["max_min_abs_u"] = worst;
    j["pairs"] = listed;
    j["localized"] = worst < std::sqrt(tol);
    j["pass"] = worst < std::sqrt(tol);
    return j;
  });
}

ojson classify_section(const QuadricSystem& sys, const LatticePack& pack) {
  ojson j;
  const TopologyLabel label = classify_quotient(sys, pack);
  j["label"] = to_string(label);
  j["description"] = describe(label);
  const Family fam = recognize_family(sys);
  j["family"] = fam == Family::Ellipsoid ? "ellipsoid"
                : fam == Family::SphereConeProduct ? "sphere_cone_product"
                : fam == Family::PointSet ? "point_set" : "other";
  if (fam != Family::Other) {
    ojson chars = ojson::array();
    for (std::size_t g = 0; g < pack.gamma.size(); ++g) chars.push_back(orientation_character(sys, pack, g));
    j["orientation_characters"] = chars;
  }
  if (sys.is_cone()) {
    const TopologyLabel proj = classify_projective_quotient(sys);
    j["projective_label"] = to_string(proj);
    j["projective_description"] = describe(proj);
  }
  return j;
}

void collect_failures(const ojson& node, const std::string& path, std::vector<std::string>& failed) {
  if (!node.is_object()) return;
  if (node.contains("pass") && node["pass"].is_boolean() && !node["pass"].get<bool>()) failed.push_back(path);
  for (const auto& [key, value] : node.items()) collect_failures(value, path.empty() ? key : path + "." + key, failed);
}

void dump(const ojson& j, std::ostringstream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << inner << ojson(key).dump() << ": ";
        dump(value, out, indent + 1);
      }
      out << '\n' << pad << '}';
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      bool scalar = true;
      for (const auto& v : j) scalar = scalar && !v.is_structured();
      if (scalar) {
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          dump(j[i], out, indent + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        dump(j[i], out, indent + 1);
      }
      out << '\n' << pad << ']';
      return;
    }
    case ojson::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      std::string s = buf;
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out << s;
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

unsigned suites_from_config(const InstanceConfig& config) {
  unsigned s = kSuiteLattice;
  if (config.sweeps.cn) s |= kSuiteCn;
  if (config.sweeps.cpn) s |= kSuiteCpn;
  if (config.sweeps.quotient) s |= kSuiteScan | kSuiteClassify;
  return s;
}

ojson defect_entry(const std::vector<double>& values, double tol) {
  ojson j;
  double worst = 0.0, sum = 0.0;
  bool finite = true;
  for (double v : values) {
    finite = finite && std::isfinite(v);
    worst = std::max(worst, v);
    sum += v;
  }
  j["max"] = worst;
  j["mean"] = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  j["count"] = values.size();
  j["tol"] = tol;
  j["pass"] = finite && !values.empty() && worst <= tol;
  return j;
}

AnalysisResult run_analyze(const InstanceConfig& config, unsigned suites) {
  AnalysisResult result;
  ojson& r = result.report;
  r["instance"] = echo_config(config);
  const QuadricSystem sys = config.system();
  const LatticePack pack = make_lattice_pack(sys.exponents());
  if (suites & kSuiteLattice) r["lattice"] = lattice_section(sys, pack);
  if (suites & kSuiteCn) r["cn"] = cn_section(config, sys, pack);
  if (suites & kSuiteCpn) r["cpn"] = cpn_section(config, sys, pack);
  if (suites & kSuiteScan) r["collisions"] = scan_section(config, sys, pack);
  if (suites & kSuiteClassify) r["topology"] = classify_section(sys, pack);
  r["runtime"] = {{"tool", "hminlag"}, {"version", "0.3.0"}, {"threads", 1}, {"sample_scale_evidence", true}};
  collect_failures(r, "", result.failed);
  result.all_pass = result.failed.empty();
  r["summary"] = {{"all_pass", result.all_pass}, {"failed", result.failed}};
  return result;
}

std::string dump_report(const ojson& report) {
  std::ostringstream out;
  dump(report, out, 0);
  out << '\n';
  return out.str();
}

}  // namespace hminlag
