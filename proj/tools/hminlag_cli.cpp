#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hminlag/config.hpp"
#include "hminlag/error.hpp"
#include "hminlag/mesh.hpp"
#include "hminlag/report.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::map<std::string, double> tolerances;
  std::string out;
};

void apply_overrides(hminlag::InstanceConfig& cfg, const GlobalOptions& g) {
  if (g.seed) cfg.seed = *g.seed;
  if (g.samples) {
    if (*g.samples == 0) throw hminlag::Error(hminlag::ErrorKind::ConfigInvalid, "--samples: must be positive");
    cfg.sample_count = *g.samples;
  }
  for (const auto& [name, value] : g.tolerances) {
    if (!(value > 0.0)) throw hminlag::Error(hminlag::ErrorKind::ConfigInvalid, "--tol-" + name + ": must be positive");
    cfg.tolerances[name] = value;
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw hminlag::Error(hminlag::ErrorKind::IOError, "cannot write " + out);
  file << text;
}

int run_report(const std::string& path, const GlobalOptions& g, std::optional<unsigned> suites) {
  hminlag::InstanceConfig cfg = hminlag::load_config(path);
  apply_overrides(cfg, g);
  const auto result = hminlag::run_analyze(cfg, suites ? *suites : hminlag::suites_from_config(cfg));
  emit(hminlag::dump_report(result.report), g.out);
  return result.all_pass ? 0 : kExitFailed;
}

int run_mesh(const std::string& path, const GlobalOptions& g, std::string format) {
  hminlag::InstanceConfig cfg = hminlag::load_config(path);
  apply_overrides(cfg, g);
  const hminlag::QuadricSystem sys = cfg.system();
  const hminlag::LatticePack pack = hminlag::make_lattice_pack(sys.exponents());
  std::ostringstream text;
  if (format == "auto") {
    if (sys.n() == 2 && sys.is_cone())
      format = "polyline";
    else if (sys.n() == 2 || (sys.n() == 3 && sys.is_cone() && sys.codim() == 1))
      format = "obj";
    else
      format = "csv";
  }
  if (format == "obj") {
    const auto mesh = hminlag::quotient_surface(sys, pack, cfg.mesh.theta_steps, cfg.mesh.y_steps,
                                                hminlag::axis_projection(sys.n(), cfg.mesh.axes));
    text << "# vertices " << mesh.vertices.size() << " faces " << mesh.faces.size() << " euler "
         << mesh.euler_characteristic() << '\n';
    hminlag::write_obj(text, mesh);
  } else if (format == "polyline") {
    hminlag::write_obj(text, hminlag::projective_curve(sys, cfg.mesh.theta_steps));
  } else if (format == "csv") {
    hminlag::write_point_cloud_csv(text, sys, pack, cfg.sample_count, cfg.seed);
  } else {
    throw hminlag::Error(hminlag::ErrorKind::ConfigInvalid, "--format: expected auto, obj, polyline or csv");
  }
  emit(text.str(), g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian immersions from integer quadric systems: analysis and verification"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  auto* samples_opt = app.add_option("--samples", samples, "override the config sample count");
  app.add_option("--out", g.out, "write the report or mesh to this file instead of stdout");
  std::map<std::string, double> tol_values;
  std::map<std::string, CLI::Option*> tol_opts;
  for (const auto& [name, value] : hminlag::default_tolerances())
    tol_opts[name] = app.add_option("--tol-" + name, tol_values[name], "tolerance '" + name + "'");
  app.fallthrough();

  std::string config_path;
  std::string format = "auto";
  std::map<std::string, std::optional<unsigned>> commands{
      {"analyze", std::nullopt},
      {"verify-cn", hminlag::kSuiteLattice | hminlag::kSuiteCn},
      {"verify-cpn", hminlag::kSuiteLattice | hminlag::kSuiteCpn},
      {"scan-intersections", hminlag::kSuiteScan},
      {"classify", hminlag::kSuiteLattice | hminlag::kSuiteClassify},
  };
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> blurbs{
      {"analyze", "run the suites enabled in the config"},
      {"verify-cn", "lattice plus the C^n checks: Lagrangian, curvature, harmonicity, variation"},
      {"verify-cpn", "lattice plus the CP^{n-1} checks for cone instances"},
      {"scan-intersections", "sample-scale self-intersection scan of the quotient image"},
      {"classify", "lattice summary and topology label of the quotient"},
  };
  for (const auto& [name, suite] : commands) {
    subs[name] = app.add_subcommand(name, blurbs.at(name));
    subs[name]->add_option("config", config_path, "instance config (JSON)")->required();
  }
  auto* mesh = app.add_subcommand("mesh", "export a mesh (OBJ surface, OBJ polyline or CSV point cloud)");
  mesh->add_option("config", config_path, "instance config (JSON)")->required();
  mesh->add_option("--format", format, "auto, obj, polyline or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*seed_opt) g.seed = seed;
  if (*samples_opt) g.samples = samples;
  for (const auto& [name, opt] : tol_opts)
    if (*opt) g.tolerances[name] = tol_values[name];

  try {
    if (mesh->parsed()) return run_mesh(config_path, g, format);
    for (const auto& [name, suite] : commands)
      if (subs[name]->parsed()) return run_report(config_path, g, suite);
  } catch (const hminlag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const auto k = e.kind();
    const bool config_error = k == hminlag::ErrorKind::ConfigInvalid || k == hminlag::ErrorKind::IOError ||
                              k == hminlag::ErrorKind::DimensionUnsupported;
    return config_error ? kExitConfig : kExitFailed;
  }
  return kExitConfig;
}
