#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "hminlag/config.hpp"
#include "hminlag/error.hpp"
#include "hminlag/mesh.hpp"
#include "hminlag/report.hpp"

using namespace hminlag;

namespace {

nlohmann::json ellipse_doc() {
  return nlohmann::json::parse(R"({"name": "e", "n": 2, "k": 1, "E": [[1], [2]], "d": [1.0],
                                   "sample_count": 40, "scan_count": 200, "seed": 3})");
}

ErrorKind kind_of(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Unsupported;
}

std::string message_of(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Mesh, EllipseQuotientIsAClosedKleinBottle) {
  const auto sys = fixtures::ellipse();
  const SurfaceMesh m = quotient_surface(sys, make_lattice_pack(sys.exponents()), 32, 16, axis_projection(2, {0, 1, 2}));
  EXPECT_EQ(m.euler_characteristic(), 0);
  EXPECT_TRUE(m.is_closed());
  EXPECT_EQ(m.faces.size(), 2u * 32 * 16);
}

TEST(Mesh, ProjectiveImageOfKleinCone) {
  const auto sys = fixtures::klein_cone();
  const SurfaceMesh m = quotient_surface(sys, make_lattice_pack(sys.exponents()), 32, 16, Eigen::MatrixXd());
  EXPECT_EQ(m.euler_characteristic(), 0);
  EXPECT_TRUE(m.is_closed());
}

TEST(Mesh, RejectsBadInput) {
  const auto sys = fixtures::ellipse();
  const auto pack = make_lattice_pack(sys.exponents());
  EXPECT_THROW(axis_projection(2, {0, 0, 1}), Error);
  EXPECT_THROW(axis_projection(2, {0, 1, 4}), Error);
  EXPECT_THROW(quotient_surface(sys, pack, 31, 16, axis_projection(2, {0, 1, 2})), Error);
  const auto big = fixtures::sphere_cone(4);
  EXPECT_THROW(quotient_surface(big, make_lattice_pack(big.exponents()), 32, 16, axis_projection(4, {0, 1, 2})), Error);
}

TEST(Mesh, CliffordCurveIsTheEquator) {
  const Polyline line = projective_curve(fixtures::clifford_cone(), 64);
  ASSERT_GE(line.points.size(), 32u);
  for (const auto& p : line.points) {
    EXPECT_NEAR(p[0] * p[0] + p[1] * p[1] + p[2] * p[2], 1.0, 1e-12);
    EXPECT_NEAR(p[2], 0.0, 1e-12);
  }
}

TEST(Mesh, HopfToSpherePoles) {
  Eigen::VectorXcd z(2);
  z << 1.0, 0.0;
  const auto n = hopf_to_sphere(z);
  EXPECT_NEAR(std::abs(n[2]), 1.0, 1e-15);
}

TEST(Mesh, ObjOutput) {
  SurfaceMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  std::ostringstream out;
  write_obj(out, m);
  EXPECT_NE(out.str().find("f 1 2 3"), std::string::npos);
  EXPECT_FALSE(m.is_closed());
}

TEST(Config, ParsesAndEchoes) {
  const InstanceConfig c = parse_config(ellipse_doc());
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.sample_count, 40u);
  EXPECT_DOUBLE_EQ(c.tol("harmonic"), 1e-6);
  const auto echo = echo_config(c);
  EXPECT_EQ(parse_config(nlohmann::json::parse(echo.dump())).exponents, c.exponents);
}

TEST(Config, FieldErrors) {
  auto doc = ellipse_doc();
  doc["E"] = {{1}};
  EXPECT_EQ(kind_of(doc), ErrorKind::ConfigInvalid);
  doc = ellipse_doc();
  doc["tolerances"] = {{"nonsense", 1.0}};
  EXPECT_NE(message_of(doc).find("tolerances.nonsense"), std::string::npos);
  doc = ellipse_doc();
  doc["tolerances"] = {{"harmonic", -1.0}};
  EXPECT_EQ(kind_of(doc), ErrorKind::ConfigInvalid);
  doc = ellipse_doc();
  doc["k"] = 2;
  EXPECT_EQ(kind_of(doc), ErrorKind::ConfigInvalid);
  doc = ellipse_doc();
  doc["mesh"] = {{"resolution", {0, 4}}};
  EXPECT_EQ(kind_of(doc), ErrorKind::ConfigInvalid);
  doc = nlohmann::json::parse(R"({"n": 3, "k": 1, "E": [[1, 2], [2, 4], [3, 6]], "d": [1, 2]})");
  EXPECT_NE(message_of(doc).find("rows [0, 1, 2]"), std::string::npos);
}

TEST(Config, MissingFileIsAnIOError) {
  try {
    load_config("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IOError);
  }
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"ellipse", "ellipsoid_123", "sphere_cone", "weighted_sphere_cone", "klein_cone", "weighted_cone_112", "failing_control"})
    EXPECT_NO_THROW(load_config(std::string(HMINLAG_CONFIG_DIR) + "/" + name + ".json")) << name;
}

TEST(Report, DeterministicAndPassing) {
  const InstanceConfig c = parse_config(ellipse_doc());
  const unsigned suites = kSuiteLattice | kSuiteCn | kSuiteClassify;
  const AnalysisResult a = run_analyze(c, suites);
  const AnalysisResult b = run_analyze(c, suites);
  EXPECT_EQ(dump_report(a.report), dump_report(b.report));
  EXPECT_TRUE(a.all_pass) << dump_report(a.report);
  EXPECT_EQ(a.report["topology"]["label"], "KleinBottle(2)");
}

TEST(Report, FailureIsRecorded) {
  auto doc = ellipse_doc();
  doc["tolerances"] = {{"lagrangian", 1e-300}, {"harmonic", 1e-30}};
  const AnalysisResult r = run_analyze(parse_config(doc), kSuiteLattice | kSuiteCn);
  EXPECT_FALSE(r.all_pass);
  EXPECT_FALSE(r.failed.empty());
}

TEST(Report, DefectEntry) {
  const auto e = defect_entry({1e-12, 3e-12}, 1e-10);
  EXPECT_DOUBLE_EQ(e["max"].get<double>(), 3e-12);
  EXPECT_DOUBLE_EQ(e["mean"].get<double>(), 2e-12);
  EXPECT_TRUE(e["pass"].get<bool>());
}

TEST(Report, FloatsPrintRoundTrip) {
  nlohmann::ordered_json j;
  j["x"] = 0.1;
  j["y"] = 2.0;
  const std::string s = dump_report(j);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("2.0"), std::string::npos);
}
