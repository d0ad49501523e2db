// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hminlag/error.hpp"
#include "hminlag/harmonic.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/mesh.hpp"
#include "hminlag/projective.hpp"
#include "hminlag/quotient.hpp"

using namespace hminlag;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances, fixed here once.
constexpr double kTolLagrangian = 1e-10;
constexpr double kTolCrossBlock = 1e-10;
constexpr double kNegativeControlFloor = 1e-2;
constexpr double kTolHarmonic = 1e-6;
constexpr double kMinObservedOrder = 1.99;  // log2 of the per-doubling ratio
constexpr double kTolVariation = 1e-4;
constexpr double kTolCurvatureZero = 1e-4;
constexpr double kTolCurvatureRel = 1e-4;
constexpr double kMinCurvatureNorm = 0.1;
constexpr double kTolSubmersion = 1e-8;
constexpr double kTolCpCurvature = 1e-3;
constexpr double kCpCurvatureFloor = 1e-2;
constexpr double kTolOrbit = 1e-9;
constexpr double kTolCollision = 1e-8;
constexpr double kCollisionLocalization = 1e-4;
constexpr double kChartFloor = 0.1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s:%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool rows_equal(const LatticeBasis& b, const std::vector<std::vector<Rational>>& expected) {
  return b.rows == expected;
}

std::string format_basis(const LatticeBasis& b) {
  std::string out;
  for (const auto& row : b.rows) {
    out += "(";
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i].to_string();
    out += ")";
  }
  return out;
}

struct Named {
  std::string name;
  QuadricSystem sys;
};

std::vector<Named> free_action_fixtures() {
  return {{"ellipse", fixtures::ellipse()},
          {"ellipsoid(1,2,3)", fixtures::ellipsoid({1, 2, 3})},
          {"sphere_cone(n=3)", fixtures::sphere_cone(3)},
          {"sphere_cone(n=4)", fixtures::sphere_cone(4)},
          {"weighted_sphere_cone", fixtures::sphere_cone_weighted()},
          {"klein", fixtures::klein_cone()}};
}

// Example 1 global chart under x -> (x0, x1 + c sin 2 pi x0): a chart in which
// the discretization error is not identically zero.
ParametrizedImmersion sheared(const ParametrizedImmersion& chart, double c) {
  return reparametrize(
      chart,
      [c](const Eigen::VectorXd& x) {
        Eigen::VectorXd o = x;
        o(1) += c * std::sin(2 * kPi * x(0));
        return o;
      },
      [c](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j = Eigen::MatrixXd::Identity(x.size(), x.size());
        j(1, 0) = 2 * kPi * c * std::cos(2 * kPi * x(0));
        return j;
      },
      chart.lower, chart.upper);
}

void check_refinement(Outcome& o, const ParametrizedImmersion& chart, int coarse, int levels) {
  const RefinementStudy study = harmonicity_refinement(chart, coarse, levels);
  o.detail << " refinement, order >= " << kMinObservedOrder << " required:";
  for (std::size_t i = 0; i < study.ratios.size(); ++i) {
    const double order = std::log2(study.ratios[i]);
    o.detail << " " << study.nodes[i] - 1 << "->" << study.nodes[i + 1] - 1 << ": ratio " << study.ratios[i]
             << " (order " << order << ")";
    o.require(order >= kMinObservedOrder, "observed order " + std::to_string(order));
  }
}

}  // namespace

int main() {
  report(1, "lattice exactness", [](Outcome& o) {
    const auto ellipse = make_lattice_pack(fixtures::ellipse().exponents());
    o.require(rows_equal(ellipse.lattice, {{Rational(1)}}) && rows_equal(ellipse.dual, {{Rational(1)}}), "ellipse Lambda = Lambda* = Z");
    o.require(ellipse.gamma.size() == 2, "ellipse |Gamma| = 2");
    for (int n : {3, 4}) {
      const auto sphere_cone = make_lattice_pack(fixtures::sphere_cone(n).exponents());
      o.require(rows_equal(sphere_cone.dual, {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(-1, 2)}}),
                "sphere_cone dual basis (1/2,1/2), (1/2,-1/2)");
      o.require(rows_equal(sphere_cone.lattice, {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}}),
                "sphere_cone lattice basis (1,1), (1,-1)");
      o.require(sphere_cone.gamma.size() == 4, "sphere_cone |Gamma| = 4");
    }
    const auto klein = make_lattice_pack(fixtures::klein_cone().exponents());
    o.require(rows_equal(klein.lattice, {{Rational(1)}}) && rows_equal(klein.dual, {{Rational(1)}}) && klein.gamma.size() == 2,
              "klein Lambda = Lambda* = Z, |Gamma| = 2");
    o.detail << " ellipse Lambda* " << format_basis(ellipse.dual) << ", sphere_cone Lambda* "
             << format_basis(make_lattice_pack(fixtures::sphere_cone(3).exponents()).dual) << ", klein Lambda* "
             << format_basis(klein.dual) << ", |Gamma| = 2, 4, 2";
  });

  report(2, "free action", [](Outcome& o) {
    for (const auto& f : free_action_fixtures()) {
      const auto pack = make_lattice_pack(f.sys.exponents());
      bool witnessed = pack.free_action.free;
      for (std::size_t g = 1; g < pack.gamma.size(); ++g) witnessed = witnessed && pack.free_action.witnesses[g].has_value();
      o.require(witnessed, f.name + " witnesses");
      std::size_t distinct = 0;
      for (const auto& p : fixtures::cover_samples(f.sys, pack, 1000, 11)) {
        try {
          orbit(f.sys, pack, p, kTolOrbit);
          ++distinct;
        } catch (const Error&) {
        }
      }
      o.require(distinct == 1000, f.name + " orbit distinctness");
    }
    o.detail << " 6 fixtures x 1000 orbits, tol " << kTolOrbit;
  });

  report(3, "Lagrangian property", [](Outcome& o) {
    double worst_lag = 0, worst_cross = 0, weakest_control = INFINITY;
    for (const auto& f : free_action_fixtures()) {
      const auto pack = make_lattice_pack(f.sys.exponents());
      for (const auto& p : fixtures::cover_samples(f.sys, pack, 1000, 21)) {
        const FrameBundle fr = frame_at(f.sys, p.u, p.y);
        worst_lag = std::max(worst_lag, symplectic_defect(fr.all()));
        worst_cross = std::max(worst_cross, cross_block_defect(fr));
      }
    }
    const QuadricSystem ellipse = fixtures::ellipse();
    const auto pack1 = make_lattice_pack(ellipse.exponents());
    for (const auto& p : fixtures::cover_samples(ellipse, pack1, 200, 22)) {
      FrameBundle fr = frame_at(ellipse, p.u, p.y);
      fr.y[0] += Complex(0.0, 0.1) * fr.x[0];
      weakest_control = std::min(weakest_control, symplectic_defect(fr.all()));
    }
    o.require(worst_lag <= kTolLagrangian, "symplectic defect");
    o.require(worst_cross <= kTolCrossBlock, "cross block");
    o.require(weakest_control > kNegativeControlFloor, "negative control");
    o.detail << " max omega " << sci(worst_lag) << ", max cross " << sci(worst_cross) << ", perturbed frame min "
             << sci(weakest_control);
  });

  report(4, "H-minimality", [](Outcome& o) {
    const QuadricSystem ellipse = fixtures::ellipse();
    const auto pack = make_lattice_pack(ellipse.exponents());
    const ParametrizedImmersion chart = global_chart(ellipse, pack);
    const double defect = harmonicity_defect(chart, GridSpec::uniform(chart.lower, chart.upper, 64));
    o.require(defect <= kTolHarmonic, "64x64 harmonicity");
    o.detail << " 64x64 defect " << sci(defect) << ";";
    check_refinement(o, sheared(chart, 0.1), 64, 2);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s)
      worst = std::max(worst, hamiltonian_variation_check(ellipse, pack, 64, TrigPolynomial::random(2, 3, 4, 100 + s)));
    o.require(worst <= kTolVariation, "Hamiltonian variation");
    o.detail << "; max |variation| over 5 f " << sci(worst);
  });

  report(5, "minimality iff e = 0", [](Outcome& o) {
    const QuadricSystem klein = fixtures::klein_cone();
    const auto pack6 = make_lattice_pack(klein.exponents());
    double worst6 = 0.0;
    for (const auto& p : fixtures::cover_samples(klein, pack6, 200, 31, kChartFloor))
      worst6 = std::max(worst6, mean_curvature_oracle(klein, p.u, p.y).norm());
    const QuadricSystem ellipse = fixtures::ellipse();
    const auto pack1 = make_lattice_pack(ellipse.exponents());
    double worst_rel = 0.0, smallest = INFINITY;
    for (const auto& p : fixtures::cover_samples(ellipse, pack1, 200, 32, kChartFloor)) {
      const CVector h = mean_curvature_from_angle(ellipse, p.u, p.y);
      worst_rel = std::max(worst_rel, (h - mean_curvature_oracle(ellipse, p.u, p.y)).norm() / (1.0 + h.norm()));
      smallest = std::min(smallest, h.norm());
    }
    o.require(worst6 <= kTolCurvatureZero, "klein oracle");
    o.require(worst_rel <= kTolCurvatureRel, "ellipse angle vs oracle");
    o.require(smallest > kMinCurvatureNorm, "ellipse |H| bounded below");
    o.detail << " klein max |H| " << sci(worst6) << ", ellipse max rel diff " << sci(worst_rel) << ", ellipse min |H| "
             << sci(smallest);
  });

  report(6, "Hopf / Fubini-Study consistency", [](Outcome& o) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    double metric = 0, symp = 0;
    for (int n : {2, 3}) {
      for (int trial = 0; trial < 500; ++trial) {
        CVector p(n);
        for (auto& c : p) c = Complex(g(rng), g(rng));
        p /= p.norm();
        std::vector<CVector> frame;
        for (int a = 0; a < 2 * n - 2; ++a) {
          CVector v(n);
          for (auto& c : v) c = Complex(g(rng), g(rng));
          frame.push_back(horizontal_component(p, v));
        }
        const SubmersionDefect d = submersion_isometry_check(p, frame);
        metric = std::max(metric, d.metric);
        symp = std::max(symp, d.symplectic);
      }
    }
    o.require(metric <= kTolSubmersion && symp <= kTolSubmersion, "submersion defects");
    o.detail << " 500 frames each for n = 2, 3: metric " << sci(metric) << ", symplectic " << sci(symp);
  });

  report(7, "CP minimality", [](Outcome& o) {
    auto norms = [](const QuadricSystem& sys) {
      const auto pack = make_lattice_pack(sys.exponents());
      std::vector<double> v;
      for (const auto& p : fixtures::cover_samples(sys, pack, 100, 51, kChartFloor))
        v.push_back(cp_mean_curvature_norm(sys, p.u, p.y));
      return v;
    };
    const auto minimal = norms(fixtures::weighted_cone(1, 1, 2));
    const auto control = norms(fixtures::weighted_cone(1, 1, 3));
    const double hi = *std::max_element(minimal.begin(), minimal.end());
    const double lo = *std::min_element(control.begin(), control.end());
    o.require(minimal.size() == 100 && hi <= kTolCpCurvature, "m = (1,1,2)");
    o.require(lo > kCpCurvatureFloor, "m = (1,1,3) control");
    o.detail << " (1,1,2) max |H| " << sci(hi) << ", (1,1,3) min |H| " << sci(lo);
  });

  report(8, "self-intersection localization", [](Outcome& o) {
    auto scan = [](const QuadricSystem& sys, std::uint64_t seed) {
      const auto pack = make_lattice_pack(sys.exponents());
      const auto samples = scan_samples(sys, pack, 5000, seed);
      return std::make_pair(samples, self_intersection_scan(sys, pack, samples, kTolCollision));
    };
    const auto [s3, c3] = scan(fixtures::sphere_cone(3), 61);
    const auto [s4, c4] = scan(fixtures::sphere_cone(4), 62);
    const auto [s2, c2] = scan(fixtures::ellipsoid({1, 1, 1, 1}), 63);
    o.require(c3.empty() && c4.empty(), "sphere_cone collisions");
    o.require(c2.empty(), "ellipsoid sphere collisions");
    const auto [s1, c1] = scan(fixtures::ellipse(), 64);
    bool localized = !c1.empty(), circle_pair = true;
    for (const auto& c : c1) {
      localized = localized && c.min_abs_u < kCollisionLocalization;
      const CoverPoint& a = s1[c.first];
      const CoverPoint& b = s1[c.second];
      // {(0, u2, y)} against {(0, -u2, y + 1/2)}
      const double shift = std::fmod(std::abs(b.y(0) - a.y(0)), 1.0);
      circle_pair = circle_pair && std::abs(a.u(0)) < kCollisionLocalization && std::abs(b.u(0)) < kCollisionLocalization &&
                    a.u(1) * b.u(1) < 0 && std::abs(shift - 0.5) < 1e-9;
    }
    o.require(localized, "ellipse collisions near u_j = 0");
    o.require(circle_pair, "ellipse collisions are the circle pair");
    o.detail << " sphere_cone(n=3,4) " << c3.size() + c4.size() << ", ellipsoid sphere " << c2.size() << ", ellipse " << c1.size()
             << " pairs, all on u1 = 0 with opposite u2 and y offset 1/2";
  });

  report(9, "topology labels", [](Outcome& o) {
    auto label = [](const QuadricSystem& sys) { return classify_quotient(sys, make_lattice_pack(sys.exponents())); };
    o.require(label(fixtures::ellipse()) == TopologyLabel{TopologyKind::KleinBottle, 2}, "ellipse Klein bottle");
    o.require(label(fixtures::ellipsoid({1, 1, 1, 1})) == TopologyLabel{TopologyKind::SphereTimesCircle, 4},
              "ellipsoid odd sphere");
    o.require(label(fixtures::sphere_cone(3)) == TopologyLabel{TopologyKind::SphereTimesTorus, 3}, "sphere_cone n = 3");
    o.require(label(fixtures::sphere_cone(5)) == TopologyLabel{TopologyKind::SphereTimesTorus, 5}, "sphere_cone n = 5");
    o.require(label(fixtures::sphere_cone_weighted()) == TopologyLabel{TopologyKind::KleinTimesCircle, 3}, "weighted_sphere_cone");
    const QuadricSystem ellipse = fixtures::ellipse();
    const SurfaceMesh mesh =
        quotient_surface(ellipse, make_lattice_pack(ellipse.exponents()), 128, 64, axis_projection(2, {0, 1, 2}));
    o.require(mesh.euler_characteristic() == 0 && mesh.is_closed(), "ellipse mesh");
    o.detail << " ellipse " << describe(label(ellipse)) << ", ellipsoid(n=4) " << describe(label(fixtures::ellipsoid({1, 1, 1, 1})))
             << ", sphere_cone(n=3) " << describe(label(fixtures::sphere_cone(3))) << ", weighted_sphere_cone "
             << describe(label(fixtures::sphere_cone_weighted())) << ", mesh V-E+F = " << mesh.euler_characteristic();
  });

  report(10, "product construction (torus of three circles)", [](Outcome& o) {
    const std::vector<double> radii{1.0, 0.7, 1.3};
    std::vector<QuadricSystem> circles;
    for (double r : radii) circles.push_back(fixtures::circle(r));
    std::vector<LatticePack> packs;
    for (const auto& c : circles) packs.push_back(make_lattice_pack(c.exponents()));

    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    double worst_lag = 0.0;
    for (int s = 0; s < 1000; ++s) {
      std::vector<FactorSample> acc;
      for (std::size_t i = 0; i < circles.size(); ++i) {
        Eigen::VectorXd u(1), y(1);
        u << radii[i];
        y << unit(rng);
        const FactorSample f = factor_sample(circles[i], u, y);
        acc = acc.empty() ? std::vector<FactorSample>{f} : product_immersion(acc, std::vector<FactorSample>{f});
      }
      worst_lag = std::max(worst_lag, symplectic_defect(acc.front().frame));
    }
    o.require(worst_lag <= kTolLagrangian, "product symplectic defect");

    ParametrizedImmersion chart = global_chart(circles[0], packs[0]);
    for (std::size_t i = 1; i < circles.size(); ++i) chart = product_chart(chart, global_chart(circles[i], packs[i]));
    const double defect = harmonicity_defect(chart, GridSpec::uniform(chart.lower, chart.upper, 64));
    o.require(defect <= kTolHarmonic, "64^3 harmonicity");
    o.detail << " max omega " << sci(worst_lag) << " (no M-directions, cross block empty); 64^3 defect " << sci(defect)
             << ";";
    check_refinement(o, sheared(chart, 0.1), 32, 2);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s)
      worst = std::max(worst, std::abs(hamiltonian_variation(chart, TrigPolynomial::random(3, 3, 4, 200 + s), 24)));
    o.require(worst <= kTolVariation, "Hamiltonian variation");
    o.detail << "; max |variation| " << sci(worst);
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
