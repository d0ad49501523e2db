#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "hminlag/error.hpp"
#include "hminlag/harmonic.hpp"

using namespace hminlag;

namespace {

constexpr double kPi = std::numbers::pi;

MetricField flat(int dim) {
  return [dim](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(dim, dim); };
}

}  // namespace

TEST(LaplaceBeltrami, LinearFunctionsAreHarmonic) {
  const GridSpec grid = GridSpec::uniform(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1), 16);
  const double v = laplace_beltrami_max(flat(2), [](const Eigen::VectorXd& x) { return 3 * x(0) - 2 * x(1); }, grid);
  EXPECT_LT(v, 1e-10);
}

TEST(LaplaceBeltrami, QuadraticControl) {
  const GridSpec grid = GridSpec::uniform(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1), 16);
  const double v = laplace_beltrami_max(flat(2), [](const Eigen::VectorXd& x) { return x(1) * x(1); }, grid);
  EXPECT_NEAR(v, 2.0, 1e-8);
}

TEST(LaplaceBeltrami, HarmonicOnCurvedMetric) {
  // log r is harmonic in the plane; in polar coordinates the metric is
  // diag(1, r^2) and f = log r must give a small defect.
  const GridSpec grid = GridSpec::uniform(Eigen::Vector2d(1, 0), Eigen::Vector2d(2, 1), 32);
  MetricField polar = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
    g(1, 1) = x(0) * x(0);
    return g;
  };
  const double harm = laplace_beltrami_max(polar, [](const Eigen::VectorXd& x) { return std::log(x(0)); }, grid);
  const double ctrl = laplace_beltrami_max(polar, [](const Eigen::VectorXd& x) { return x(0); }, grid);
  EXPECT_LT(harm, 1e-3);
  EXPECT_GT(ctrl, 0.4);  // Laplacian of r is 1/r
}

TEST(Harmonicity, EllipseGlobalChart) {
  const auto sys = fixtures::ellipse();
  const auto pack = make_lattice_pack(sys.exponents());
  const auto chart = global_chart(sys, pack);
  EXPECT_LT(harmonicity_defect(chart, GridSpec::uniform(chart.lower, chart.upper, 32)), 1e-6);
}

TEST(Harmonicity, LocalChartOnSphereCone) {
  const auto sys = fixtures::sphere_cone(3);
  const auto pack = make_lattice_pack(sys.exponents());
  const Eigen::VectorXd base = sample_points(sys, 1, 2).front();
  EXPECT_LT(harmonicity_defect(sys, pack, base, 16), 1e-6);
}

TEST(TrigPolynomial, GradientMatchesFiniteDifference) {
  const TrigPolynomial f = TrigPolynomial::random(3, 3, 4, 9);
  const Eigen::Vector3d x(0.13, 0.71, 0.4);
  const Eigen::VectorXd g = f.gradient(x);
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d a = x, b = x;
    a(i) += 1e-6;
    b(i) -= 1e-6;
    EXPECT_NEAR(g(i), (f.value(a) - f.value(b)) / 2e-6, 1e-6);
  }
}

TEST(Variation, EllipseVanishesForRandomFunctions) {
  const auto sys = fixtures::ellipse();
  const auto pack = make_lattice_pack(sys.exponents());
  for (std::uint64_t s = 0; s < 3; ++s)
    EXPECT_LT(hamiltonian_variation_check(sys, pack, 32, TrigPolynomial::random(2, 3, 4, s)), 1e-4);
  const TrigPolynomial mixed({{1.0, {1, 1}, {false, true}}});  // cos(2 pi x) sin(2 pi y)
  EXPECT_LT(hamiltonian_variation_check(sys, pack, 32, mixed), 1e-4);
}

TEST(Variation, ConstantFunctionGivesZero) {
  const auto sys = fixtures::ellipse();
  const auto chart = global_chart(sys, make_lattice_pack(sys.exponents()));
  EXPECT_EQ(hamiltonian_variation(chart, TrigPolynomial({{2.5, {0, 0}, {false, false}}}), 16), 0.0);
}

TEST(Variation, PerturbedSurfaceIsNotCritical) {
  const auto sys = fixtures::ellipse();
  const auto chart = global_chart(sys, make_lattice_pack(sys.exponents()));
  const auto bent = radial_perturbation(chart, 0.1, TrigPolynomial::random(2, 2, 3, 100));
  EXPECT_GT(std::abs(hamiltonian_variation(bent, TrigPolynomial::random(2, 3, 4, 0), 32)), 1e-2);
}

TEST(Volume, EllipseChart) {
  // Independent midpoint quadrature of |X| |Y| over the ellipse.
  const auto sys = fixtures::ellipse();
  const auto chart = global_chart(sys, make_lattice_pack(sys.exponents()));
  const int n = 4000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = 2 * kPi * (i + 0.5) / n;
    const double u1 = std::cos(th), u2 = std::sin(th) / std::sqrt(2.0);
    const double speed = std::hypot(std::sin(th), std::cos(th) / std::sqrt(2.0));
    total += speed * kPi * std::sqrt(u1 * u1 + 4 * u2 * u2) * (2 * kPi / n);
  }
  // y runs over one period of length 2; the chart covers M x [0, 2) once.
  EXPECT_NEAR(immersion_volume(chart, 128), 2.0 * total, 1e-6 * total);
}

TEST(Refinement, ThrowsWhenDefectGrowsAboveFloor) {
  ParametrizedImmersion p;
  p.dim = 1;
  p.lower = Eigen::VectorXd::Zero(1);
  p.upper = Eigen::VectorXd::Ones(1);
  p.tangents = [](const Eigen::VectorXd&) { return std::vector<CVector>{CVector::Ones(1)}; };
  p.map = [](const Eigen::VectorXd& x) { return CVector::Constant(1, x(0)); };
  // cusp at a grid node: the discrete Laplacian there grows like h^(-3/2)
  p.angle = [](const Eigen::VectorXd& x) { return std::sqrt(std::abs(x(0) - 0.5)); };
  EXPECT_THROW(harmonicity_refinement(p, 4, 2), Error);
}
