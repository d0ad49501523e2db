#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/lattice.hpp"

namespace hminlag {

/// Numerical knobs shared by the variety routines.
struct VarietyTolerances {
  double residual = 1e-12;  // relative to max(1, |u|^2)
  double rank = 1e-9;
  double u_floor = 1e-3;
  int max_iter = 100;
  double r_max = 1e3;
};

/// M = { u in R^n : sum_i e_{ij} u_i^2 = d_j, j = 1..n-k }.
class QuadricSystem {
 public:
  QuadricSystem(ExponentMatrix exponents, Eigen::VectorXd constants);

  std::size_t n() const noexcept { return exponents_.n(); }
  std::size_t k() const noexcept { return exponents_.k(); }
  std::size_t codim() const noexcept { return exponents_.codim(); }

  const ExponentMatrix& exponents() const noexcept { return exponents_; }
  const Eigen::VectorXd& constants() const noexcept { return constants_; }
  /// E as a dense n x (n-k) double matrix.
  const Eigen::MatrixXd& coefficients() const noexcept { return coefficients_; }

  bool is_cone() const;

 private:
  ExponentMatrix exponents_;
  Eigen::VectorXd constants_;
  Eigen::MatrixXd coefficients_;
};

Eigen::VectorXd residual(const QuadricSystem& sys, const Eigen::VectorXd& u);
/// Column j is n_j = (e_{1j} u_1, ..., e_{nj} u_n), half the gradient of residual_j.
Eigen::MatrixXd normals_at(const QuadricSystem& sys, const Eigen::VectorXd& u);
int smoothness_rank(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_rank = 1e-9);
/// n x k matrix with orthonormal columns spanning the complement of the normals.
/// Built by Gram-Schmidt of the standard basis against the normal frame.
Eigen::MatrixXd tangent_basis(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_rank = 1e-9);

bool on_variety(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_residual = 1e-12);

struct ProjectionResult {
  Eigen::VectorXd u;
  int iterations = 0;
};

/// Minimum-norm Gauss-Newton projection onto M. Coordinates with u_i = 0 stay
/// exactly zero, which is what lets samplers land on the axis strata.
ProjectionResult newton_project(const QuadricSystem& sys, const Eigen::VectorXd& guess,
                                const VarietyTolerances& tol = {});

struct SamplingOptions {
  VarietyTolerances tol;
  /// Fraction of samples started with one random coordinate pinned to zero.
  /// Those samples bypass the u_floor filter for that coordinate.
  double axis_fraction = 0.0;
  /// Maximum attempts per requested sample before SamplingExhausted.
  int attempts_per_sample = 200;
};

/// Deterministic samples on M; cone samples are scaled to unit norm.
std::vector<Eigen::VectorXd> sample_points(const QuadricSystem& sys, std::size_t count, std::uint64_t seed,
                                           const SamplingOptions& options = {});

/// Local graph chart of M over its tangent plane at `base`:
/// x -> base + T x + N c(x) with residual = 0, c solved by Newton.
class VarietyChart {
 public:
  VarietyChart(const QuadricSystem& sys, Eigen::VectorXd base, double tol_rank = 1e-9);
  /// Same, with a caller-supplied orthonormal set of chart directions.
  VarietyChart(const QuadricSystem& sys, Eigen::VectorXd base, Eigen::MatrixXd directions);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(directions_.cols()); }
  const Eigen::VectorXd& base() const noexcept { return base_; }
  const Eigen::MatrixXd& directions() const noexcept { return directions_; }

  /// Throws Error(ChartFailure) when Newton does not converge.
  Eigen::VectorXd point(const Eigen::VectorXd& x) const;
  /// n x dim Jacobian du/dx at a chart point (implicit differentiation).
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;

 private:
  const QuadricSystem* sys_;
  Eigen::VectorXd base_;
  Eigen::MatrixXd directions_;
  Eigen::MatrixXd normals_;
};

}  // namespace hminlag
