#include "hminlag/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

double residual_scale(const Eigen::VectorXd& u) { return std::max(1.0, u.squaredNorm()); }

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return rank;
}

}  // namespace

QuadricSystem::QuadricSystem(ExponentMatrix exponents, Eigen::VectorXd constants)
    : exponents_(std::move(exponents)), constants_(std::move(constants)) {
  if (static_cast<std::size_t>(constants_.size()) != exponents_.codim())
    throw Error(ErrorKind::DimensionMismatch, "constant vector d has length " + std::to_string(constants_.size()) +
                                                  ", expected n-k = " + std::to_string(exponents_.codim()));
  coefficients_.resize(static_cast<Eigen::Index>(n()), static_cast<Eigen::Index>(codim()));
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < codim(); ++j)
      coefficients_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(exponents_(i, j));
}

bool QuadricSystem::is_cone() const { return (constants_.array() == 0.0).all(); }

Eigen::VectorXd residual(const QuadricSystem& sys, const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != sys.n())
    throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  return sys.coefficients().transpose() * u.array().square().matrix() - sys.constants();
}

Eigen::MatrixXd normals_at(const QuadricSystem& sys, const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != sys.n())
    throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  return u.asDiagonal() * sys.coefficients();
}

int smoothness_rank(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_rank) {
  return numerical_rank(normals_at(sys, u), tol_rank);
}

Eigen::MatrixXd tangent_basis(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_rank) {
  const auto n = static_cast<Eigen::Index>(sys.n());
  const auto k = static_cast<Eigen::Index>(sys.k());
  Eigen::MatrixXd normals = normals_at(sys, u);
  if (numerical_rank(normals, tol_rank) < static_cast<int>(sys.codim()))
    throw Error(ErrorKind::SingularPoint, "normal frame is rank deficient");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(normals);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, normals.cols());

  Eigen::MatrixXd basis(n, k);
  Eigen::Index found = 0;
  for (Eigen::Index c = 0; c < n && found < k; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, c);
    // two passes of classical Gram-Schmidt keep the result orthogonal to 1e-16
    for (int pass = 0; pass < 2; ++pass) {
      v -= q * (q.transpose() * v);
      if (found > 0) v -= basis.leftCols(found) * (basis.leftCols(found).transpose() * v);
    }
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    basis.col(found++) = v / norm;
  }
  if (found < k) throw Error(ErrorKind::SingularPoint, "could not complete tangent basis");
  return basis;
}

bool on_variety(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_residual) {
  return residual(sys, u).norm() <= tol_residual * residual_scale(u);
}

ProjectionResult newton_project(const QuadricSystem& sys, const Eigen::VectorXd& guess,
                                const VarietyTolerances& tol) {
  ProjectionResult out{guess, 0};
  Eigen::VectorXd& u = out.u;
  for (;;) {
    const Eigen::VectorXd res = residual(sys, u);
    if (res.norm() <= tol.residual * residual_scale(u)) return out;
    if (out.iterations >= tol.max_iter)
      throw Error(ErrorKind::NoConvergence, "Gauss-Newton did not converge in " + std::to_string(tol.max_iter) +
                                                " iterations (|residual| = " + std::to_string(res.norm()) + ")");
    // J = 2 N^T, minimum norm step -J^T (J J^T)^{-1} res
    const Eigen::MatrixXd jac = 2.0 * normals_at(sys, u).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    if (s.size() == 0 || s(s.size() - 1) <= tol.rank * std::max(1.0, smax))
      throw Error(ErrorKind::SingularJacobian, "Jacobian of the residual is rank deficient");
    u -= svd.solve(res);
    ++out.iterations;
    if (!u.allFinite()) throw Error(ErrorKind::NoConvergence, "Gauss-Newton diverged");
  }
}

std::vector<Eigen::VectorXd> sample_points(const QuadricSystem& sys, std::size_t count, std::uint64_t seed,
                                           const SamplingOptions& options) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  if (count == 0) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(sys.n());
  const bool cone = sys.is_cone();
  const std::size_t max_attempts = count * static_cast<std::size_t>(std::max(1, options.attempts_per_sample));
  std::size_t attempts = 0;
  std::size_t too_far = 0;

  while (out.size() < count) {
    if (++attempts > max_attempts) {
      std::string msg = "accepted " + std::to_string(out.size()) + " of " + std::to_string(count) + " samples";
      if (too_far > attempts / 2) msg += "; most candidates exceeded r_max, M is probably unbounded";
      throw Error(ErrorKind::SamplingExhausted, msg);
    }
    Eigen::VectorXd guess(n);
    for (Eigen::Index i = 0; i < n; ++i) guess(i) = gauss(rng);
    Eigen::Index pinned = -1;
    if (options.axis_fraction > 0.0 && unit(rng) < options.axis_fraction) {
      pinned = std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng);
      guess(pinned) = 0.0;
    }
    if (cone) {
      const double norm = guess.norm();
      if (norm == 0.0) continue;
      guess /= norm;
    }
    Eigen::VectorXd u;
    try {
      u = newton_project(sys, guess, options.tol).u;
    } catch (const Error&) {
      continue;
    }
    if (cone) {
      const double norm = u.norm();
      if (norm < 1e-6) continue;
      u /= norm;
    }
    if (u.norm() > options.tol.r_max) {
      ++too_far;
      continue;
    }
    bool near_axis = false;
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != pinned && std::abs(u(i)) <= options.tol.u_floor) near_axis = true;
    if (near_axis) continue;
    if (smoothness_rank(sys, u, options.tol.rank) < static_cast<int>(sys.codim())) continue;
    if (!on_variety(sys, u, options.tol.residual)) continue;
    out.push_back(std::move(u));
  }
  return out;
}

VarietyChart::VarietyChart(const QuadricSystem& sys, Eigen::VectorXd base, double tol_rank)
    : VarietyChart(sys, base, tangent_basis(sys, base, tol_rank)) {}

VarietyChart::VarietyChart(const QuadricSystem& sys, Eigen::VectorXd base, Eigen::MatrixXd directions)
    : sys_(&sys), base_(std::move(base)), directions_(std::move(directions)), normals_(normals_at(sys, base_)) {}

Eigen::VectorXd VarietyChart::point(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd start = base_ + directions_ * x;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(normals_.cols());
  double last_step = INFINITY;
  for (int it = 0; it < 60; ++it) {
    const Eigen::VectorXd u = start + normals_ * c;
    const Eigen::VectorXd res = residual(*sys_, u);
    const Eigen::MatrixXd jac = 2.0 * normals_at(*sys_, u).transpose() * normals_;
    const Eigen::VectorXd step = jac.fullPivLu().solve(res);
    if (!step.allFinite()) break;
    c -= step;
    const double size = step.norm();
    // run until the update stops shrinking so the chart is smooth to rounding
    if (size <= 1e-15 * std::max(1.0, c.norm()) || (size >= last_step && size < 1e-12)) {
      return start + normals_ * c;
    }
    last_step = size;
  }
  throw Error(ErrorKind::ChartFailure, "graph chart Newton solve failed to converge");
}

Eigen::MatrixXd VarietyChart::jacobian(const Eigen::VectorXd& u) const {
  // residual(base + T x + N c(x)) = 0  =>  dc/dx = -(J N)^{-1} J T, J = 2 N(u)^T
  const Eigen::MatrixXd jac = normals_at(*sys_, u).transpose();
  const Eigen::MatrixXd dc = -(jac * normals_).fullPivLu().solve(jac * directions_);
  return directions_ + normals_ * dc;
}

}  // namespace hminlag
