#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// <a, b> = sum a_i conj(b_i) = (a, b) - i omega(a, b).
Complex hermitian_product(const CVector& a, const CVector& b);
double real_product(const CVector& a, const CVector& b);
/// omega(a, b) = -Im <a, b>; equals dx ^ dy on each complex line.
double symplectic_form(const CVector& a, const CVector& b);

/// A point of M x R^{n-k} together with its image z = phi(u, y).
struct ImmersionPoint {
  Eigen::VectorXd u;
  Eigen::VectorXd y;
  CVector z;
};

/// pi (e_j, y) for every j.
Eigen::VectorXd torus_phases(const QuadricSystem& sys, const Eigen::VectorXd& y);
/// z_j = u_j exp(i pi (e_j, y)).
CVector phi(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);
ImmersionPoint make_point(const QuadricSystem& sys, Eigen::VectorXd u, Eigen::VectorXd y);

/// Tangent frame of phi at (u, y): X_s from an orthonormal tangent basis of M,
/// Y_j = d phi / d y_j.
struct FrameBundle {
  std::vector<CVector> x;
  std::vector<CVector> y;
  Eigen::MatrixXd g;        // Re <X_s, X_t>
  Eigen::MatrixXd g_torus;  // Re <Y_i, Y_j>
  Eigen::MatrixXcd cross;   // <Y_j, X_s>, (n-k) x k

  std::vector<CVector> all() const;
};

FrameBundle frame_at(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                     double tol_rank = 1e-9);
/// pi^2 sum_i e_{is} e_{ij} u_i^2.
Eigen::MatrixXd torus_gram_closed_form(const QuadricSystem& sys, const Eigen::VectorXd& u);

/// max over pairs |omega(V_a, V_b)|.
double symplectic_defect(std::span<const CVector> frame);
double lagrangian_defect(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);
/// max |<Y_j, X_s>| over the cross block.
double cross_block_defect(const FrameBundle& frame);

struct LagrangianAngle {
  double value = 0.0;        // in [0, 2 pi)
  Eigen::VectorXd gradient;  // d beta / d y_j = pi e_j
};

/// beta(y) = pi (e, y) + (n-k) pi / 2 (mod 2 pi).
LagrangianAngle lagrangian_angle(const IntVector& sum, const Eigen::VectorXd& y);
LagrangianAngle lagrangian_angle(const QuadricSystem& sys, const Eigen::VectorXd& y);

/// H = J psi_*(grad beta) for a tangent frame V_a of a Lagrangian immersion
/// and the coefficients d beta(V_a).
CVector mean_curvature_from_angle(std::span<const CVector> frame, const Eigen::VectorXd& dbeta);
/// Angle route on the quadric immersion, using the torus block only.
CVector mean_curvature_from_angle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);

using ImmersionMap = std::function<CVector(const Eigen::VectorXd&)>;

/// Trace of the second fundamental form of xi -> F(xi) at xi0 (no 1/dim),
/// from central finite differences with per-coordinate steps.
CVector mean_curvature_fd(const ImmersionMap& map, const Eigen::VectorXd& xi0, const Eigen::VectorXd& steps);

/// Finite-difference oracle on the chart (tangent-plane graph chart of M) x y.
CVector mean_curvature_oracle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                              double h_fd = 1e-5);

/// Samples of one factor for product constructions: image points, tangent
/// frames and d beta coefficients in the frame's coordinates.
struct FactorSample {
  CVector z;
  std::vector<CVector> frame;
  Eigen::VectorXd dbeta;
  double beta = 0.0;
};

FactorSample factor_sample(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);

/// L_1 x L_2 in C^{n_1} x C^{n_2}: concatenated coordinates, block frame,
/// summed angle. A factor with empty z acts as a point.
FactorSample product_sample(const FactorSample& a, const FactorSample& b);
std::vector<FactorSample> product_immersion(std::span<const FactorSample> a, std::span<const FactorSample> b);

}  // namespace hminlag
