#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hminlag/harmonic.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

/// Unit vector of C^n.
struct SpherePoint {
  CVector p;
};

/// Homogeneous coordinates of a point of CP^{n-1} in normal form: unit norm and
/// zero phase on the first coordinate with modulus above 1e-8.
struct ProjectivePoint {
  CVector z;
};

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b, double tol = 1e-10);

/// phi(u, y) / |phi(u, y)| for a cone instance.
SpherePoint cone_to_sphere(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);

ProjectivePoint hopf_project(const CVector& p);

/// xi - (xi, p) p - (xi, ip) ip with real inner products.
CVector horizontal_component(const CVector& p, const CVector& xi);

/// Inhomogeneous chart w_i = z_i / z_c (i != c) around the largest coordinate.
struct AffineChart {
  Eigen::Index pivot = 0;
  Eigen::Index n = 0;

  static AffineChart around(const CVector& p);
  CVector coordinates(const CVector& z) const;
  /// Differential of z -> w applied to xi at z.
  CVector pushforward(const CVector& z, const CVector& xi) const;
};

/// Hermitian Fubini-Study form of holomorphic sectional curvature 4 in an
/// affine chart: h(a, b) = ((1+|w|^2) <a, b> - <a, w><w, b>) / (1+|w|^2)^2.
Complex fs_hermitian(const CVector& w, const CVector& a, const CVector& b);
double fs_metric(const CVector& w, const CVector& a, const CVector& b);
double fs_kahler(const CVector& w, const CVector& a, const CVector& b);

struct SubmersionDefect {
  double metric = 0.0;
  double symplectic = 0.0;
};

/// Compares FS metric and Kahler form on h_* of the frame with the flat
/// metric and omega upstairs, all pairs including the diagonal.
SubmersionDefect submersion_isometry_check(const CVector& p, const std::vector<CVector>& frame);

/// Tangent frame of the link M_1 x T at a unit cone point: an orthonormal
/// basis of T_u M orthogonal to u, then the torus vectors Y_j.
std::vector<CVector> link_frame(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                                double tol_rank = 1e-9);

struct LinkSample {
  Eigen::VectorXd u;  // unit norm
  Eigen::VectorXd y;
};

/// max |Omega_FS(h_* V_a, h_* V_b)| over link frames.
double psi2_lagrangian_defect(const QuadricSystem& sys, const std::vector<LinkSample>& samples);

/// Lagrangian angle of the projective immersion, inherited from the cone.
LagrangianAngle cp_angle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y);

/// Points (s u, y + delta) of the link with the same Hopf image as (u, y):
/// delta runs over the dual of the lattice spanned by e_j - e_1, with
/// coordinates in {0, .., 3}^{n-k}; s_j = exp(-i pi (e_j - e_1, delta)).
std::vector<LinkSample> fiber_preimages(const QuadricSystem& sys, const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& y);

/// Parametrized link immersion into S^{2n-1}: graph chart of the link over
/// its tangent space at `base`, normalized, times a y-box in dual-lattice
/// coordinates. The link is horizontal, so its induced metric is the
/// Fubini-Study metric of the projected surface.
ParametrizedImmersion link_chart(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                                 double half_width);

/// Mean curvature (trace of the second fundamental form) of psi_2 in CP^{n-1}
/// at the image of (u, y), in the affine chart around the image point, with
/// Christoffel symbols from finite differences of the chart metric. Returns
/// the FS length of the normal vector.
double cp_mean_curvature_norm(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                              double h_fd = 1e-4);

}  // namespace hminlag
