#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> faces;

  std::size_t edge_count() const;
  long euler_characteristic() const;
  /// Every undirected edge is shared by exactly two faces.
  bool is_closed() const;
};

struct Polyline {
  std::vector<std::array<double, 3>> points;
  bool closed = true;
};

/// Rows of a 3 x 2n orthonormal projection picking the listed real axes of
/// C^n = R^{2n} ordered (Re z_1, Im z_1, Re z_2, ...).
Eigen::MatrixXd axis_projection(std::size_t n, const std::array<int, 3>& axes);

/// Surface of the quotient for the two-dimensional cases.
///  * n = 2 plane ellipse: (M x T) / Gamma, theta x y grid over a fundamental
///    domain, seam welded through the sign map of the nonzero element.
///  * n = 2 point set: the torus {u} x T.
///  * n = 3 cone: image in CP^2, vertices from a fixed projection of the
///    Hermitian projector p p^*.
/// `projection` is used for the C^2 cases and ignored otherwise.
SurfaceMesh quotient_surface(const QuadricSystem& sys, const LatticePack& pack, int theta_steps, int y_steps,
                             const Eigen::MatrixXd& projection);

/// Image of a k = 1 cone with n = 2 in CP^1 = S^2 (Hopf coordinates).
Polyline projective_curve(const QuadricSystem& sys, int steps);

/// Point of S^2 for [z_1 : z_2].
std::array<double, 3> hopf_to_sphere(const Eigen::VectorXcd& z);

void write_obj(std::ostream& out, const SurfaceMesh& mesh);
void write_obj(std::ostream& out, const Polyline& line);

/// Point cloud of phi over `samples` random cover points; one row per point,
/// columns re_z1, im_z1, ...
void write_point_cloud_csv(std::ostream& out, const QuadricSystem& sys, const LatticePack& pack,
                           std::size_t samples, std::uint64_t seed);

}  // namespace hminlag
