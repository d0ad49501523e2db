#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

/// A point of M x R^{n-k}.
struct CoverPoint {
  Eigen::VectorXd u;
  Eigen::VectorXd y;
};

/// gamma acts by u_j -> cos(pi (e_j, gamma)) u_j and y -> y + gamma.
struct GammaAction {
  std::vector<int> signs;
  Eigen::VectorXd shift;
};

GammaAction gamma_action(const QuadricSystem& sys, const LatticePack& pack, std::size_t index);
CoverPoint apply_gamma(const GammaAction& action, const CoverPoint& p);

/// Dual-basis coordinates (b_i, y) reduced into [0, 2).
Eigen::VectorXd reduce_torus(const LatticePack& pack, const Eigen::VectorXd& y);
/// Distance of y - y' to the nearest point of 2 Lambda*, measured in dual-basis coordinates.
double torus_distance(const LatticePack& pack, const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// Same point of M x T^{n-k}, T = R^{n-k} / 2 Lambda*.
bool same_cover_point(const LatticePack& pack, const CoverPoint& a, const CoverPoint& b, double tol);
bool in_same_orbit(const QuadricSystem& sys, const LatticePack& pack, const CoverPoint& a, const CoverPoint& b,
                   double tol);

/// All |Gamma| images of p; NonFreeWitness if two coincide within tol.
std::vector<CoverPoint> orbit(const QuadricSystem& sys, const LatticePack& pack, const CoverPoint& p,
                              double tol = 1e-9);

/// Samples for collision scans: a share of them pinned to a coordinate
/// hyperplane, y drawn from the grid (1 / y_grid) Z in dual-basis coordinates.
std::vector<CoverPoint> scan_samples(const QuadricSystem& sys, const LatticePack& pack, std::size_t count,
                                     std::uint64_t seed, double axis_fraction = 0.25, int y_grid = 16,
                                     const VarietyTolerances& tol = {});

struct CollisionPair {
  std::size_t first = 0;
  std::size_t second = 0;
  double distance = 0.0;
  /// min_j |u_j| over both points
  double min_abs_u = 0.0;
};

/// Pairs (i < j) with |phi(p_i) - phi(p_j)| < tol whose cover points are not
/// in the same Gamma-orbit, in lexicographic order.
std::vector<CollisionPair> self_intersection_scan(const QuadricSystem& sys, const LatticePack& pack,
                                                  const std::vector<CoverPoint>& samples, double tol);

enum class TopologyKind { KleinBottle, SphereTimesCircle, KleinTimesCircle, SphereTimesTorus, Torus, Unknown };

/// KleinBottle(d) = K^d, SphereTimesCircle(d) = S^{d-1} x S^1,
/// KleinTimesCircle(d) = K^{d-1} x S^1, SphereTimesTorus(d) = S^{d-2} x S^1 x S^1,
/// Torus(d) = T^d.
struct TopologyLabel {
  TopologyKind kind = TopologyKind::Unknown;
  int dim = 0;

  friend bool operator==(const TopologyLabel&, const TopologyLabel&) = default;
};

std::string to_string(const TopologyLabel& label);
/// Human-readable product form, e.g. "S^1 x S^1 x S^1".
std::string describe(const TopologyLabel& label);

/// Families with a recognized quotient.
enum class Family { Ellipsoid, SphereConeProduct, PointSet, Other };
Family recognize_family(const QuadricSystem& sys);

/// Degree of the sign map of gamma restricted to M (+1 or -1). Unsupported
/// outside the recognized families.
int orientation_character(const QuadricSystem& sys, const LatticePack& pack, std::size_t gamma_index);

TopologyLabel classify_quotient(const QuadricSystem& sys, const LatticePack& pack);

/// Topology of the image of the link in CP^{n-1} for single-equation cones
/// with exactly one coefficient of the opposite sign; Unknown otherwise.
/// The image is the mapping torus of the sign map of the smallest y-shift
/// that fixes Hopf images, acting on one component of the link.
TopologyLabel classify_projective_quotient(const QuadricSystem& sys);

/// Signs (normalized to +1 on the opposite-sign coordinate) and y-shift of
/// that generator; Unsupported outside the family above.
GammaAction projective_generator(const QuadricSystem& sys);

}  // namespace hminlag
