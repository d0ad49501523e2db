#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/immersion.hpp"
#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace hminlag {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using MetricField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using TangentField = std::function<std::vector<CVector>(const Eigen::VectorXd&)>;

/// An immersion given on a coordinate box, with its tangent vectors d F / d xi_a
/// and Lagrangian angle expressed in the same coordinates.
struct ParametrizedImmersion {
  std::size_t dim = 0;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  /// true when F is periodic in every coordinate over [lower, upper]
  bool periodic = false;
  ImmersionMap map;
  TangentField tangents;
  ScalarField angle;

  Eigen::MatrixXd metric(const Eigen::VectorXd& xi) const;
};

/// Uniform tensor grid with `nodes[a]` points per axis including both ends.
struct GridSpec {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<int> nodes;

  static GridSpec uniform(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, int nodes_per_axis);
  double step(std::size_t axis) const;
};

/// max over interior nodes of |(1/sqrt G) d_a (sqrt G G^{ab} d_b f)|, flux form
/// with the metric sampled at face midpoints.
double laplace_beltrami_max(const MetricField& metric, const ScalarField& f, const GridSpec& grid);

double harmonicity_defect(const ParametrizedImmersion& immersion, const GridSpec& grid);

struct RefinementStudy {
  std::vector<int> nodes;
  std::vector<double> defects;
  /// defects[i] / defects[i+1]
  std::vector<double> ratios;
};

/// Doubles the resolution `levels` times starting from `coarse` intervals.
/// Throws MeshTooCoarse if some refinement fails to decrease a defect that is
/// still above 1e-10 (below that the scheme is exact up to rounding).
RefinementStudy harmonicity_refinement(const ParametrizedImmersion& immersion, int coarse_intervals, int levels);

/// Sum of c * prod_a trig(2 pi p_a xi_a), trig in {cos, sin}, on the unit box.
class TrigPolynomial {
 public:
  struct Term {
    double coeff = 0.0;
    std::vector<int> freq;
    std::vector<bool> sine;
  };

  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static TrigPolynomial random(std::size_t dim, int max_freq, int term_count, std::uint64_t seed);

  double value(const Eigen::VectorXd& xi) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& xi) const;
  const std::vector<Term>& terms() const noexcept { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// d/dt vol(F + t W_f) at t = 0 over the periodic box, where W_f = -J psi_*(grad f)
/// is the Hamiltonian field with omega(W_f, .) = df on L. Trapezoidal rule with
/// `nodes_per_axis` samples per period; f is given in the unit-box coordinates
/// xi' = (xi - lower) / (upper - lower).
double hamiltonian_variation(const ParametrizedImmersion& immersion, const TrigPolynomial& f, int nodes_per_axis);

double immersion_volume(const ParametrizedImmersion& immersion, int nodes_per_axis);

/// Global periodic chart of M x T for systems where one exists: plane conics
/// that are ellipses (n = 2, k = 1) and finite point sets (k = 0). Coordinates
/// are xi = (theta / 2 pi, t) with y = 2 sum_i t_i b*_i, all in [0, 1).
ParametrizedImmersion global_chart(const QuadricSystem& sys, const LatticePack& pack);

/// Graph chart of M at `base` times the y-box [y0, y0 + 2 b*] in dual-lattice
/// coordinates: xi = (x in [-half_width, half_width]^k, t in [0, 1]^{n-k}).
ParametrizedImmersion local_chart(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                                  double half_width);

ParametrizedImmersion product_chart(const ParametrizedImmersion& a, const ParametrizedImmersion& b);

/// Pull back along a diffeomorphism of the coordinate box.
ParametrizedImmersion reparametrize(const ParametrizedImmersion& immersion,
                                    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> to_old,
                                    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian,
                                    Eigen::VectorXd lower, Eigen::VectorXd upper);

/// Radial graph perturbation F (1 + eps rho(xi)); tangents by differentiation
/// of rho. Not Lagrangian in general; used as a comparison surface.
ParametrizedImmersion radial_perturbation(const ParametrizedImmersion& immersion, double eps,
                                          const TrigPolynomial& rho);

/// Hamiltonian variation for a quadric system through its global chart;
/// DimensionUnsupported unless n = 2.
double hamiltonian_variation_check(const QuadricSystem& sys, const LatticePack& pack, int nodes_per_axis,
                                   const TrigPolynomial& f);

/// Harmonicity of beta for a quadric system. Uses the global chart when one
/// exists and a graph chart at `base` otherwise.
double harmonicity_defect(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                          int nodes_per_axis);

}  // namespace hminlag
