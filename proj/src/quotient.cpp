#include "hminlag/quotient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "hminlag/error.hpp"
#include "hminlag/immersion.hpp"

namespace hminlag {
namespace {

int parity_sign(const Rational& t) {
  if (!t.is_integer()) throw Error(ErrorKind::Unsupported, "pairing with a dual vector is not an integer");
  return t.num() % 2 == 0 ? 1 : -1;
}

Eigen::MatrixXd scan_projection(Eigen::Index dim) {
  std::mt19937_64 rng(0x51f7ull);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = gauss(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  return q.leftCols(std::min<Eigen::Index>(3, dim)).transpose();
}

Eigen::VectorXd real_coordinates(const CVector& z) {
  Eigen::VectorXd q(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    q(2 * i) = z(i).real();
    q(2 * i + 1) = z(i).imag();
  }
  return q;
}

// index of the single coefficient whose sign differs from the rest, or -1
int lone_opposite_index(const Eigen::VectorXd& col) {
  int pos = 0, neg = 0, last_pos = -1, last_neg = -1;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (col(i) > 0) {
      ++pos;
      last_pos = static_cast<int>(i);
    } else if (col(i) < 0) {
      ++neg;
      last_neg = static_cast<int>(i);
    } else {
      return -1;
    }
  }
  if (neg == 1 && pos >= 1) return last_neg;
  if (pos == 1 && neg >= 1) return last_pos;
  return -1;
}

// For the sphere-cone product family: the coordinate whose sign separates the two components.
int product_split_index(const QuadricSystem& sys) {
  const Eigen::MatrixXd& c = sys.coefficients();
  int split = -1;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    if (c(i, 1) == -c(i, 0)) {
      if (split >= 0) return -1;
      split = static_cast<int>(i);
    } else if (c(i, 1) != c(i, 0)) {
      return -1;
    }
  }
  return split;
}

}  // namespace

GammaAction gamma_action(const QuadricSystem& sys, const LatticePack& pack, std::size_t index) {
  const RationalVector& g = pack.gamma.elements.at(index);
  GammaAction a;
  for (std::size_t j = 0; j < sys.n(); ++j) a.signs.push_back(parity_sign(pairing(g, sys.exponents().row(j))));
  a.shift.resize(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) a.shift(static_cast<Eigen::Index>(i)) = g[i].to_double();
  return a;
}

CoverPoint apply_gamma(const GammaAction& action, const CoverPoint& p) {
  CoverPoint q = p;
  for (std::size_t j = 0; j < action.signs.size(); ++j) q.u(static_cast<Eigen::Index>(j)) *= action.signs[j];
  q.y += action.shift;
  return q;
}

Eigen::VectorXd reduce_torus(const LatticePack& pack, const Eigen::VectorXd& y) {
  const std::vector<double> c = pack.dual_coordinates(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  Eigen::VectorXd out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    double v = std::fmod(c[i], 2.0);
    if (v < 0) v += 2.0;
    if (v >= 2.0) v = 0.0;
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

double torus_distance(const LatticePack& pack, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd diff = a - b;
  const std::vector<double> c =
      pack.dual_coordinates(std::span<const double>(diff.data(), static_cast<std::size_t>(diff.size())));
  double worst = 0.0;
  for (double v : c) worst = std::max(worst, std::abs(v - 2.0 * std::round(v / 2.0)));
  return worst;
}

bool same_cover_point(const LatticePack& pack, const CoverPoint& a, const CoverPoint& b, double tol) {
  return (a.u - b.u).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.u.norm()) && torus_distance(pack, a.y, b.y) <= tol;
}

bool in_same_orbit(const QuadricSystem& sys, const LatticePack& pack, const CoverPoint& a, const CoverPoint& b,
                   double tol) {
  for (std::size_t g = 0; g < pack.gamma.size(); ++g)
    if (same_cover_point(pack, apply_gamma(gamma_action(sys, pack, g), a), b, tol)) return true;
  return false;
}

std::vector<CoverPoint> orbit(const QuadricSystem& sys, const LatticePack& pack, const CoverPoint& p, double tol) {
  std::vector<CoverPoint> out;
  for (std::size_t g = 0; g < pack.gamma.size(); ++g) {
    CoverPoint q = apply_gamma(gamma_action(sys, pack, g), p);
    for (std::size_t h = 0; h < out.size(); ++h)
      if (same_cover_point(pack, out[h], q, tol))
        throw Error(ErrorKind::NonFreeWitness, "Gamma elements " + std::to_string(h) + " and " + std::to_string(g) +
                                                   " give the same point");
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<CoverPoint> scan_samples(const QuadricSystem& sys, const LatticePack& pack, std::size_t count,
                                     std::uint64_t seed, double axis_fraction, int y_grid,
                                     const VarietyTolerances& tol) {
  SamplingOptions opts;
  opts.tol = tol;
  opts.axis_fraction = axis_fraction;
  const std::vector<Eigen::VectorXd> us = sample_points(sys, count, seed, opts);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> cell(0, 2 * y_grid - 1);
  std::vector<CoverPoint> out;
  for (const auto& u : us) {
    std::vector<double> c(sys.codim());
    for (auto& v : c) v = static_cast<double>(cell(rng)) / y_grid;
    const std::vector<double> y = pack.from_dual_coordinates(c);
    out.push_back(CoverPoint{u, Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))});
  }
  return out;
}

std::vector<CollisionPair> self_intersection_scan(const QuadricSystem& sys, const LatticePack& pack,
                                                  const std::vector<CoverPoint>& samples, double tol) {
  const Eigen::MatrixXd proj = scan_projection(static_cast<Eigen::Index>(2 * sys.n()));
  std::vector<Eigen::VectorXd> images;
  std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> cells;
  std::vector<std::array<std::int64_t, 3>> keys;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    images.push_back(real_coordinates(phi(sys, samples[i].u, samples[i].y)));
    const Eigen::VectorXd p = proj * images.back();
    std::array<std::int64_t, 3> key{0, 0, 0};
    for (Eigen::Index a = 0; a < p.size(); ++a) key[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor(p(a) / tol));
    cells[key].push_back(i);
    keys.push_back(key);
  }
  std::vector<CollisionPair> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<std::size_t> partners;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          const auto it = cells.find({keys[i][0] + dx, keys[i][1] + dy, keys[i][2] + dz});
          if (it == cells.end()) continue;
          for (std::size_t j : it->second)
            if (j > i) partners.push_back(j);
        }
    std::sort(partners.begin(), partners.end());
    for (std::size_t j : partners) {
      const double dist = (images[i] - images[j]).norm();
      if (dist >= tol) continue;
      if (in_same_orbit(sys, pack, samples[i], samples[j], 1e-9)) continue;
      out.push_back(CollisionPair{i, j, dist,
                                  std::min(samples[i].u.cwiseAbs().minCoeff(), samples[j].u.cwiseAbs().minCoeff())});
    }
  }
  return out;
}

std::string to_string(const TopologyLabel& label) {
  const std::string d = "(" + std::to_string(label.dim) + ")";
  switch (label.kind) {
    case TopologyKind::KleinBottle: return "KleinBottle" + d;
    case TopologyKind::SphereTimesCircle: return "SphereTimesCircle" + d;
    case TopologyKind::KleinTimesCircle: return "KleinTimesCircle" + d;
    case TopologyKind::SphereTimesTorus: return "SphereTimesTorus" + d;
    case TopologyKind::Torus: return "Torus" + d;
    case TopologyKind::Unknown: break;
  }
  return "Unknown";
}

std::string describe(const TopologyLabel& label) {
  auto sphere = [](int d) { return "S^" + std::to_string(d); };
  auto klein = [](int d) { return d == 2 ? std::string("K") : "K^" + std::to_string(d); };
  switch (label.kind) {
    case TopologyKind::KleinBottle: return klein(label.dim);
    case TopologyKind::SphereTimesCircle: return sphere(label.dim - 1) + " x S^1";
    case TopologyKind::KleinTimesCircle: return klein(label.dim - 1) + " x S^1";
    case TopologyKind::SphereTimesTorus: return sphere(label.dim - 2) + " x S^1 x S^1";
    case TopologyKind::Torus: return "T^" + std::to_string(label.dim);
    case TopologyKind::Unknown: break;
  }
  return "unknown";
}

Family recognize_family(const QuadricSystem& sys) {
  const Eigen::MatrixXd& c = sys.coefficients();
  const Eigen::VectorXd& d = sys.constants();
  if (sys.k() == 0) {
    const Eigen::VectorXd squares = c.transpose().fullPivLu().solve(d);
    return (squares.array() > 0.0).all() ? Family::PointSet : Family::Other;
  }
  if (sys.codim() == 1) {
    const double sign = d(0) > 0 ? 1.0 : (d(0) < 0 ? -1.0 : 0.0);
    if (sign != 0.0 && ((c.col(0) * sign).array() > 0.0).all()) return Family::Ellipsoid;
    return Family::Other;
  }
  if (sys.codim() == 2 && d(0) > 0 && d(1) == 0 && (c.col(0).array() > 0.0).all() && product_split_index(sys) >= 0)
    return Family::SphereConeProduct;
  return Family::Other;
}

int orientation_character(const QuadricSystem& sys, const LatticePack& pack, std::size_t gamma_index) {
  const GammaAction a = gamma_action(sys, pack, gamma_index);
  switch (recognize_family(sys)) {
    case Family::PointSet:
      return 1;
    case Family::Ellipsoid:
      return std::accumulate(a.signs.begin(), a.signs.end(), 1, std::multiplies<>());
    case Family::SphereConeProduct: {
      const auto split = static_cast<std::size_t>(product_split_index(sys));
      int ch = 1;
      for (std::size_t i = 0; i < a.signs.size(); ++i)
        if (i != split) ch *= a.signs[i];
      return ch;
    }
    case Family::Other:
      break;
  }
  throw Error(ErrorKind::Unsupported, "orientation character is only defined for recognized families");
}

TopologyLabel classify_quotient(const QuadricSystem& sys, const LatticePack& pack) {
  if (!pack.free_action.free) return {};
  const int n = static_cast<int>(sys.n());
  switch (recognize_family(sys)) {
    case Family::PointSet:
      return {TopologyKind::Torus, n};
    case Family::Ellipsoid:
      return orientation_character(sys, pack, 1) > 0 ? TopologyLabel{TopologyKind::SphereTimesCircle, n}
                                                     : TopologyLabel{TopologyKind::KleinBottle, n};
    case Family::SphereConeProduct: {
      const auto split = static_cast<std::size_t>(product_split_index(sys));
      std::optional<std::size_t> stabilizer;
      bool swaps = false;
      for (std::size_t g = 1; g < pack.gamma.size(); ++g) {
        if (gamma_action(sys, pack, g).signs[split] > 0)
          stabilizer = g;
        else
          swaps = true;
      }
      // both components must be exchanged by some element, else the quotient is disconnected
      if (!swaps || !stabilizer) return {};
      return orientation_character(sys, pack, *stabilizer) > 0 ? TopologyLabel{TopologyKind::SphereTimesTorus, n}
                                                               : TopologyLabel{TopologyKind::KleinTimesCircle, n};
    }
    case Family::Other:
      break;
  }
  return {};
}

GammaAction projective_generator(const QuadricSystem& sys) {
  if (!sys.is_cone() || sys.codim() != 1)
    throw Error(ErrorKind::Unsupported, "projective classification needs a single-equation cone");
  const int m = lone_opposite_index(sys.coefficients().col(0));
  if (m < 0) throw Error(ErrorKind::Unsupported, "cone needs exactly one coefficient of the opposite sign");
  const auto& e = sys.exponents();
  std::int64_t g = 0;
  for (std::size_t i = 0; i < sys.n(); ++i) g = std::gcd(g, e(i, 0) - e(static_cast<std::size_t>(m), 0));
  GammaAction a;
  for (std::size_t i = 0; i < sys.n(); ++i)
    a.signs.push_back(((e(i, 0) - e(static_cast<std::size_t>(m), 0)) / g) % 2 == 0 ? 1 : -1);
  a.shift = Eigen::VectorXd::Constant(1, 1.0 / static_cast<double>(g));
  return a;
}

TopologyLabel classify_projective_quotient(const QuadricSystem& sys) {
  GammaAction gen;
  try {
    gen = projective_generator(sys);
  } catch (const Error&) {
    return {};
  }
  const int ch = std::accumulate(gen.signs.begin(), gen.signs.end(), 1, std::multiplies<>());
  const int n = static_cast<int>(sys.n());
  if (n == 2) return ch < 0 ? TopologyLabel{TopologyKind::Torus, 1} : TopologyLabel{};
  return ch > 0 ? TopologyLabel{TopologyKind::SphereTimesCircle, n - 1} : TopologyLabel{TopologyKind::KleinBottle, n - 1};
}

}  // namespace hminlag
