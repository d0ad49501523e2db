#include "hminlag/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "hminlag/error.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/quotient.hpp"

namespace hminlag {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Index map on a uniform theta grid induced by (cos, sin) -> (s1 cos, s2 sin).
std::function<int(int)> theta_sign_map(int s1, int s2, int steps) {
  if (s1 > 0 && s2 > 0) return [](int i) { return i; };
  if (s1 < 0 && s2 < 0) return [steps](int i) { return (i + steps / 2) % steps; };
  if (s1 < 0) return [steps](int i) { return ((steps / 2 - i) % steps + steps) % steps; };
  return [steps](int i) { return (steps - i) % steps; };
}

// Columns periodic, rows glued to row 0 through `seam` after the last row.
SurfaceMesh glued_grid(int cols, int rows, const std::function<std::array<double, 3>(int, int)>& position,
                       const std::function<int(int)>& seam) {
  SurfaceMesh mesh;
  auto id = [cols](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(i); };
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) mesh.vertices.push_back(position(i, j));
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      const int i1 = (i + 1) % cols;
      const std::size_t a = id(i, j), b = id(i1, j);
      const std::size_t c = j + 1 < rows ? id(i1, j + 1) : id(seam(i1), 0);
      const std::size_t d = j + 1 < rows ? id(i, j + 1) : id(seam(i), 0);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  return mesh;
}

std::array<double, 3> project(const Eigen::MatrixXd& proj, const CVector& z) {
  Eigen::VectorXd q(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    q(2 * i) = z(i).real();
    q(2 * i + 1) = z(i).imag();
  }
  const Eigen::Vector3d p = proj * q;
  return {p(0), p(1), p(2)};
}

std::array<double, 3> projector_coordinates(const CVector& z) {
  const CVector p = z / z.norm();
  const Complex p01 = p(0) * std::conj(p(1)), p12 = p(1) * std::conj(p(2)), p02 = p(0) * std::conj(p(2));
  return {std::sqrt(2.0) * p01.real(), std::sqrt(2.0) * p12.real(), std::sqrt(2.0) * p02.imag()};
}

// Unit point on the u_m > 0 component of a single-equation cone, at angle theta
// around the other two coordinates (n = 3).
Eigen::VectorXd cone_link_point(const Eigen::VectorXd& coeff, int m, double theta) {
  const double sign = coeff(m) < 0 ? 1.0 : -1.0;
  Eigen::VectorXd u(3);
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == m) continue;
    const double a = sign * coeff(i);
    u(i) = (slot++ == 0 ? std::cos(theta) : std::sin(theta)) / std::sqrt(a);
  }
  u(m) = 1.0 / std::sqrt(std::abs(coeff(m)));
  return u / u.norm();
}

int opposite_index(const QuadricSystem& sys) {
  const GammaAction gen = projective_generator(sys);
  const Eigen::VectorXd& c = sys.coefficients().col(0);
  int pos = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) pos += c(i) > 0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if ((c(i) > 0) == (pos == 1)) return static_cast<int>(i);
  (void)gen;
  return -1;
}

}  // namespace

std::size_t SurfaceMesh::edge_count() const {
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = f[static_cast<std::size_t>(e)], b = f[static_cast<std::size_t>((e + 1) % 3)];
      edges[{std::min(a, b), std::max(a, b)}]++;
    }
  return edges.size();
}

long SurfaceMesh::euler_characteristic() const {
  return static_cast<long>(vertices.size()) - static_cast<long>(edge_count()) + static_cast<long>(faces.size());
}

bool SurfaceMesh::is_closed() const {
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = f[static_cast<std::size_t>(e)], b = f[static_cast<std::size_t>((e + 1) % 3)];
      edges[{std::min(a, b), std::max(a, b)}]++;
    }
  for (const auto& [edge, count] : edges)
    if (count != 2) return false;
  return !faces.empty();
}

Eigen::MatrixXd axis_projection(std::size_t n, const std::array<int, 3>& axes) {
  const auto dim = static_cast<int>(2 * n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, dim);
  for (int r = 0; r < 3; ++r) {
    const int a = axes[static_cast<std::size_t>(r)];
    if (a < 0 || a >= dim) throw Error(ErrorKind::ConfigInvalid, "mesh.axes: axis " + std::to_string(a) + " out of range");
    for (int q = 0; q < r; ++q)
      if (axes[static_cast<std::size_t>(q)] == a) throw Error(ErrorKind::ConfigInvalid, "mesh.axes: repeated axis");
    p(r, a) = 1.0;
  }
  return p;
}

SurfaceMesh quotient_surface(const QuadricSystem& sys, const LatticePack& pack, int theta_steps, int y_steps,
                             const Eigen::MatrixXd& projection) {
  if (theta_steps < 4 || y_steps < 2 || theta_steps % 2 != 0)
    throw Error(ErrorKind::ConfigInvalid, "mesh.resolution: need an even theta count >= 4 and y count >= 2");

  if (sys.n() == 2 && sys.k() == 1 && recognize_family(sys) == Family::Ellipsoid) {
    const double ra = std::sqrt(sys.constants()(0) / sys.coefficients()(0, 0));
    const double rb = std::sqrt(sys.constants()(0) / sys.coefficients()(1, 0));
    const GammaAction g = gamma_action(sys, pack, 1);
    // t in [0, 1/2): y = 2 t b* covers half the torus; the other half is the gamma image
    auto position = [&](int i, int j) {
      const double th = 2 * kPi * i / theta_steps;
      Eigen::VectorXd u(2), y(1);
      u << ra * std::cos(th), rb * std::sin(th);
      y << g.shift(0) * j / y_steps;
      return project(projection, phi(sys, u, y));
    };
    return glued_grid(theta_steps, y_steps, position, theta_sign_map(g.signs[0], g.signs[1], theta_steps));
  }
  if (sys.n() == 2 && sys.k() == 0 && recognize_family(sys) == Family::PointSet) {
    const Eigen::VectorXd u = sys.coefficients().transpose().fullPivLu().solve(sys.constants()).array().sqrt();
    auto position = [&](int i, int j) {
      const std::vector<double> c{2.0 * i / theta_steps, 2.0 * j / y_steps};
      const std::vector<double> y = pack.from_dual_coordinates(c);
      return project(projection, phi(sys, u, Eigen::Map<const Eigen::VectorXd>(y.data(), 2)));
    };
    return glued_grid(theta_steps, y_steps, position, [](int i) { return i; });
  }
  if (sys.n() == 3 && sys.is_cone() && sys.codim() == 1) {
    const GammaAction gen = projective_generator(sys);
    const int m = opposite_index(sys);
    std::vector<int> others;
    for (int i = 0; i < 3; ++i)
      if (i != m) others.push_back(i);
    auto position = [&](int i, int j) {
      const Eigen::VectorXd u = cone_link_point(sys.coefficients().col(0), m, 2 * kPi * i / theta_steps);
      Eigen::VectorXd y(1);
      y << gen.shift(0) * j / y_steps;
      return projector_coordinates(phi(sys, u, y));
    };
    return glued_grid(theta_steps, y_steps, position,
                      theta_sign_map(gen.signs[static_cast<std::size_t>(others[0])],
                                     gen.signs[static_cast<std::size_t>(others[1])], theta_steps));
  }
  throw Error(ErrorKind::DimensionUnsupported,
              "surface export needs n = 2 (plane ellipse or point set) or an n = 3 single-equation cone");
}

std::array<double, 3> hopf_to_sphere(const Eigen::VectorXcd& z) {
  const Eigen::VectorXcd p = z / z.norm();
  const Complex w = p(0) * std::conj(p(1));
  return {2 * w.real(), 2 * w.imag(), std::norm(p(0)) - std::norm(p(1))};
}

Polyline projective_curve(const QuadricSystem& sys, int steps) {
  if (steps < 3) throw Error(ErrorKind::ConfigInvalid, "mesh.resolution: need at least 3 points");
  if (sys.n() != 2) throw Error(ErrorKind::DimensionUnsupported, "projective curve export needs n = 2");
  const GammaAction gen = projective_generator(sys);
  const int m = opposite_index(sys);
  const int other = 1 - m;
  Eigen::VectorXd u(2);
  u(other) = 1.0 / std::sqrt(std::abs(sys.coefficients()(other, 0)));
  u(m) = 1.0 / std::sqrt(std::abs(sys.coefficients()(m, 0)));
  u /= u.norm();
  // one generator swaps the two link points when its sign on `other` is -1
  const double period = gen.shift(0) * (gen.signs[static_cast<std::size_t>(other)] < 0 ? 2.0 : 1.0);
  Polyline line;
  for (int i = 0; i < steps; ++i) {
    Eigen::VectorXd y(1);
    y << period * i / steps;
    line.points.push_back(hopf_to_sphere(phi(sys, u, y)));
  }
  return line;
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  for (const auto& v : mesh.vertices) out << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_obj(std::ostream& out, const Polyline& line) {
  for (const auto& v : line.points) out << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
  out << 'l';
  for (std::size_t i = 0; i < line.points.size(); ++i) out << ' ' << i + 1;
  if (line.closed && !line.points.empty()) out << " 1";
  out << '\n';
}

void write_point_cloud_csv(std::ostream& out, const QuadricSystem& sys, const LatticePack& pack,
                           std::size_t samples, std::uint64_t seed) {
  const std::vector<Eigen::VectorXd> us = sample_points(sys, samples, seed);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (std::size_t i = 0; i < sys.n(); ++i) out << (i ? "," : "") << "re_z" << i + 1 << ",im_z" << i + 1;
  out << '\n';
  for (const auto& u : us) {
    std::vector<double> c(sys.codim());
    for (auto& v : c) v = unit(rng);
    const std::vector<double> y = pack.from_dual_coordinates(c);
    const CVector z = phi(sys, u, Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
    for (Eigen::Index i = 0; i < z.size(); ++i) out << (i ? "," : "") << fmt(z(i).real()) << ',' << fmt(z(i).imag());
    out << '\n';
  }
}

}  // namespace hminlag
