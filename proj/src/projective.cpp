#include "hminlag/projective.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

void require_cone(const QuadricSystem& sys) {
  if (!sys.is_cone()) throw Error(ErrorKind::NotACone, "instance has nonzero constants d; no projective image");
}

// Orthonormal basis of T_u M orthogonal to u (the link directions).
Eigen::MatrixXd link_directions(const QuadricSystem& sys, const Eigen::VectorXd& u, double tol_rank) {
  const Eigen::MatrixXd t = tangent_basis(sys, u, tol_rank);
  const Eigen::VectorXd c = t.transpose() * u;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(t.cols(), t.cols());
  return t * q.rightCols(t.cols() - 1);
}

Eigen::VectorXd to_real(const CVector& w) {
  Eigen::VectorXd q(2 * w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    q(2 * i) = w(i).real();
    q(2 * i + 1) = w(i).imag();
  }
  return q;
}

CVector to_complex(const Eigen::VectorXd& q) {
  CVector w(q.size() / 2);
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = Complex(q(2 * i), q(2 * i + 1));
  return w;
}

Eigen::MatrixXd fs_real_metric(const Eigen::VectorXd& q) {
  const CVector w = to_complex(q);
  const Eigen::Index m = q.size();
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a; b < m; ++b)
      g(a, b) = g(b, a) = fs_metric(w, to_complex(Eigen::VectorXd::Unit(m, a)), to_complex(Eigen::VectorXd::Unit(m, b)));
  return g;
}

}  // namespace

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b, double tol) {
  return a.z.size() == b.z.size() && (a.z - b.z).cwiseAbs().maxCoeff() <= tol;
}

SpherePoint cone_to_sphere(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  require_cone(sys);
  const double norm = u.norm();
  if (norm == 0.0) throw Error(ErrorKind::ApexPoint, "the apex u = 0 has no image on the sphere");
  return SpherePoint{phi(sys, u, y) / norm};
}

ProjectivePoint hopf_project(const CVector& p) {
  CVector z = p / p.norm();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > 1e-8) {
      z *= std::conj(z(i)) / std::abs(z(i));
      z(i) = std::abs(z(i));
      break;
    }
  }
  return ProjectivePoint{z};
}

CVector horizontal_component(const CVector& p, const CVector& xi) {
  const CVector ip = Complex(0.0, 1.0) * p;
  return xi - real_product(xi, p) * p - real_product(xi, ip) * ip;
}

AffineChart AffineChart::around(const CVector& p) {
  Eigen::Index pivot = 0;
  const double biggest = p.cwiseAbs().maxCoeff(&pivot);
  if (!(biggest > 0.0)) throw Error(ErrorKind::ChartUnavailable, "all homogeneous coordinates vanish");
  return AffineChart{pivot, p.size()};
}

CVector AffineChart::coordinates(const CVector& z) const {
  CVector w(n - 1);
  for (Eigen::Index i = 0, j = 0; i < n; ++i)
    if (i != pivot) w(j++) = z(i) / z(pivot);
  return w;
}

CVector AffineChart::pushforward(const CVector& z, const CVector& xi) const {
  const Complex zc = z(pivot);
  CVector dw(n - 1);
  for (Eigen::Index i = 0, j = 0; i < n; ++i)
    if (i != pivot) dw(j++) = (xi(i) * zc - z(i) * xi(pivot)) / (zc * zc);
  return dw;
}

Complex fs_hermitian(const CVector& w, const CVector& a, const CVector& b) {
  const double s = 1.0 + w.squaredNorm();
  return (s * hermitian_product(a, b) - hermitian_product(a, w) * hermitian_product(w, b)) / (s * s);
}

double fs_metric(const CVector& w, const CVector& a, const CVector& b) { return fs_hermitian(w, a, b).real(); }

double fs_kahler(const CVector& w, const CVector& a, const CVector& b) { return -fs_hermitian(w, a, b).imag(); }

SubmersionDefect submersion_isometry_check(const CVector& p, const std::vector<CVector>& frame) {
  const AffineChart chart = AffineChart::around(p);
  const CVector w = chart.coordinates(p);
  std::vector<CVector> down;
  for (const auto& v : frame) down.push_back(chart.pushforward(p, v));
  SubmersionDefect out;
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = a; b < frame.size(); ++b) {
      out.metric = std::max(out.metric, std::abs(fs_metric(w, down[a], down[b]) - real_product(frame[a], frame[b])));
      out.symplectic =
          std::max(out.symplectic, std::abs(fs_kahler(w, down[a], down[b]) - symplectic_form(frame[a], frame[b])));
    }
  return out;
}

std::vector<CVector> link_frame(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                                double tol_rank) {
  require_cone(sys);
  const Eigen::MatrixXd dirs = link_directions(sys, u, tol_rank);
  const FrameBundle f = frame_at(sys, u, y, tol_rank);
  const CVector z = phi(sys, u, y);
  CVector ph(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) ph(i) = std::polar(1.0, torus_phases(sys, y)(i));
  std::vector<CVector> out;
  for (Eigen::Index a = 0; a < dirs.cols(); ++a) out.emplace_back(dirs.col(a).cast<Complex>().cwiseProduct(ph));
  out.insert(out.end(), f.y.begin(), f.y.end());
  return out;
}

double psi2_lagrangian_defect(const QuadricSystem& sys, const std::vector<LinkSample>& samples) {
  require_cone(sys);
  double worst = 0.0;
  for (const auto& s : samples) {
    const CVector p = phi(sys, s.u, s.y) / s.u.norm();
    const AffineChart chart = AffineChart::around(p);
    const CVector w = chart.coordinates(p);
    std::vector<CVector> down;
    for (const auto& v : link_frame(sys, s.u / s.u.norm(), s.y)) down.push_back(chart.pushforward(p, v));
    for (std::size_t a = 0; a < down.size(); ++a)
      for (std::size_t b = a + 1; b < down.size(); ++b) worst = std::max(worst, std::abs(fs_kahler(w, down[a], down[b])));
  }
  return worst;
}

LagrangianAngle cp_angle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  require_cone(sys);
  if (u.norm() == 0.0) throw Error(ErrorKind::ApexPoint, "the apex has no projective image");
  return lagrangian_angle(sys, y);
}

std::vector<LinkSample> fiber_preimages(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  require_cone(sys);
  const std::size_t n = sys.n(), r = sys.codim();
  IntMatrix diffs(n - 1, r);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) diffs(i - 1, j) = sys.exponents()(i, j) - sys.exponents()(0, j);
  const IntMatrix hnf = hermite_normal_form(diffs);
  if (hnf.rows() < r)
    throw Error(ErrorKind::Unsupported, "differences e_j - e_1 do not span; fibers are not discrete in y");
  LatticeBasis basis;
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector row;
    for (std::size_t j = 0; j < r; ++j) row.emplace_back(hnf(i, j));
    basis.rows.push_back(std::move(row));
  }
  const LatticeBasis dual = dual_basis(basis);

  std::vector<LinkSample> out;
  std::vector<int> c(r, 0);
  for (;;) {
    RationalVector delta(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) delta[j] = delta[j] + Rational(c[i]) * dual.rows[i][j];
    LinkSample s{u, y};
    for (std::size_t j = 0; j < r; ++j) s.y(static_cast<Eigen::Index>(j)) += delta[j].to_double();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational t = pairing(delta, sys.exponents().row(i)) - pairing(delta, sys.exponents().row(0));
      // t is an integer by construction
      if (t.num() % 2 != 0) s.u(static_cast<Eigen::Index>(i)) = -s.u(static_cast<Eigen::Index>(i));
    }
    out.push_back(std::move(s));
    std::size_t a = 0;
    while (a < r && ++c[a] == 4) c[a++] = 0;
    if (a == r) break;
  }
  return out;
}

ParametrizedImmersion link_chart(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                                 double half_width) {
  require_cone(sys);
  const Eigen::VectorXd unit = base / base.norm();
  const auto chart = std::make_shared<VarietyChart>(sys, unit, link_directions(sys, unit, 1e-9));
  const auto k1 = static_cast<Eigen::Index>(sys.k() - 1);
  const auto r = static_cast<Eigen::Index>(sys.codim());
  Eigen::MatrixXd dy_dt(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) dy_dt(j, i) = 2.0 * pack.dual.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
  const QuadricSystem* s = &sys;
  const IntVector sum = pack.sum;

  ParametrizedImmersion p;
  p.dim = static_cast<std::size_t>(k1 + r);
  p.lower.resize(k1 + r);
  p.upper.resize(k1 + r);
  p.lower.head(k1).setConstant(-half_width);
  p.upper.head(k1).setConstant(half_width);
  p.lower.tail(r).setZero();
  p.upper.tail(r).setOnes();
  auto link_point = [chart](const Eigen::VectorXd& x) {
    const Eigen::VectorXd v = chart->point(x);
    return Eigen::VectorXd(v / v.norm());
  };
  p.map = [s, link_point, dy_dt, k1, r](const Eigen::VectorXd& xi) {
    return phi(*s, link_point(xi.head(k1)), dy_dt * xi.tail(r));
  };
  p.tangents = [s, chart, dy_dt, k1, r](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd v = chart->point(xi.head(k1));
    const double norm = v.norm();
    const Eigen::VectorXd u = v / norm;
    const Eigen::MatrixXd du =
        (Eigen::MatrixXd::Identity(u.size(), u.size()) - u * u.transpose()) * chart->jacobian(v) / norm;
    const Eigen::VectorXd y = dy_dt * xi.tail(r);
    const Eigen::VectorXd phases = torus_phases(*s, y);
    CVector ph(phases.size());
    for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, phases(i));
    std::vector<CVector> t;
    for (Eigen::Index a = 0; a < k1; ++a) t.emplace_back(du.col(a).cast<Complex>().cwiseProduct(ph));
    const FrameBundle f = frame_at(*s, u, y);
    for (Eigen::Index a = 0; a < r; ++a) {
      CVector w = CVector::Zero(u.size());
      for (Eigen::Index j = 0; j < r; ++j) w += dy_dt(j, a) * f.y[static_cast<std::size_t>(j)];
      t.push_back(std::move(w));
    }
    return t;
  };
  p.angle = [sum, dy_dt, r](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd y = dy_dt * xi.tail(r);
    double b = static_cast<double>(r) * std::numbers::pi / 2.0;
    for (Eigen::Index j = 0; j < r; ++j)
      b += std::numbers::pi * static_cast<double>(sum[static_cast<std::size_t>(j)]) * y(j);
    return b;
  };
  return p;
}

double cp_mean_curvature_norm(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                              double h_fd) {
  require_cone(sys);
  const Eigen::VectorXd unit = u / u.norm();
  const VarietyChart chart(sys, unit, link_directions(sys, unit, 1e-9));
  const auto k1 = static_cast<Eigen::Index>(sys.k() - 1);
  const auto r = static_cast<Eigen::Index>(sys.codim());
  const AffineChart affine = AffineChart::around(phi(sys, unit, y));

  auto surface = [&](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd v = chart.point(xi.head(k1));
    const CVector z = phi(sys, v / v.norm(), y + xi.tail(r));
    if (std::abs(z(affine.pivot)) < 1e-3 * z.norm())
      throw Error(ErrorKind::ChartFailure, "sample left the affine chart");
    return to_real(affine.coordinates(z));
  };

  const Eigen::Index d = k1 + r;
  const Eigen::VectorXd f0 = surface(Eigen::VectorXd::Zero(d));
  const Eigen::Index m = f0.size();
  std::vector<Eigen::VectorXd> first(static_cast<std::size_t>(d));
  std::vector<std::vector<Eigen::VectorXd>> second(static_cast<std::size_t>(d),
                                                   std::vector<Eigen::VectorXd>(static_cast<std::size_t>(d)));
  auto at = [&](Eigen::Index a, double sa, Eigen::Index b, double sb) {
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(d);
    xi(a) += sa * h_fd;
    xi(b) += sb * h_fd;
    return surface(xi);
  };
  for (Eigen::Index a = 0; a < d; ++a) {
    const Eigen::VectorXd plus = at(a, 1, a, 0), minus = at(a, -1, a, 0);
    first[static_cast<std::size_t>(a)] = (plus - minus) / (2 * h_fd);
    second[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = (plus - 2 * f0 + minus) / (h_fd * h_fd);
    for (Eigen::Index b = a + 1; b < d; ++b) {
      const Eigen::VectorXd mixed = (at(a, 1, b, 1) - at(a, 1, b, -1) - at(a, -1, b, 1) + at(a, -1, b, -1)) /
                                    (4 * h_fd * h_fd);
      second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mixed;
      second[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = mixed;
    }
  }

  const Eigen::MatrixXd g = fs_real_metric(f0);
  const Eigen::MatrixXd ginv = g.inverse();
  // d g_{mu nu} / d q_sigma by central differences
  const double hm = 1e-6;
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(m));
  for (Eigen::Index s = 0; s < m; ++s) {
    Eigen::VectorXd qp = f0, qm = f0;
    qp(s) += hm;
    qm(s) -= hm;
    dg[static_cast<std::size_t>(s)] = (fs_real_metric(qp) - fs_real_metric(qm)) / (2 * hm);
  }
  auto christoffel = [&](const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    // Gamma^mu_{nu lambda} v^nu w^lambda
    Eigen::VectorXd lowered = Eigen::VectorXd::Zero(m);
    for (Eigen::Index s = 0; s < m; ++s) {
      double acc = 0.0;
      for (Eigen::Index nu = 0; nu < m; ++nu)
        for (Eigen::Index la = 0; la < m; ++la)
          acc += 0.5 * v(nu) * w(la) *
                 (dg[static_cast<std::size_t>(nu)](s, la) + dg[static_cast<std::size_t>(la)](s, nu) -
                  dg[static_cast<std::size_t>(s)](nu, la));
      lowered(s) = acc;
    }
    return Eigen::VectorXd(ginv * lowered);
  };

  Eigen::MatrixXd induced(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      induced(a, b) = first[static_cast<std::size_t>(a)].dot(g * first[static_cast<std::size_t>(b)]);
  const Eigen::MatrixXd iinv = induced.inverse();

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(m);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      acc += iinv(a, b) * (second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +
                           christoffel(first[static_cast<std::size_t>(a)], first[static_cast<std::size_t>(b)]));
  Eigen::VectorXd normal = acc;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      normal -= iinv(a, b) * acc.dot(g * first[static_cast<std::size_t>(a)]) * first[static_cast<std::size_t>(b)];
  return std::sqrt(std::max(0.0, normal.dot(g * normal)));
}

}  // namespace hminlag
