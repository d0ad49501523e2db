#include "hminlag/immersion.hpp"

#include <cmath>
#include <numbers>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  return r;
}

Eigen::MatrixXd gram(std::span<const CVector> frame) {
  const auto d = static_cast<Eigen::Index>(frame.size());
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a; b < d; ++b) g(a, b) = g(b, a) = real_product(frame[a], frame[b]);
  return g;
}

}  // namespace

Complex hermitian_product(const CVector& a, const CVector& b) {
  // Eigen's dot conjugates the first argument
  return b.dot(a);
}

double real_product(const CVector& a, const CVector& b) { return hermitian_product(a, b).real(); }

double symplectic_form(const CVector& a, const CVector& b) { return -hermitian_product(a, b).imag(); }

Eigen::VectorXd torus_phases(const QuadricSystem& sys, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != sys.codim())
    throw Error(ErrorKind::DimensionMismatch, "torus coordinate has wrong dimension");
  return kPi * (sys.coefficients() * y);
}

CVector phi(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  const Eigen::VectorXd ph = torus_phases(sys, y);
  CVector z(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) z(i) = u(i) * std::polar(1.0, ph(i));
  return z;
}

ImmersionPoint make_point(const QuadricSystem& sys, Eigen::VectorXd u, Eigen::VectorXd y) {
  CVector z = phi(sys, u, y);
  return {std::move(u), std::move(y), std::move(z)};
}

std::vector<CVector> FrameBundle::all() const {
  std::vector<CVector> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

FrameBundle frame_at(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                     double tol_rank) {
  const Eigen::MatrixXd tangent = tangent_basis(sys, u, tol_rank);
  const Eigen::VectorXd ph = torus_phases(sys, y);
  const auto n = static_cast<Eigen::Index>(sys.n());
  CVector phase(n);
  for (Eigen::Index i = 0; i < n; ++i) phase(i) = std::polar(1.0, ph(i));

  FrameBundle f;
  for (Eigen::Index s = 0; s < tangent.cols(); ++s) f.x.emplace_back(tangent.col(s).cast<Complex>().cwiseProduct(phase));
  const Complex ipi(0.0, kPi);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(sys.codim()); ++j) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = ipi * sys.coefficients()(i, j) * u(i) * phase(i);
    f.y.push_back(std::move(v));
  }
  f.g = gram(f.x);
  f.g_torus = gram(f.y);
  f.cross.resize(static_cast<Eigen::Index>(f.y.size()), static_cast<Eigen::Index>(f.x.size()));
  for (std::size_t j = 0; j < f.y.size(); ++j)
    for (std::size_t s = 0; s < f.x.size(); ++s)
      f.cross(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s)) = hermitian_product(f.y[j], f.x[s]);
  return f;
}

Eigen::MatrixXd torus_gram_closed_form(const QuadricSystem& sys, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd& e = sys.coefficients();
  return kPi * kPi * (e.transpose() * u.array().square().matrix().asDiagonal() * e);
}

double symplectic_defect(std::span<const CVector> frame) {
  double worst = 0.0;
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = a + 1; b < frame.size(); ++b)
      worst = std::max(worst, std::abs(symplectic_form(frame[a], frame[b])));
  return worst;
}

double lagrangian_defect(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  const auto frame = frame_at(sys, u, y).all();
  return symplectic_defect(frame);
}

double cross_block_defect(const FrameBundle& frame) {
  return frame.cross.size() ? frame.cross.cwiseAbs().maxCoeff() : 0.0;
}

LagrangianAngle lagrangian_angle(const IntVector& sum, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != sum.size())
    throw Error(ErrorKind::DimensionMismatch, "torus coordinate has wrong dimension");
  LagrangianAngle a;
  a.gradient.resize(y.size());
  double value = static_cast<double>(sum.size()) * kPi / 2.0;
  for (std::size_t j = 0; j < sum.size(); ++j) {
    a.gradient(static_cast<Eigen::Index>(j)) = kPi * static_cast<double>(sum[j]);
    value += a.gradient(static_cast<Eigen::Index>(j)) * y(static_cast<Eigen::Index>(j));
  }
  a.value = wrap_angle(value);
  return a;
}

LagrangianAngle lagrangian_angle(const QuadricSystem& sys, const Eigen::VectorXd& y) {
  return lagrangian_angle(sum_vector(sys.exponents()), y);
}

CVector mean_curvature_from_angle(std::span<const CVector> frame, const Eigen::VectorXd& dbeta) {
  if (frame.empty()) return {};
  if (static_cast<std::size_t>(dbeta.size()) != frame.size())
    throw Error(ErrorKind::DimensionMismatch, "d beta has wrong length for frame");
  const Eigen::MatrixXd g = gram(frame);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw Error(ErrorKind::SingularPoint, "induced metric is degenerate");
  const Eigen::VectorXd coeff = ldlt.solve(dbeta);
  CVector grad = CVector::Zero(frame.front().size());
  for (std::size_t a = 0; a < frame.size(); ++a) grad += coeff(static_cast<Eigen::Index>(a)) * frame[a];
  return Complex(0.0, 1.0) * grad;
}

CVector mean_curvature_from_angle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  const FrameBundle f = frame_at(sys, u, y);
  const LagrangianAngle beta = lagrangian_angle(sys, y);
  // block-diagonal metric: grad beta lives in the torus block
  return mean_curvature_from_angle(f.y, beta.gradient);
}

CVector mean_curvature_fd(const ImmersionMap& map, const Eigen::VectorXd& xi0, const Eigen::VectorXd& steps) {
  const Eigen::Index d = xi0.size();
  const CVector f0 = map(xi0);
  std::vector<CVector> plus(d), minus(d), first(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    Eigen::VectorXd xp = xi0, xm = xi0;
    xp(a) += steps(a);
    xm(a) -= steps(a);
    plus[a] = map(xp);
    minus[a] = map(xm);
    first[a] = (plus[a] - minus[a]) / (2.0 * steps(a));
  }
  std::vector<std::vector<CVector>> second(d, std::vector<CVector>(d));
  for (Eigen::Index a = 0; a < d; ++a) {
    second[a][a] = (plus[a] - 2.0 * f0 + minus[a]) / (steps(a) * steps(a));
    for (Eigen::Index b = a + 1; b < d; ++b) {
      auto shifted = [&](double sa, double sb) {
        Eigen::VectorXd x = xi0;
        x(a) += sa * steps(a);
        x(b) += sb * steps(b);
        return map(x);
      };
      second[a][b] = (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4.0 * steps(a) * steps(b));
      second[b][a] = second[a][b];
    }
  }
  const Eigen::MatrixXd g = gram(first);
  const Eigen::MatrixXd ginv = g.inverse();
  if (!ginv.allFinite()) throw Error(ErrorKind::SingularPoint, "chart metric is degenerate");

  auto normal_part = [&](const CVector& v) {
    Eigen::VectorXd proj(d);
    for (Eigen::Index b = 0; b < d; ++b) proj(b) = real_product(first[b], v);
    const Eigen::VectorXd coeff = ginv * proj;
    CVector out = v;
    for (Eigen::Index a = 0; a < d; ++a) out -= coeff(a) * first[a];
    return out;
  };
  CVector h = CVector::Zero(f0.size());
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) h += ginv(a, b) * second[a][b];
  return normal_part(h);
}

CVector mean_curvature_oracle(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y,
                              double h_fd) {
  const VarietyChart chart(sys, u);
  const auto k = static_cast<Eigen::Index>(sys.k());
  const auto r = static_cast<Eigen::Index>(sys.codim());
  ImmersionMap map = [&](const Eigen::VectorXd& xi) {
    return phi(sys, chart.point(xi.head(k)), xi.tail(r));
  };
  Eigen::VectorXd xi0(k + r);
  xi0.head(k).setZero();
  xi0.tail(r) = y;
  Eigen::VectorXd steps(k + r);
  steps.head(k).setConstant(h_fd * std::max(1.0, u.norm()));
  steps.tail(r).setConstant(h_fd);
  return mean_curvature_fd(map, xi0, steps);
}

FactorSample factor_sample(const QuadricSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
  const FrameBundle f = frame_at(sys, u, y);
  FactorSample s;
  s.z = phi(sys, u, y);
  s.frame = f.all();
  const LagrangianAngle beta = lagrangian_angle(sys, y);
  s.dbeta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.frame.size()));
  s.dbeta.tail(beta.gradient.size()) = beta.gradient;
  s.beta = beta.value;
  return s;
}

FactorSample product_sample(const FactorSample& a, const FactorSample& b) {
  const Eigen::Index na = a.z.size(), nb = b.z.size();
  FactorSample out;
  out.z.resize(na + nb);
  out.z << a.z, b.z;
  for (const auto& v : a.frame) {
    CVector w = CVector::Zero(na + nb);
    w.head(na) = v;
    out.frame.push_back(std::move(w));
  }
  for (const auto& v : b.frame) {
    CVector w = CVector::Zero(na + nb);
    w.tail(nb) = v;
    out.frame.push_back(std::move(w));
  }
  out.dbeta.resize(a.dbeta.size() + b.dbeta.size());
  out.dbeta << a.dbeta, b.dbeta;
  out.beta = wrap_angle(a.beta + b.beta);
  return out;
}

std::vector<FactorSample> product_immersion(std::span<const FactorSample> a, std::span<const FactorSample> b) {
  if (a.size() != b.size() && a.size() != 1 && b.size() != 1)
    throw Error(ErrorKind::DimensionMismatch, "factor sample sets must have equal size or size one");
  const std::size_t count = std::max(a.size(), b.size());
  std::vector<FactorSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(product_sample(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]));
  return out;
}

}  // namespace hminlag
