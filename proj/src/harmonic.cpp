#include "hminlag/harmonic.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundingFloor = 1e-10;

// Visits every multi-index in [begin, end) per axis.
template <typename Fn>
void for_each_index(const std::vector<int>& begin, const std::vector<int>& end, Fn&& fn) {
  const std::size_t d = begin.size();
  std::vector<int> idx = begin;
  for (std::size_t a = 0; a < d; ++a)
    if (begin[a] >= end[a]) return;
  for (;;) {
    fn(idx);
    std::size_t a = 0;
    while (a < d) {
      if (++idx[a] < end[a]) break;
      idx[a] = begin[a];
      ++a;
    }
    if (a == d) return;
  }
}

Eigen::MatrixXd gram_of(const std::vector<CVector>& t) {
  const auto d = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a; b < d; ++b) g(a, b) = g(b, a) = real_product(t[a], t[b]);
  return g;
}

Eigen::MatrixXd torus_jacobian(const LatticePack& pack) {
  // y = 2 B*^T t
  const auto r = static_cast<Eigen::Index>(pack.dual.dim());
  Eigen::MatrixXd m(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) m(j, i) = 2.0 * pack.dual.rows[i][j].to_double();
  return m;
}

CVector unit_phases(const QuadricSystem& sys, const Eigen::VectorXd& y) {
  const Eigen::VectorXd ph = torus_phases(sys, y);
  CVector p(ph.size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) p(i) = std::polar(1.0, ph(i));
  return p;
}

std::vector<CVector> torus_tangents(const QuadricSystem& sys, const Eigen::VectorXd& u, const CVector& phase,
                                    const Eigen::MatrixXd& dy_dt) {
  const auto n = static_cast<Eigen::Index>(sys.n());
  const auto r = static_cast<Eigen::Index>(sys.codim());
  std::vector<CVector> out;
  for (Eigen::Index a = 0; a < r; ++a) {
    CVector v = CVector::Zero(n);
    for (Eigen::Index j = 0; j < r; ++j) {
      if (dy_dt(j, a) == 0.0) continue;
      for (Eigen::Index i = 0; i < n; ++i)
        v(i) += Complex(0.0, kPi * dy_dt(j, a) * sys.coefficients()(i, j) * u(i)) * phase(i);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd ParametrizedImmersion::metric(const Eigen::VectorXd& xi) const { return gram_of(tangents(xi)); }

GridSpec GridSpec::uniform(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, int nodes_per_axis) {
  if (nodes_per_axis < 3) throw Error(ErrorKind::MeshTooCoarse, "grid needs at least 3 nodes per axis");
  return GridSpec{lower, upper, std::vector<int>(static_cast<std::size_t>(lower.size()), nodes_per_axis)};
}

double GridSpec::step(std::size_t axis) const {
  const auto a = static_cast<Eigen::Index>(axis);
  return (upper(a) - lower(a)) / (nodes[axis] - 1);
}

double laplace_beltrami_max(const MetricField& metric, const ScalarField& f, const GridSpec& grid) {
  const std::size_t d = grid.nodes.size();
  for (int n : grid.nodes)
    if (n < 3) throw Error(ErrorKind::MeshTooCoarse, "grid needs at least 3 nodes per axis");

  std::vector<double> h(d);
  std::vector<std::size_t> stride(d);
  std::size_t total = 1;
  for (std::size_t a = 0; a < d; ++a) {
    h[a] = grid.step(a);
    stride[a] = total;
    total *= static_cast<std::size_t>(grid.nodes[a]);
  }
  auto coord = [&](const std::vector<double>& idx) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) x(static_cast<Eigen::Index>(a)) = grid.lower(static_cast<Eigen::Index>(a)) + idx[a] * h[a];
    return x;
  };

  std::vector<double> values(total);
  for_each_index(std::vector<int>(d, 0), grid.nodes, [&](const std::vector<int>& idx) {
    std::size_t flat = 0;
    std::vector<double> p(d);
    for (std::size_t a = 0; a < d; ++a) {
      flat += stride[a] * static_cast<std::size_t>(idx[a]);
      p[a] = idx[a];
    }
    values[flat] = f(coord(p));
  });
  auto at = [&](const std::vector<int>& idx) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < d; ++a) flat += stride[a] * static_cast<std::size_t>(idx[a]);
    return values[flat];
  };

  // sqrt(G) G^{ab} D_b f on the face between idx and idx + e_axis
  auto flux = [&](std::vector<int> idx, std::size_t axis) {
    std::vector<double> mid(d);
    for (std::size_t a = 0; a < d; ++a) mid[a] = idx[a];
    mid[axis] += 0.5;
    const Eigen::MatrixXd g = metric(coord(mid));
    const Eigen::MatrixXd ginv = g.inverse();
    const double vol = std::sqrt(g.determinant());
    Eigen::VectorXd grad(static_cast<Eigen::Index>(d));
    std::vector<int> up = idx;
    up[axis] += 1;
    grad(static_cast<Eigen::Index>(axis)) = (at(up) - at(idx)) / h[axis];
    for (std::size_t b = 0; b < d; ++b) {
      if (b == axis) continue;
      auto central = [&](std::vector<int> base) {
        std::vector<int> p = base, m = base;
        p[b] += 1;
        m[b] -= 1;
        return (at(p) - at(m)) / (2.0 * h[b]);
      };
      grad(static_cast<Eigen::Index>(b)) = 0.5 * (central(idx) + central(up));
    }
    return vol * ginv.row(static_cast<Eigen::Index>(axis)).dot(grad);
  };

  double worst = 0.0;
  std::vector<int> begin(d, 1), end(d);
  for (std::size_t a = 0; a < d; ++a) end[a] = grid.nodes[a] - 1;
  for_each_index(begin, end, [&](const std::vector<int>& idx) {
    std::vector<double> p(idx.begin(), idx.end());
    const double vol = std::sqrt(metric(coord(p)).determinant());
    double div = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<int> down = idx;
      down[a] -= 1;
      div += (flux(idx, a) - flux(down, a)) / h[a];
    }
    worst = std::max(worst, std::abs(div / vol));
  });
  return worst;
}

double harmonicity_defect(const ParametrizedImmersion& immersion, const GridSpec& grid) {
  return laplace_beltrami_max([&](const Eigen::VectorXd& xi) { return immersion.metric(xi); }, immersion.angle,
                              grid);
}

RefinementStudy harmonicity_refinement(const ParametrizedImmersion& immersion, int coarse_intervals, int levels) {
  RefinementStudy study;
  int intervals = coarse_intervals;
  for (int level = 0; level <= levels; ++level, intervals *= 2) {
    const GridSpec grid = GridSpec::uniform(immersion.lower, immersion.upper, intervals + 1);
    study.nodes.push_back(intervals + 1);
    study.defects.push_back(harmonicity_defect(immersion, grid));
  }
  for (std::size_t i = 0; i + 1 < study.defects.size(); ++i) {
    const double ratio = study.defects[i + 1] > 0.0 ? study.defects[i] / study.defects[i + 1] : INFINITY;
    study.ratios.push_back(ratio);
    // below the rounding floor a flat defect means convergence, not a coarse mesh
    if (!(ratio > 1.0) && study.defects[i] > kRoundingFloor)
      throw Error(ErrorKind::MeshTooCoarse, "harmonicity defect did not decrease from " +
                                                std::to_string(study.nodes[i]) + " to " +
                                                std::to_string(study.nodes[i + 1]) + " nodes per axis");
  }
  return study;
}

TrigPolynomial TrigPolynomial::random(std::size_t dim, int max_freq, int term_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(0, max_freq);
  std::bernoulli_distribution coin(0.5);
  std::vector<Term> terms;
  for (int t = 0; t < term_count; ++t) {
    Term term;
    term.coeff = coeff(rng);
    bool nonconstant = false;
    for (std::size_t a = 0; a < dim; ++a) {
      term.freq.push_back(freq(rng));
      term.sine.push_back(coin(rng));
      nonconstant = nonconstant || term.freq.back() != 0;
    }
    if (!nonconstant && dim > 0) term.freq[0] = 1;
    terms.push_back(std::move(term));
  }
  return TrigPolynomial(std::move(terms));
}

double TrigPolynomial::value(const Eigen::VectorXd& xi) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double prod = t.coeff;
    for (std::size_t a = 0; a < t.freq.size(); ++a) {
      const double arg = 2.0 * kPi * t.freq[a] * xi(static_cast<Eigen::Index>(a));
      prod *= t.sine[a] ? std::sin(arg) : std::cos(arg);
    }
    sum += prod;
  }
  return sum;
}

Eigen::VectorXd TrigPolynomial::gradient(const Eigen::VectorXd& xi) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(xi.size());
  for (const auto& t : terms_) {
    const std::size_t d = t.freq.size();
    std::vector<double> val(d), der(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double w = 2.0 * kPi * t.freq[a];
      const double arg = w * xi(static_cast<Eigen::Index>(a));
      val[a] = t.sine[a] ? std::sin(arg) : std::cos(arg);
      der[a] = t.sine[a] ? w * std::cos(arg) : -w * std::sin(arg);
    }
    for (std::size_t a = 0; a < d; ++a) {
      double prod = t.coeff * der[a];
      for (std::size_t b = 0; b < d; ++b)
        if (b != a) prod *= val[b];
      g(static_cast<Eigen::Index>(a)) += prod;
    }
  }
  return g;
}

double immersion_volume(const ParametrizedImmersion& immersion, int nodes_per_axis) {
  const std::size_t d = immersion.dim;
  const Eigen::VectorXd span = immersion.upper - immersion.lower;
  const double cell = span.prod() / std::pow(static_cast<double>(nodes_per_axis), static_cast<double>(d));
  double total = 0.0;
  for_each_index(std::vector<int>(d, 0), std::vector<int>(d, nodes_per_axis), [&](const std::vector<int>& idx) {
    Eigen::VectorXd xi(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a)
      xi(static_cast<Eigen::Index>(a)) = immersion.lower(static_cast<Eigen::Index>(a)) +
                                         span(static_cast<Eigen::Index>(a)) * idx[a] / nodes_per_axis;
    total += std::sqrt(immersion.metric(xi).determinant());
  });
  return total * cell;
}

double hamiltonian_variation(const ParametrizedImmersion& immersion, const TrigPolynomial& f, int nodes_per_axis) {
  if (!immersion.periodic)
    throw Error(ErrorKind::Unsupported, "Hamiltonian variation needs a periodic (closed) parametrization");
  const std::size_t d = immersion.dim;
  const Eigen::VectorXd span = immersion.upper - immersion.lower;

  auto field = [&](const Eigen::VectorXd& xi) {
    const std::vector<CVector> t = immersion.tangents(xi);
    const Eigen::MatrixXd g = gram_of(t);
    const Eigen::VectorXd unit = (xi - immersion.lower).cwiseQuotient(span);
    const Eigen::VectorXd df = f.gradient(unit).cwiseQuotient(span);
    const Eigen::VectorXd coeff = g.ldlt().solve(df);
    CVector w = CVector::Zero(t.front().size());
    for (std::size_t a = 0; a < d; ++a) w += coeff(static_cast<Eigen::Index>(a)) * t[a];
    return CVector(Complex(0.0, -1.0) * w);
  };

  const double cell = span.prod() / std::pow(static_cast<double>(nodes_per_axis), static_cast<double>(d));
  double total = 0.0;
  for_each_index(std::vector<int>(d, 0), std::vector<int>(d, nodes_per_axis), [&](const std::vector<int>& idx) {
    Eigen::VectorXd xi(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a)
      xi(static_cast<Eigen::Index>(a)) = immersion.lower(static_cast<Eigen::Index>(a)) +
                                         span(static_cast<Eigen::Index>(a)) * idx[a] / nodes_per_axis;
    const std::vector<CVector> t = immersion.tangents(xi);
    const Eigen::MatrixXd g = gram_of(t);
    std::vector<CVector> dw(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double h = 1e-5 * span(static_cast<Eigen::Index>(a));
      Eigen::VectorXd p = xi, m = xi;
      p(static_cast<Eigen::Index>(a)) += h;
      m(static_cast<Eigen::Index>(a)) -= h;
      dw[a] = (field(p) - field(m)) / (2.0 * h);
    }
    Eigen::MatrixXd gdot(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        gdot(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            real_product(dw[a], t[b]) + real_product(t[a], dw[b]);
    // d/dt sqrt(det G_t) = 1/2 sqrt(det G) tr(G^{-1} dG/dt)
    total += 0.5 * std::sqrt(g.determinant()) * g.ldlt().solve(gdot).trace();
  });
  return total * cell;
}

ParametrizedImmersion global_chart(const QuadricSystem& sys, const LatticePack& pack) {
  const auto n = static_cast<Eigen::Index>(sys.n());
  const auto r = static_cast<Eigen::Index>(sys.codim());
  const Eigen::MatrixXd dy_dt = torus_jacobian(pack);
  const IntVector sum = pack.sum;
  auto angle_of_y = [sum, r](const Eigen::VectorXd& y) {
    double b = static_cast<double>(r) * kPi / 2.0;
    for (Eigen::Index j = 0; j < r; ++j) b += kPi * static_cast<double>(sum[static_cast<std::size_t>(j)]) * y(j);
    return b;
  };

  ParametrizedImmersion p;
  p.periodic = true;
  if (sys.k() == 1 && sys.n() == 2) {
    const double a = sys.coefficients()(0, 0), b = sys.coefficients()(1, 0), d = sys.constants()(0);
    if (!(a * d > 0 && b * d > 0))
      throw Error(ErrorKind::Unsupported, "global chart needs the plane conic to be an ellipse");
    const double ra = std::sqrt(d / a), rb = std::sqrt(d / b);
    p.dim = 2;
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Ones(2);
    auto curve = [ra, rb](double s) {
      Eigen::VectorXd u(2);
      u << ra * std::cos(2 * kPi * s), rb * std::sin(2 * kPi * s);
      return u;
    };
    auto curve_d = [ra, rb](double s) {
      Eigen::VectorXd u(2);
      u << -2 * kPi * ra * std::sin(2 * kPi * s), 2 * kPi * rb * std::cos(2 * kPi * s);
      return u;
    };
    const QuadricSystem* s = &sys;
    p.map = [s, curve, dy_dt](const Eigen::VectorXd& xi) { return phi(*s, curve(xi(0)), dy_dt * xi.tail(1)); };
    p.tangents = [s, curve, curve_d, dy_dt](const Eigen::VectorXd& xi) {
      const Eigen::VectorXd y = dy_dt * xi.tail(1);
      const CVector ph = unit_phases(*s, y);
      std::vector<CVector> t;
      t.emplace_back(curve_d(xi(0)).cast<Complex>().cwiseProduct(ph));
      auto ty = torus_tangents(*s, curve(xi(0)), ph, dy_dt);
      t.insert(t.end(), ty.begin(), ty.end());
      return t;
    };
    p.angle = [angle_of_y, dy_dt](const Eigen::VectorXd& xi) { return angle_of_y(dy_dt * xi.tail(1)); };
    return p;
  }
  if (sys.k() == 0) {
    const Eigen::VectorXd squares = sys.coefficients().transpose().fullPivLu().solve(sys.constants());
    if ((squares.array() <= 0.0).any())
      throw Error(ErrorKind::Unsupported, "point system has no solution with all coordinates nonzero");
    const Eigen::VectorXd u = squares.array().sqrt();
    p.dim = static_cast<std::size_t>(r);
    p.lower = Eigen::VectorXd::Zero(r);
    p.upper = Eigen::VectorXd::Ones(r);
    const QuadricSystem* s = &sys;
    p.map = [s, u, dy_dt](const Eigen::VectorXd& xi) { return phi(*s, u, dy_dt * xi); };
    p.tangents = [s, u, dy_dt](const Eigen::VectorXd& xi) {
      return torus_tangents(*s, u, unit_phases(*s, dy_dt * xi), dy_dt);
    };
    p.angle = [angle_of_y, dy_dt](const Eigen::VectorXd& xi) { return angle_of_y(dy_dt * xi); };
    (void)n;
    return p;
  }
  throw Error(ErrorKind::Unsupported, "no global chart for this system (only plane ellipses and point sets)");
}

ParametrizedImmersion local_chart(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                                  double half_width) {
  const auto k = static_cast<Eigen::Index>(sys.k());
  const auto r = static_cast<Eigen::Index>(sys.codim());
  auto chart = std::make_shared<VarietyChart>(sys, base);
  const Eigen::MatrixXd dy_dt = torus_jacobian(pack);
  const IntVector sum = pack.sum;
  const QuadricSystem* s = &sys;

  ParametrizedImmersion p;
  p.dim = static_cast<std::size_t>(k + r);
  p.lower.resize(k + r);
  p.upper.resize(k + r);
  p.lower.head(k).setConstant(-half_width);
  p.upper.head(k).setConstant(half_width);
  p.lower.tail(r).setZero();
  p.upper.tail(r).setOnes();
  p.map = [s, chart, dy_dt, k, r](const Eigen::VectorXd& xi) {
    return phi(*s, chart->point(xi.head(k)), dy_dt * xi.tail(r));
  };
  p.tangents = [s, chart, dy_dt, k, r](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd u = chart->point(xi.head(k));
    const Eigen::MatrixXd du = chart->jacobian(u);
    const CVector ph = unit_phases(*s, dy_dt * xi.tail(r));
    std::vector<CVector> t;
    for (Eigen::Index a = 0; a < k; ++a) t.emplace_back(du.col(a).cast<Complex>().cwiseProduct(ph));
    auto ty = torus_tangents(*s, u, ph, dy_dt);
    t.insert(t.end(), ty.begin(), ty.end());
    return t;
  };
  p.angle = [sum, dy_dt, r](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd y = dy_dt * xi.tail(r);
    double b = static_cast<double>(r) * kPi / 2.0;
    for (Eigen::Index j = 0; j < r; ++j) b += kPi * static_cast<double>(sum[static_cast<std::size_t>(j)]) * y(j);
    return b;
  };
  return p;
}

ParametrizedImmersion product_chart(const ParametrizedImmersion& a, const ParametrizedImmersion& b) {
  const auto da = static_cast<Eigen::Index>(a.dim), db = static_cast<Eigen::Index>(b.dim);
  ParametrizedImmersion p;
  p.dim = a.dim + b.dim;
  p.periodic = a.periodic && b.periodic;
  p.lower.resize(da + db);
  p.lower << a.lower, b.lower;
  p.upper.resize(da + db);
  p.upper << a.upper, b.upper;
  p.map = [a, b, da, db](const Eigen::VectorXd& xi) {
    const CVector za = a.map(xi.head(da)), zb = b.map(xi.tail(db));
    CVector z(za.size() + zb.size());
    z << za, zb;
    return z;
  };
  p.tangents = [a, b, da, db](const Eigen::VectorXd& xi) {
    const auto ta = a.tangents(xi.head(da));
    const auto tb = b.tangents(xi.tail(db));
    const Eigen::Index na = ta.empty() ? 0 : ta.front().size();
    const Eigen::Index nb = tb.empty() ? 0 : tb.front().size();
    std::vector<CVector> t;
    for (const auto& v : ta) {
      CVector w = CVector::Zero(na + nb);
      w.head(na) = v;
      t.push_back(std::move(w));
    }
    for (const auto& v : tb) {
      CVector w = CVector::Zero(na + nb);
      w.tail(nb) = v;
      t.push_back(std::move(w));
    }
    return t;
  };
  p.angle = [a, b, da, db](const Eigen::VectorXd& xi) { return a.angle(xi.head(da)) + b.angle(xi.tail(db)); };
  return p;
}

ParametrizedImmersion reparametrize(const ParametrizedImmersion& immersion,
                                    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> to_old,
                                    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian,
                                    Eigen::VectorXd lower, Eigen::VectorXd upper) {
  ParametrizedImmersion p;
  p.dim = immersion.dim;
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.periodic = false;
  p.map = [immersion, to_old](const Eigen::VectorXd& xi) { return immersion.map(to_old(xi)); };
  p.tangents = [immersion, to_old, jacobian](const Eigen::VectorXd& xi) {
    const auto old = immersion.tangents(to_old(xi));
    const Eigen::MatrixXd jac = jacobian(xi);  // d old_b / d new_a = jac(b, a)
    std::vector<CVector> t;
    for (Eigen::Index a = 0; a < jac.cols(); ++a) {
      CVector v = CVector::Zero(old.front().size());
      for (Eigen::Index b = 0; b < jac.rows(); ++b) v += jac(b, a) * old[static_cast<std::size_t>(b)];
      t.push_back(std::move(v));
    }
    return t;
  };
  p.angle = [immersion, to_old](const Eigen::VectorXd& xi) { return immersion.angle(to_old(xi)); };
  return p;
}

ParametrizedImmersion radial_perturbation(const ParametrizedImmersion& immersion, double eps,
                                          const TrigPolynomial& rho) {
  ParametrizedImmersion p = immersion;
  const Eigen::VectorXd lower = immersion.lower, span = immersion.upper - immersion.lower;
  p.map = [immersion, eps, rho, lower, span](const Eigen::VectorXd& xi) {
    return CVector(immersion.map(xi) * (1.0 + eps * rho.value((xi - lower).cwiseQuotient(span))));
  };
  p.tangents = [immersion, eps, rho, lower, span](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd unit = (xi - lower).cwiseQuotient(span);
    const double scale = 1.0 + eps * rho.value(unit);
    const Eigen::VectorXd grad = rho.gradient(unit).cwiseQuotient(span);
    const CVector z = immersion.map(xi);
    auto t = immersion.tangents(xi);
    for (std::size_t a = 0; a < t.size(); ++a) t[a] = scale * t[a] + eps * grad(static_cast<Eigen::Index>(a)) * z;
    return t;
  };
  return p;
}

double hamiltonian_variation_check(const QuadricSystem& sys, const LatticePack& pack, int nodes_per_axis,
                                   const TrigPolynomial& f) {
  if (sys.n() != 2)
    throw Error(ErrorKind::DimensionUnsupported, "Hamiltonian variation check is implemented for surfaces (n = 2)");
  return std::abs(hamiltonian_variation(global_chart(sys, pack), f, nodes_per_axis));
}

double harmonicity_defect(const QuadricSystem& sys, const LatticePack& pack, const Eigen::VectorXd& base,
                          int nodes_per_axis) {
  ParametrizedImmersion chart;
  try {
    chart = global_chart(sys, pack);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unsupported) throw;
    const double half_width = 0.2 * std::min(1.0, base.cwiseAbs().minCoeff());
    chart = local_chart(sys, pack, base, half_width);
  }
  return harmonicity_defect(chart, GridSpec::uniform(chart.lower, chart.upper, nodes_per_axis));
}

}  // namespace hminlag
