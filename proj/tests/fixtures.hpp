#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hminlag/lattice.hpp"
#include "hminlag/quadric.hpp"

namespace fixtures {

using hminlag::ExponentMatrix;
using hminlag::IntMatrix;
using hminlag::IntVector;
using hminlag::QuadricSystem;

inline QuadricSystem make(const std::vector<IntVector>& rows, std::vector<double> d) {
  return QuadricSystem(ExponentMatrix(IntMatrix::from_rows(rows)),
                       Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
}

// u1^2 + 2 u2^2 = 1
inline QuadricSystem ellipse() { return make({{1}, {2}}, {1.0}); }

// m1 u1^2 + ... + mn un^2 = 1
inline QuadricSystem ellipsoid(const std::vector<std::int64_t>& m) {
  std::vector<IntVector> rows;
  for (auto v : m) rows.push_back({v});
  return make(rows, {1.0});
}

// sum u_i^2 = 1 and u1^2 + ... + u_{n-1}^2 = u_n^2
inline QuadricSystem sphere_cone(int n) {
  std::vector<IntVector> rows(static_cast<std::size_t>(n - 1), IntVector{1, 1});
  rows.push_back({1, -1});
  return make(rows, {1.0, 0.0});
}

// u1^2 + 2 u2^2 + u3^2 = 1 and u1^2 + 2 u2^2 = u3^2
inline QuadricSystem sphere_cone_weighted() { return make({{1, 1}, {2, 2}, {1, -1}}, {1.0, 0.0}); }

// u1^2 = u2^2
inline QuadricSystem clifford_cone() { return make({{1}, {-1}}, {0.0}); }

// u1^2 + 2 u2^2 = 3 u3^2
inline QuadricSystem klein_cone() { return make({{1}, {2}, {-3}}, {0.0}); }

// m1 u1^2 + m2 u2^2 = m3 u3^2
inline QuadricSystem weighted_cone(std::int64_t m1, std::int64_t m2, std::int64_t m3) {
  return make({{m1}, {m2}, {-m3}}, {0.0});
}

// u^2 = r^2: a single circle |z| = r
inline QuadricSystem circle(double r) { return make({{1}}, {r * r}); }

}  // namespace fixtures

#include <random>

#include "hminlag/quotient.hpp"

namespace fixtures {

// Samples of M with y uniform over the torus in dual-basis coordinates.
inline std::vector<hminlag::CoverPoint> cover_samples(const QuadricSystem& sys, const hminlag::LatticePack& pack,
                                                      std::size_t count, std::uint64_t seed, double u_floor = 1e-3) {
  hminlag::SamplingOptions opts;
  opts.tol.u_floor = u_floor;
  const auto us = hminlag::sample_points(sys, count, seed, opts);
  std::mt19937_64 rng(seed + 17);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  std::vector<hminlag::CoverPoint> out;
  for (const auto& u : us) {
    std::vector<double> c(sys.codim());
    for (auto& v : c) v = unit(rng);
    const auto y = pack.from_dual_coordinates(c);
    out.push_back({u, Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))});
  }
  return out;
}

}  // namespace fixtures
