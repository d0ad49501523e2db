#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hminlag/error.hpp"
#include "hminlag/immersion.hpp"
#include "hminlag/quotient.hpp"

using namespace hminlag;

namespace {

TopologyLabel label(const QuadricSystem& sys) { return classify_quotient(sys, make_lattice_pack(sys.exponents())); }

}  // namespace

TEST(GammaAction, EllipseGeneratorFlipsFirstCoordinate) {
  const auto sys = fixtures::ellipse();
  const auto pack = make_lattice_pack(sys.exponents());
  const GammaAction g = gamma_action(sys, pack, 1);
  EXPECT_EQ(g.signs, (std::vector<int>{-1, 1}));
  EXPECT_NEAR(g.shift(0), 1.0, 1e-15);
  const CoverPoint p{Eigen::Vector2d(0.6, 0.4), Eigen::VectorXd::Constant(1, 0.25)};
  const CoverPoint q = apply_gamma(g, p);
  EXPECT_EQ(q.u, Eigen::Vector2d(-0.6, 0.4));
  EXPECT_NEAR(q.y(0), 1.25, 1e-15);
}

TEST(GammaAction, OrbitSizeAndInvolution) {
  for (const auto& sys : {fixtures::sphere_cone(3), fixtures::sphere_cone_weighted(), fixtures::klein_cone()}) {
    const auto pack = make_lattice_pack(sys.exponents());
    for (const auto& p : fixtures::cover_samples(sys, pack, 10, 1)) {
      EXPECT_EQ(orbit(sys, pack, p).size(), pack.gamma.size());
      for (std::size_t i = 0; i < pack.gamma.size(); ++i) {
        const GammaAction g = gamma_action(sys, pack, i);
        EXPECT_TRUE(same_cover_point(pack, apply_gamma(g, apply_gamma(g, p)), p, 1e-12));
      }
    }
  }
}

TEST(GammaAction, SameOrbitDetection) {
  const auto sys = fixtures::sphere_cone(3);
  const auto pack = make_lattice_pack(sys.exponents());
  const auto pts = fixtures::cover_samples(sys, pack, 5, 2);
  const CoverPoint moved = apply_gamma(gamma_action(sys, pack, 3), pts[0]);
  EXPECT_TRUE(in_same_orbit(sys, pack, pts[0], moved, 1e-9));
  EXPECT_FALSE(in_same_orbit(sys, pack, pts[0], pts[1], 1e-9));
}

TEST(Torus, DistanceIsPeriodic) {
  const auto pack = make_lattice_pack(fixtures::sphere_cone(3).exponents());
  const Eigen::Vector2d a(0.1, 0.2);
  // (1, 1) and (1, -1) are 2 b*_1 and 2 b*_2 in some order: both periods.
  EXPECT_NEAR(torus_distance(pack, a, a + Eigen::Vector2d(1, 1)), 0.0, 1e-14);
  EXPECT_NEAR(torus_distance(pack, a, a + Eigen::Vector2d(1, -1)), 0.0, 1e-14);
  EXPECT_GT(torus_distance(pack, a, a + Eigen::Vector2d(1, 0)), 0.1);
}

TEST(Orientation, CharacterIsAHomomorphism) {
  for (const auto& sys : {fixtures::sphere_cone(3), fixtures::sphere_cone(4), fixtures::sphere_cone_weighted(),
                          fixtures::ellipsoid({1, 2, 3, 4})}) {
    const auto pack = make_lattice_pack(sys.exponents());
    for (std::size_t a = 0; a < pack.gamma.size(); ++a)
      for (std::size_t b = 0; b < pack.gamma.size(); ++b) {
        // Gamma ordering is by bitmask over the dual basis, so a ^ b is the sum.
        EXPECT_EQ(orientation_character(sys, pack, a) * orientation_character(sys, pack, b),
                  orientation_character(sys, pack, a ^ b));
      }
  }
}

TEST(Orientation, SignMapDegree) {
  // Degree of a diagonal sign map on S^{n-1} is the product of the signs.
  const auto sys = fixtures::ellipsoid({1, 2, 3});
  const auto pack = make_lattice_pack(sys.exponents());
  const GammaAction g = gamma_action(sys, pack, 1);
  int prod = 1;
  for (int s : g.signs) prod *= s;
  EXPECT_EQ(orientation_character(sys, pack, 1), prod);
}

TEST(Classify, KnownQuotients) {
  EXPECT_EQ(label(fixtures::ellipse()), (TopologyLabel{TopologyKind::KleinBottle, 2}));
  EXPECT_EQ(label(fixtures::ellipsoid({1, 1, 1, 1})), (TopologyLabel{TopologyKind::SphereTimesCircle, 4}));
  EXPECT_EQ(label(fixtures::ellipsoid({1, 1, 1})), (TopologyLabel{TopologyKind::KleinBottle, 3}));
  EXPECT_EQ(label(fixtures::sphere_cone(3)), (TopologyLabel{TopologyKind::SphereTimesTorus, 3}));
  EXPECT_EQ(label(fixtures::sphere_cone(5)), (TopologyLabel{TopologyKind::SphereTimesTorus, 5}));
  EXPECT_EQ(label(fixtures::sphere_cone_weighted()), (TopologyLabel{TopologyKind::KleinTimesCircle, 3}));
  EXPECT_EQ(label(fixtures::klein_cone()).kind, TopologyKind::Unknown);
}

TEST(Classify, PointSetIsATorus) {
  const auto sys = fixtures::make({{1, 0}, {0, 1}}, {1.0, 2.0});
  EXPECT_EQ(label(sys), (TopologyLabel{TopologyKind::Torus, 2}));
}

TEST(Classify, LabelsPrint) {
  EXPECT_EQ(to_string(TopologyLabel{TopologyKind::KleinBottle, 2}), "KleinBottle(2)");
  EXPECT_EQ(describe(TopologyLabel{TopologyKind::SphereTimesTorus, 3}), "S^1 x S^1 x S^1");
}

TEST(Classify, ProjectiveImages) {
  EXPECT_EQ(classify_projective_quotient(fixtures::klein_cone()), (TopologyLabel{TopologyKind::KleinBottle, 2}));
  // S^1 x S^1
  EXPECT_EQ(classify_projective_quotient(fixtures::weighted_cone(1, 1, 2)),
            (TopologyLabel{TopologyKind::SphereTimesCircle, 2}));
  EXPECT_EQ(classify_projective_quotient(fixtures::clifford_cone()), (TopologyLabel{TopologyKind::Torus, 1}));
}

TEST(Scan, SphereConeHasNoCollisions) {
  const auto sys = fixtures::sphere_cone(3);
  const auto pack = make_lattice_pack(sys.exponents());
  EXPECT_TRUE(self_intersection_scan(sys, pack, scan_samples(sys, pack, 800, 3), 1e-8).empty());
}

TEST(Scan, EllipseCollisionsSitOnTheAxis) {
  const auto sys = fixtures::ellipse();
  const auto pack = make_lattice_pack(sys.exponents());
  const auto samples = scan_samples(sys, pack, 800, 4);
  const auto hits = self_intersection_scan(sys, pack, samples, 1e-8);
  ASSERT_FALSE(hits.empty());
  for (const auto& h : hits) {
    EXPECT_LT(h.min_abs_u, 1e-4);
    EXPECT_LT(h.first, h.second);
    EXPECT_LT((phi(sys, samples[h.first].u, samples[h.first].y) - phi(sys, samples[h.second].u, samples[h.second].y)).norm(),
              1e-8);
  }
}
