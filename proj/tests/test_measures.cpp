#include <gtest/gtest.h>

#include <algorithm>

#include "cvxdiff/duality.hpp"
#include "cvxdiff/error.hpp"
#include "cvxdiff/measures.hpp"
#include "support.hpp"

namespace cvxdiff {
namespace {

using testing::cube;
using testing::hull;

using Atoms = std::map<IntVector, Rational>;

TEST(SurfaceArea, Examples) {
  EXPECT_EQ(surface_area_measure(cube(-1, 1, 2)).atoms,
            (Atoms{{{-1, 0}, 2}, {{0, -1}, 2}, {{0, 1}, 2}, {{1, 0}, 2}}));
  EXPECT_EQ(surface_area_measure(testing::inner_triangle()).atoms, (Atoms{{{-1, -1}, 2}, {{0, 1}, 2}, {{1, 0}, 2}}));
  const auto c = surface_area_measure(cube(0, 1, 3));
  EXPECT_EQ(c.atoms.size(), 6u);
  for (const auto& [r, w] : c.atoms) EXPECT_EQ(w, 1);
}

TEST(SurfaceArea, EuclideanMass) {
  EXPECT_NEAR(surface_area_measure(testing::inner_triangle()).euclidean_mass(), 4 + std::sqrt(8.0), 1e-12);
}

TEST(SurfaceArea, ClosedAndVolumeIdentity) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 3;
    const Polytope p = testing::random_polytope(rng, n, n + 5, 5);
    const SphereMeasure s = surface_area_measure(p);
    EXPECT_TRUE(is_zero(std::span<const Rational>(s.resultant())));
    EXPECT_EQ(Rational(n) * volume(p), -pair(p, s));
  }
}

TEST(MixedMeasure, Examples) {
  const Polytope c1 = cube(0, 1, 3), c2 = cube(0, 2, 3);
  EXPECT_EQ(mixed_surface_area_measure({c1, c1}), surface_area_measure(c1));
  const auto m = mixed_surface_area_measure({c1, c2});
  EXPECT_EQ(m.atoms.size(), 6u);
  for (const auto& [r, w] : m.atoms) EXPECT_EQ(w, 2);
  EXPECT_THROW(mixed_surface_area_measure({c1, cube(0, 1, 2)}), Error);
  const auto line = mixed_surface_area_measure({}, 1);
  EXPECT_EQ(line.atoms, (Atoms{{{-1}, 1}, {{1}, 1}}));
}

TEST(MixedMeasure, DiagonalAndSymmetric) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const Polytope a = testing::random_polytope(rng, 3, 6, 3);
    const Polytope b = testing::random_polytope(rng, 3, 6, 3);
    EXPECT_EQ(mixed_surface_area_measure({a, a}), surface_area_measure(a));
    EXPECT_EQ(mixed_surface_area_measure({a, b}), mixed_surface_area_measure({b, a}));
  }
}

TEST(Pairing, Examples) {
  const Polytope s = cube(-1, 1, 2);
  EXPECT_EQ(pair(s, surface_area_measure(s)), -8);
  const Polytope u = cube(0, 1, 2);
  EXPECT_EQ(pair(u, surface_area_measure(u)), -2);
  const Polytope t = testing::inner_triangle();
  const NormalFan fan = normal_fan(t);
  const auto quadrant = std::find_if(fan.cones.begin(), fan.cones.end(),
                                     [](const NormalCone& c) { return c.dim() == 2 && c.face.vertices == std::vector<std::size_t>{0}; });
  ASSERT_NE(quadrant, fan.cones.end());
  const ConeRestriction restrict{t, *quadrant};
  EXPECT_EQ(pair(t, surface_area_measure(t), &restrict), 0);
}

TEST(MixedVolume, Examples) {
  const Polytope s = cube(-1, 1, 2);
  EXPECT_EQ(mixed_volume_via_measure({s, s}), 4);
  EXPECT_EQ(mixed_volume_via_measure({cube(0, 1, 2), hull({{0, 0}, {2, 0}, {2, 1}, {0, 1}})}), Rational(3, 2));
  const Polytope c = cube(0, 1, 3);
  EXPECT_EQ(mixed_volume_via_measure({c, c, c}), 1);
  EXPECT_EQ(mixed_volume_ie({c, c, c}), 6);
}

TEST(MixedVolume, SymmetricAndMultilinear) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 5; ++t) {
    std::vector<Polytope> ks;
    for (int i = 0; i < 3; ++i) ks.push_back(testing::random_polytope(rng, 3, 6, 3));
    const Rational mv = mixed_volume_ie(ks);
    std::vector<int> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end()))
      EXPECT_EQ(mixed_volume_ie({ks[perm[0]], ks[perm[1]], ks[perm[2]]}), mv);
    EXPECT_EQ(mixed_volume_via_measure(ks), mv / 6);
    EXPECT_EQ(mixed_volume_ie({ks[0], ks[0], ks[0]}), 6 * volume(ks[0]));
  }
  std::uniform_int_distribution<long> side(1, 4);
  auto random_box = [&] {
    std::vector<std::pair<Rational, Rational>> sides;
    for (int j = 0; j < 3; ++j) sides.emplace_back(Rational(0), Rational(side(rng)));
    return box(sides);
  };
  for (int t = 0; t < 5; ++t) {
    const Polytope a = random_box(), a2 = random_box(), b = random_box(), c = random_box();
    EXPECT_EQ(mixed_volume_ie({minkowski_sum(a, a2), b, c}), mixed_volume_ie({a, b, c}) + mixed_volume_ie({a2, b, c}));
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(hull({{0, 0}, {1, 0}, {0, 1}})), 1);
  EXPECT_EQ(degree(testing::outer_square()), 32);
  EXPECT_EQ(mixed_degree({testing::inner_triangle(), testing::outer_square()}), 16);
  EXPECT_EQ(mixed_degree_via_measure({testing::inner_triangle(), testing::outer_square()}), 16);
  EXPECT_EQ(mixed_degree_via_measure({testing::outer_square(), testing::inner_triangle()}), 16);
}

}  // namespace
}  // namespace cvxdiff
