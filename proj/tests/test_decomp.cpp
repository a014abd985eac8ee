#include <gtest/gtest.h>

#include <algorithm>

#include "cvxdiff/decomp.hpp"
#include "cvxdiff/error.hpp"
#include "support.hpp"

namespace cvxdiff {
namespace {

using testing::pt;

std::vector<Point> pts_of(const FaceLattice& lat, std::size_t i) { return face_points(lat.polytope(), lat.face(i)); }

Rational c_of(const Decomposition& d, std::vector<Point> face) {
  std::sort(face.begin(), face.end());
  for (const auto& cs : d.correction_sets())
    if (pts_of(d.k2, cs.face) == face) return cs.c_volume;
  throw std::logic_error("no such face");
}

TEST(Related, TriangleInSquare) {
  const FaceLattice k1(testing::inner_triangle()), k2(testing::outer_square());
  const auto pairs = related_pairs(k1, k2);
  EXPECT_EQ(pairs.size(), 10u);
  std::vector<std::vector<Point>> at_corner, at_bottom;
  for (const auto& p : pairs) {
    const auto f2 = pts_of(k2, p.f2);
    if (f2 == std::vector<Point>{pt({2, 2})}) at_corner.push_back(pts_of(k1, p.f1));
    if (f2 == std::vector<Point>{pt({-2, -2}), pt({2, -2})}) at_bottom.push_back(pts_of(k1, p.f1));
  }
  std::sort(at_corner.begin(), at_corner.end());
  EXPECT_EQ(at_corner, (std::vector<std::vector<Point>>{{pt({0, 2})}, {pt({0, 2}), pt({2, 0})}, {pt({2, 0})}}));
  EXPECT_EQ(at_bottom, (std::vector<std::vector<Point>>{{pt({0, 0}), pt({2, 0})}}));
}

TEST(Related, WitnessLiesInBothRelativeInteriors) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto [a, b] = testing::random_nested_pair(rng, 2 + t % 2);
    const FaceLattice k1(a), k2(b);
    for (const auto& p : related_pairs(k1, k2)) {
      EXPECT_EQ(k1.argmin(std::span<const Integer>(p.witness)), p.f1);
      EXPECT_EQ(k2.argmin(std::span<const Integer>(p.witness)), p.f2);
    }
  }
}

TEST(Related, IdenticalBodies) {
  const FaceLattice k(testing::outer_square());
  const auto pairs = related_pairs(k, k);
  EXPECT_EQ(pairs.size(), 8u);
  for (const auto& p : pairs) EXPECT_EQ(p.f1, p.f2);
}

TEST(Related, NestedSquares) {
  const FaceLattice k1(testing::cube(0, 1, 2)), k2(testing::cube(0, 3, 2));
  std::size_t edges = 0, vertices = 0;
  for (const auto& p : related_pairs(k1, k2)) {
    EXPECT_EQ(k1.face(p.f1).dim, k2.face(p.f2).dim);
    (k1.face(p.f1).dim == 1 ? edges : vertices)++;
  }
  EXPECT_EQ(edges, 4u);
  EXPECT_EQ(vertices, 4u);
}

TEST(Related, Errors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([] { related_pairs(testing::outer_square(), testing::inner_triangle()); }), ErrorCode::NotNested);
  EXPECT_EQ(code([] { related_pairs(testing::cube(0, 1, 3), testing::outer_square()); }), ErrorCode::DimensionMismatch);
}

TEST(Decomposition, TriangleInSquarePieces) {
  const Decomposition d = canonical_decomposition(testing::inner_triangle(), testing::outer_square());
  std::vector<std::pair<std::vector<Point>, Rational>> full;
  for (const auto& p : d.pieces)
    if (p.hull.full_dimensional()) full.emplace_back(p.hull.vertices, p.volume);
  std::sort(full.begin(), full.end());
  ASSERT_EQ(full.size(), 3u);
  EXPECT_EQ(full[0].first, (std::vector<Point>{pt({-2, -2}), pt({-2, 2}), pt({0, 0}), pt({0, 2})}));
  EXPECT_EQ(full[0].second, 6);
  EXPECT_EQ(full[1].first, (std::vector<Point>{pt({-2, -2}), pt({0, 0}), pt({2, -2}), pt({2, 0})}));
  EXPECT_EQ(full[1].second, 6);
  EXPECT_EQ(full[2].first, (std::vector<Point>{pt({0, 2}), pt({2, 0}), pt({2, 2})}));
  EXPECT_EQ(full[2].second, 2);
  EXPECT_EQ(d.total_volume(), 14);
}

TEST(Decomposition, IdenticalBodiesAreFlat) {
  const Decomposition d = canonical_decomposition(testing::inner_triangle(), testing::inner_triangle());
  for (const auto& p : d.pieces) EXPECT_FALSE(p.hull.full_dimensional());
  EXPECT_EQ(d.total_volume(), 0);
  for (const auto& cs : d.correction_sets()) EXPECT_EQ(cs.c_volume, 0);
}

TEST(Decomposition, NestedCubes) {
  const Decomposition d = canonical_decomposition(testing::cube(0, 1, 3), testing::cube(-1, 2, 3));
  std::size_t full = 0;
  for (const auto& p : d.pieces) {
    if (!p.hull.full_dimensional()) continue;
    ++full;
    EXPECT_EQ(p.volume, Rational(13, 3));
  }
  EXPECT_EQ(full, 6u);
  EXPECT_EQ(d.total_volume(), 26);
  Rational sum = 0;
  for (const auto& cs : d.correction_sets()) sum += cs.c_volume;
  EXPECT_EQ(sum, 156);
}

TEST(CorrectionSets, TriangleInSquare) {
  const Decomposition d = canonical_decomposition(testing::inner_triangle(), testing::outer_square());
  EXPECT_EQ(c_of(d, {pt({-2, -2}), pt({2, -2})}), 12);
  EXPECT_EQ(c_of(d, {pt({-2, -2}), pt({-2, 2})}), 12);
  EXPECT_EQ(c_of(d, {pt({2, 2})}), 4);
  EXPECT_EQ(c_of(d, {pt({2, -2}), pt({2, 2})}), 0);
  EXPECT_EQ(c_of(d, {pt({-2, 2}), pt({2, 2})}), 0);
  for (auto v : {pt({-2, -2}), pt({2, -2}), pt({-2, 2})}) EXPECT_EQ(c_of(d, {v}), 0);
  Rational sum = 0;
  for (const auto& cs : d.correction_sets()) sum += cs.c_volume;
  EXPECT_EQ(sum, 28);
  EXPECT_EQ(d.correction_sets().size(), 8u);
}

TEST(CorrectionSets, NestedSquares) {
  const Decomposition d = canonical_decomposition(testing::cube(0, 1, 2), testing::cube(-1, 2, 2));
  Rational sum = 0;
  for (const auto& cs : d.correction_sets()) {
    EXPECT_EQ(cs.c_volume, d.k2.face(cs.face).dim == 1 ? 4 : 0);
    sum += cs.c_volume;
  }
  EXPECT_EQ(sum, 16);
}

TEST(Rays, Examples) {
  const auto rays = difference_rays(testing::inner_triangle(), testing::outer_square());
  EXPECT_EQ(rays.size(), 10u);
  const FaceLattice k1(testing::inner_triangle()), k2(testing::outer_square());
  auto find = [&](IntVector r) {
    return std::find_if(rays.begin(), rays.end(), [&](const DifferenceRay& x) { return x.ray == r; });
  };
  auto up = find({0, 1});
  ASSERT_NE(up, rays.end());
  EXPECT_EQ(pts_of(k1, up->f1), (std::vector<Point>{pt({0, 0}), pt({2, 0})}));
  EXPECT_EQ(pts_of(k2, up->f2), (std::vector<Point>{pt({-2, -2}), pt({2, -2})}));
  auto diag = find({-1, -1});
  ASSERT_NE(diag, rays.end());
  EXPECT_EQ(pts_of(k1, diag->f1), (std::vector<Point>{pt({0, 2}), pt({2, 0})}));
  EXPECT_EQ(pts_of(k2, diag->f2), (std::vector<Point>{pt({2, 2})}));

  EXPECT_EQ(difference_rays(testing::outer_square(), testing::outer_square()).size(), 8u);
  EXPECT_EQ(difference_rays(testing::cube(0, 1, 2), testing::cube(-1, 2, 2)).size(), 8u);
}

TEST(Decomposition, RandomPartitionAndContact) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 20; ++t) {
    const auto [a, b] = testing::random_nested_pair(rng, 2 + t % 2);
    const Decomposition d = canonical_decomposition(a, b);
    EXPECT_EQ(d.total_volume(), volume(b) - volume(a));
    for (const auto& p : d.pieces) EXPECT_TRUE(piece_contact_holds(d, p));
  }
}

}  // namespace
}  // namespace cvxdiff
