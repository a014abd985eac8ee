#pragma once

#include <optional>
#include <vector>

#include "cvxdiff/rational.hpp"

namespace cvxdiff {

/// Ambient dimensions above this are rejected; inclusion-exclusion is 2^n.
inline constexpr std::size_t kMaxDimension = 4;

/// A facet { m : <m, normal> = offset } of a polytope lying in { <m, normal> >= offset }.
struct Facet {
  IntVector normal;                   // primitive, points into the polytope
  Rational offset;                    // min over the polytope of <m, normal>
  Rational lattice_volume;            // (n-1)-volume divided by |normal|
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices()
};

/// Full-dimensional compact rational polytope with matching V- and H-representations.
///
/// Vertices are sorted lexicographically and facets by normal, so two polytopes
/// describing the same set compare equal member-wise.
class Polytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(std::span<const Rational> x) const;
  bool interior_contains(std::span<const Rational> x) const;
  Point vertex_centroid() const;

  friend bool operator==(const Polytope& a, const Polytope& b);

 private:
  friend Polytope convex_hull(const std::vector<Point>& points);
  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
};

/// Convex hull of points spanning R^n. Throws DegenerateInput on a proper affine span.
Polytope convex_hull(const std::vector<Point>& points);

/// Hull of arbitrary points computed inside their affine span.
///
/// Local coordinates are a subset of the ambient coordinates (the pivots), so
/// the local polytope is the coordinate projection of the hull and the map back
/// to R^n is x = base + sum_j (y_j - base[pivot_j]) * directions[j].
struct AffineHull {
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  Point base;
  std::vector<std::size_t> pivots;
  std::vector<Point> directions;
  std::optional<Polytope> local;  // empty when dim == 0
  std::vector<Point> vertices;    // ambient coordinates

  Point to_ambient(std::span<const Rational> y) const;
  Point to_local(std::span<const Rational> x) const;
  bool full_dimensional() const { return dim == ambient_dim; }
};

AffineHull hull_in_affine_span(const std::vector<Point>& points);

/// Dimension of the affine span of a point list (-1 for an empty list).
int affine_dimension(const std::vector<Point>& points);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

/// Exact volume by coning every facet to the vertex centroid.
Rational volume(const Polytope& p);
/// Same cone decomposition with an arbitrary apex; the result does not depend on it.
Rational volume_from(const Polytope& p, std::span<const Rational> apex);

/// min over P of <m, v>.
Rational support_eval(const Polytope& p, const Direction& v);
Rational support_eval(const Polytope& p, std::span<const Integer> v);

Polytope scale(const Polytope& p, const Rational& factor);
Polytope translate(const Polytope& p, std::span<const Rational> offset);

/// Axis-parallel box prod [lo_i, hi_i].
Polytope box(const std::vector<std::pair<Rational, Rational>>& sides);

/// Extreme rays of the pointed cone { x : <row, x> >= 0 for every row }.
/// Rows must have full column rank. Rays are returned primitive.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows);

}  // namespace cvxdiff
