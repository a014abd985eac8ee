#include "cvxdiff/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "cvxdiff/error.hpp"

namespace cvxdiff {
namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<Rational> to_rational_row(const IntVector& v) {
  std::vector<Rational> r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

// Inverse of a square rational matrix; the caller guarantees regularity.
std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Incremental echelon basis used to pick independent rows / directions.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t cols) : cols_(cols) {}

  // Reduces v against the basis; returns true (and stores it) if independent.
  bool add(std::vector<Rational> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (v[c] == 0) continue;
      Rational f = v[c] / rows_[k][c];
      for (std::size_t j = 0; j < cols_; ++j) v[j] -= f * rows_[k][j];
    }
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] != 0) {
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return true;
      }
    }
    return false;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<Point> unique_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

void check_same_dimension(const std::vector<Point>& points) {
  for (const auto& p : points) {
    if (p.size() != points.front().size())
      fail(ErrorCode::DimensionMismatch, "points of different dimension");
  }
}

// Reduced row echelon form of the difference vectors; gives the direction
// space of the affine span with identity columns at the pivots.
void span_directions(const std::vector<Point>& pts, std::vector<Point>& dirs,
                     std::vector<std::size_t>& pivots) {
  const std::size_t n = pts.front().size();
  std::vector<Point> m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(d));
  }
  std::size_t r = 0;
  pivots.clear();
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational d = m[r][c];
    for (std::size_t j = 0; j < n; ++j) m[r][j] /= d;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  dirs = std::move(m);
}

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows) {
  if (rows.empty()) fail(ErrorCode::DegenerateInput, "no constraints");
  const std::size_t dim = rows.front().size();
  const std::size_t m = rows.size();

  std::vector<std::size_t> basis;
  {
    EchelonBasis eb(dim);
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
      if (eb.add(to_rational_row(rows[i]))) basis.push_back(i);
    }
  }
  if (basis.size() < dim) fail(ErrorCode::DegenerateInput, "cone is not pointed");

  std::vector<std::vector<Rational>> ab;
  for (auto i : basis) ab.push_back(to_rational_row(rows[i]));
  auto inv = inverse(ab);

  std::vector<IntVector> rays;
  std::vector<Bits> zeros;
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Rational> col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = inv[i][j];
    rays.push_back(primitive(std::span<const Rational>(col)));
    Bits z(m);
    for (std::size_t k = 0; k < dim; ++k)
      if (k != j) z.set(basis[k]);
    zeros.push_back(std::move(z));
  }

  std::vector<bool> in_basis(m, false);
  for (auto i : basis) in_basis[i] = true;

  for (std::size_t row = 0; row < m; ++row) {
    if (in_basis[row]) continue;
    const IntVector& a = rows[row];
    std::vector<Integer> vals(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      vals[k] = dot(std::span<const Integer>(a), std::span<const Integer>(rays[k]));
      const int s = sgn(vals[k]);
      if (s > 0) pos.push_back(k);
      if (s < 0) neg.push_back(k);
      if (s == 0) zeros[k].set(row);
    }
    if (neg.empty()) continue;

    std::vector<IntVector> next_rays;
    std::vector<Bits> next_zeros;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (sgn(vals[k]) >= 0) {
        next_rays.push_back(rays[k]);
        next_zeros.push_back(zeros[k]);
      }
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = zeros[p] & zeros[q];
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (zeros[r].contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = vals[p] * rays[q][j] - vals[q] * rays[p][j];
        next_rays.push_back(primitive(std::span<const Integer>(v)));
        common.set(row);
        next_zeros.push_back(std::move(common));
      }
    }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }
  return rays;
}

bool Polytope::contains(std::span<const Rational> x) const {
  for (const auto& f : facets_)
    if (dot(x, std::span<const Integer>(f.normal)) < f.offset) return false;
  return true;
}

bool Polytope::interior_contains(std::span<const Rational> x) const {
  for (const auto& f : facets_)
    if (dot(x, std::span<const Integer>(f.normal)) <= f.offset) return false;
  return true;
}

Point Polytope::vertex_centroid() const {
  Point c(dim_, 0);
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < dim_; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(vertices_.size());
  return c;
}

bool operator==(const Polytope& a, const Polytope& b) {
  if (a.dim_ != b.dim_ || a.vertices_ != b.vertices_ || a.facets_.size() != b.facets_.size())
    return false;
  for (std::size_t i = 0; i < a.facets_.size(); ++i) {
    if (a.facets_[i].normal != b.facets_[i].normal || a.facets_[i].offset != b.facets_[i].offset)
      return false;
  }
  return true;
}

int affine_dimension(const std::vector<Point>& points) {
  if (points.empty()) return -1;
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Point d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rank(diffs));
}

Polytope convex_hull(const std::vector<Point>& input) {
  if (input.empty()) fail(ErrorCode::DegenerateInput, "empty point set");
  check_same_dimension(input);
  const std::size_t n = input.front().size();
  if (n == 0) fail(ErrorCode::DegenerateInput, "zero ambient dimension");
  std::vector<Point> pts = unique_points(input);
  if (affine_dimension(pts) != static_cast<int>(n))
    fail(ErrorCode::DegenerateInput, "points do not affinely span R^" + std::to_string(n));

  // Facets of P are the extreme rays (r, c) of { <v, r> - c >= 0 for all v }.
  std::vector<IntVector> rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    Integer l = 1;
    for (const auto& x : p) l = lcm(l, x.get_den());
    IntVector row(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      Rational y = p[j] * l;
      row[j] = y.get_num();
    }
    row[n] = -l;
    rows.push_back(std::move(row));
  }

  std::vector<IntVector> normals;
  for (const auto& ray : extreme_rays(rows)) {
    IntVector r(ray.begin(), ray.begin() + static_cast<long>(n));
    if (is_zero(std::span<const Integer>(r))) continue;
    normals.push_back(primitive(std::span<const Integer>(r)));
  }
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());

  std::vector<Rational> offsets;
  for (const auto& r : normals) {
    Rational best = dot(std::span<const Rational>(pts[0]), std::span<const Integer>(r));
    for (const auto& p : pts) best = std::min(best, dot(std::span<const Rational>(p), std::span<const Integer>(r)));
    offsets.push_back(best);
  }

  Polytope poly;
  poly.dim_ = n;
  for (const auto& p : pts) {
    std::vector<Point> tight;
    for (std::size_t f = 0; f < normals.size(); ++f) {
      if (dot(std::span<const Rational>(p), std::span<const Integer>(normals[f])) == offsets[f])
        tight.push_back(to_point(normals[f]));
    }
    if (tight.size() >= n && rank(tight) == n) poly.vertices_.push_back(p);
  }

  for (std::size_t f = 0; f < normals.size(); ++f) {
    Facet facet;
    facet.normal = normals[f];
    facet.offset = offsets[f];
    std::vector<Point> fverts;
    for (std::size_t v = 0; v < poly.vertices_.size(); ++v) {
      if (dot(std::span<const Rational>(poly.vertices_[v]), std::span<const Integer>(normals[f])) == offsets[f]) {
        facet.vertices.push_back(v);
        fverts.push_back(poly.vertices_[v]);
      }
    }
    if (n == 1) {
      facet.lattice_volume = 1;
    } else {
      AffineHull h = hull_in_affine_span(fverts);
      // The projection drops exactly one coordinate k, and normal[k] != 0 there.
      std::size_t dropped = 0;
      while (std::find(h.pivots.begin(), h.pivots.end(), dropped) != h.pivots.end()) ++dropped;
      Integer nk = abs(facet.normal[dropped]);
      facet.lattice_volume = volume(*h.local) / Rational(nk);
    }
    poly.facets_.push_back(std::move(facet));
  }
  return poly;
}

Point AffineHull::to_ambient(std::span<const Rational> y) const {
  Point x = base;
  for (std::size_t j = 0; j < dim; ++j) {
    Rational t = y[j] - base[pivots[j]];
    for (std::size_t i = 0; i < ambient_dim; ++i) x[i] += t * directions[j][i];
  }
  return x;
}

Point AffineHull::to_local(std::span<const Rational> x) const {
  Point y;
  y.reserve(dim);
  for (auto p : pivots) y.push_back(x[p]);
  return y;
}

AffineHull hull_in_affine_span(const std::vector<Point>& input) {
  if (input.empty()) fail(ErrorCode::DegenerateInput, "empty point set");
  check_same_dimension(input);
  std::vector<Point> pts = unique_points(input);
  AffineHull h;
  h.ambient_dim = pts.front().size();
  h.base = pts.front();
  span_directions(pts, h.directions, h.pivots);
  h.dim = h.pivots.size();
  if (h.dim == 0) {
    h.vertices = {pts.front()};
    return h;
  }
  std::vector<Point> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(h.to_local(p));
  h.local = convex_hull(local);
  for (const auto& v : h.local->vertices()) h.vertices.push_back(h.to_ambient(v));
  std::sort(h.vertices.begin(), h.vertices.end());
  return h;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) fail(ErrorCode::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<Point> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      Point s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  }
  return convex_hull(sums);
}

Rational volume_from(const Polytope& p, std::span<const Rational> apex) {
  Rational total = 0;
  for (const auto& f : p.facets()) {
    Rational height = dot(apex, std::span<const Integer>(f.normal)) - f.offset;
    total += height * f.lattice_volume;
  }
  return total / static_cast<long>(p.dim());
}

Rational volume(const Polytope& p) { return volume_from(p, p.vertex_centroid()); }

Rational support_eval(const Polytope& p, std::span<const Integer> v) {
  if (v.size() != p.dim()) fail(ErrorCode::DimensionMismatch, "direction dimension");
  if (is_zero(v)) fail(ErrorCode::ZeroDirection, "support function at the zero direction");
  Rational best = dot(std::span<const Rational>(p.vertices().front()), v);
  for (const auto& m : p.vertices()) best = std::min(best, dot(std::span<const Rational>(m), v));
  return best;
}

Rational support_eval(const Polytope& p, const Direction& v) {
  if (v.dim() != p.dim()) fail(ErrorCode::DimensionMismatch, "direction dimension");
  const Point& c = v.coords();
  Rational best = dot(std::span<const Rational>(p.vertices().front()), std::span<const Rational>(c));
  for (const auto& m : p.vertices())
    best = std::min(best, dot(std::span<const Rational>(m), std::span<const Rational>(c)));
  return best;
}

Polytope scale(const Polytope& p, const Rational& factor) {
  if (factor <= 0) fail(ErrorCode::DomainError, "scale factor must be positive");
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (auto& x : v) x *= factor;
  return convex_hull(pts);
}

Polytope translate(const Polytope& p, std::span<const Rational> offset) {
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += offset[i];
  return convex_hull(pts);
}

Polytope box(const std::vector<std::pair<Rational, Rational>>& sides) {
  const std::size_t n = sides.size();
  std::vector<Point> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? sides[i].second : sides[i].first;
    pts.push_back(std::move(p));
  }
  return convex_hull(pts);
}

}  // namespace cvxdiff
