#pragma once

#include <random>
#include <vector>

#include "cvxdiff/decomp.hpp"
#include "cvxdiff/polytope.hpp"

namespace cvxdiff::testing {

inline Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

inline Polytope hull(std::initializer_list<std::initializer_list<long>> pts) {
  std::vector<Point> v;
  for (auto p : pts) v.push_back(pt(p));
  return convex_hull(v);
}

inline Polytope cube(long lo, long hi, std::size_t n) {
  return box(std::vector<std::pair<Rational, Rational>>(n, {Rational(lo), Rational(hi)}));
}

inline Polytope inner_triangle() { return hull({{0, 0}, {2, 0}, {0, 2}}); }
inline Polytope outer_square() { return cube(-2, 2, 2); }

/// Full-dimensional hull of `count` integer points in [-range, range]^n.
inline Polytope random_polytope(std::mt19937_64& rng, std::size_t n, std::size_t count, long range) {
  std::uniform_int_distribution<long> coord(-range, range);
  for (;;) {
    std::vector<Point> pts(count, Point(n));
    for (auto& p : pts)
      for (auto& x : p) x = coord(rng);
    if (affine_dimension(pts) == static_cast<int>(n)) return convex_hull(pts);
  }
}

/// Random point of p as a convex combination of its vertices with small denominators.
inline Point random_inner_point(std::mt19937_64& rng, const Polytope& p) {
  std::uniform_int_distribution<int> weight(0, 4);
  const auto& vs = p.vertices();
  Point x(p.dim(), Rational(0));
  Rational total = 0;
  std::vector<int> w(vs.size());
  while (total == 0) {
    total = 0;
    for (auto& wi : w) {
      wi = weight(rng);
      total += wi;
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(w[i]) * vs[i][j] / total;
  return x;
}

struct NestedPair {
  Polytope k1;
  Polytope k2;
};

/// K2 is a random lattice polytope; K1 is spanned by inner points of K2 and,
/// with some probability, by some of K2's own vertices, so faces may be shared.
inline NestedPair random_nested_pair(std::mt19937_64& rng, std::size_t n) {
  Polytope k2 = random_polytope(rng, n, n + 3 + rng() % 5, 6);
  std::bernoulli_distribution share(0.3);
  for (;;) {
    std::vector<Point> pts;
    const std::size_t m = n + 1 + rng() % 5;
    for (std::size_t i = 0; i < m; ++i) pts.push_back(random_inner_point(rng, k2));
    for (const auto& v : k2.vertices())
      if (share(rng)) pts.push_back(v);
    if (affine_dimension(pts) == static_cast<int>(n)) return {convex_hull(pts), k2};
  }
}

/// Two point sets in the parallel hyperplanes <a, x> = c1 and <a, x> = c2 of R^m,
/// each of dimension at most m - 1, whose union spans R^m.
struct ParallelFaces {
  std::vector<Point> f1;
  std::vector<Point> f2;
};

inline ParallelFaces random_parallel_faces(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<long> coord(-4, 4);
  for (;;) {
    IntVector a(m);
    for (auto& x : a) x = coord(rng);
    if (is_zero(std::span<const Integer>(a))) continue;
    // Basis of the hyperplane <a, x> = 0 scaled to integers: e_j * a_k - e_k * a_j.
    std::size_t k = 0;
    while (a[k] == 0) ++k;
    std::vector<Point> basis;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      Point b(m, Rational(0));
      b[j] = Rational(a[k]);
      b[k] = Rational(-a[j]);
      basis.push_back(b);
    }
    auto layer = [&](long height, std::size_t count) {
      std::vector<Point> pts;
      Point base(m, Rational(0));
      base[k] = Rational(height) / Rational(a[k]);
      std::uniform_int_distribution<long> c(-2, 2);
      for (std::size_t i = 0; i < count; ++i) {
        Point p = base;
        for (const auto& b : basis) {
          const long t = c(rng);
          for (std::size_t j = 0; j < m; ++j) p[j] += t * b[j];
        }
        pts.push_back(p);
      }
      return pts;
    };
    const long h1 = coord(rng), h2 = coord(rng);
    if (h1 == h2) continue;
    ParallelFaces out{layer(h1, 1 + rng() % (m + 2)), layer(h2, 1 + rng() % (m + 2))};
    std::vector<Point> all = out.f1;
    all.insert(all.end(), out.f2.begin(), out.f2.end());
    if (affine_dimension(all) == static_cast<int>(m)) return out;
  }
}

}  // namespace cvxdiff::testing
