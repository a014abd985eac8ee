#include "cvxdiff/measures.hpp"

#include <cmath>

#include "cvxdiff/error.hpp"

namespace cvxdiff {
namespace {

void require_dims(const std::vector<Polytope>& bodies, std::size_t expected_count, std::size_t n) {
  if (bodies.size() != expected_count)
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(expected_count) + " bodies");
  for (const auto& b : bodies)
    if (b.dim() != n) fail(ErrorCode::DimensionMismatch, "bodies of different ambient dimension");
}

Polytope sum_of(const std::vector<Polytope>& bodies, std::size_t mask) {
  std::optional<Polytope> acc;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!((mask >> i) & 1)) continue;
    acc = acc ? minkowski_sum(*acc, bodies[i]) : bodies[i];
  }
  return *acc;
}

}  // namespace

void SphereMeasure::accumulate(const SphereMeasure& other, const Rational& coeff) {
  for (const auto& [r, w] : other.atoms) {
    auto [it, inserted] = atoms.emplace(r, 0);
    it->second += coeff * w;
    if (it->second == 0) atoms.erase(it);
  }
}

Point SphereMeasure::resultant() const {
  Point s(dim, 0);
  for (const auto& [r, w] : atoms)
    for (std::size_t i = 0; i < dim; ++i) s[i] += w * r[i];
  return s;
}

double SphereMeasure::euclidean_mass() const {
  double total = 0;
  for (const auto& [r, w] : atoms) {
    double norm2 = 0;
    for (const auto& x : r) norm2 += x.get_d() * x.get_d();
    total += w.get_d() * std::sqrt(norm2);
  }
  return total;
}

SphereMeasure surface_area_measure(const Polytope& p) {
  SphereMeasure s;
  s.dim = p.dim();
  for (const auto& f : p.facets()) s.atoms.emplace(f.normal, f.lattice_volume);
  return s;
}

SphereMeasure mixed_surface_area_measure(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) fail(ErrorCode::DimensionMismatch, "need at least one body");
  return mixed_surface_area_measure(bodies, bodies.front().dim());
}

SphereMeasure mixed_surface_area_measure(const std::vector<Polytope>& bodies, std::size_t n) {
  require_dims(bodies, n - 1, n);
  const std::size_t m = bodies.size();
  SphereMeasure s;
  s.dim = n;
  if (m == 0) {
    // S_0 on the 0-sphere {-1, +1}: counting measure.
    s.atoms.emplace(IntVector{1}, 1);
    s.atoms.emplace(IntVector{-1}, 1);
    return s;
  }
  const Rational norm = 1 / factorial(static_cast<unsigned>(m));
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    const Rational sign = ((m - size) % 2 == 0) ? 1 : -1;
    s.accumulate(surface_area_measure(sum_of(bodies, mask)), sign * norm);
  }
  return s;
}

Rational pair(const Polytope& source, const SphereMeasure& s, const ConeRestriction* restrict_to) {
  if (source.dim() != s.dim) fail(ErrorCode::DimensionMismatch, "measure and body dimensions differ");
  if (restrict_to && restrict_to->parent.dim() != s.dim)
    fail(ErrorCode::DimensionMismatch, "restriction cone dimension differs");
  Rational total = 0;
  for (const auto& [r, w] : s.atoms) {
    if (restrict_to && argmin_vertices(restrict_to->parent, r) != restrict_to->cone.face.vertices) continue;
    total += support_eval(source, std::span<const Integer>(r)) * w;
  }
  return total;
}

Rational mixed_volume_ie(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) fail(ErrorCode::DimensionMismatch, "need at least one body");
  const std::size_t n = bodies.front().dim();
  require_dims(bodies, n, n);
  Rational total = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    const Rational v = volume(sum_of(bodies, mask));
    if ((n - size) % 2 == 0) total += v; else total -= v;
  }
  return total;
}

Rational mixed_volume_via_measure(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) fail(ErrorCode::DimensionMismatch, "need at least one body");
  const std::size_t n = bodies.front().dim();
  require_dims(bodies, n, n);
  std::vector<Polytope> rest(bodies.begin() + 1, bodies.end());
  const Rational v = -pair(bodies.front(), mixed_surface_area_measure(rest, n)) / static_cast<long>(n);
  if (v != mixed_volume_ie(bodies) / factorial(static_cast<unsigned>(n)))
    fail(ErrorCode::ConventionMismatch, "measure pairing disagrees with inclusion-exclusion");
  return v;
}

Rational degree(const Polytope& k) { return factorial(static_cast<unsigned>(k.dim())) * volume(k); }

Rational mixed_degree(const std::vector<Polytope>& bodies) { return mixed_volume_ie(bodies); }

Rational mixed_degree_via_measure(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) fail(ErrorCode::DimensionMismatch, "need at least one body");
  const std::size_t n = bodies.front().dim();
  require_dims(bodies, n, n);
  std::vector<Polytope> rest(bodies.begin() + 1, bodies.end());
  return -factorial(static_cast<unsigned>(n - 1)) * pair(bodies.front(), mixed_surface_area_measure(rest, n));
}

}  // namespace cvxdiff
