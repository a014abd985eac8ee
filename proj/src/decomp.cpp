#include "cvxdiff/decomp.hpp"

#include <algorithm>
#include <tuple>

#include "cvxdiff/error.hpp"

namespace cvxdiff {

void require_nested(const Polytope& k1, const Polytope& k2) {
  if (k1.dim() != k2.dim()) fail(ErrorCode::DimensionMismatch, "K1 and K2 live in different dimensions");
  for (const auto& v : k1.vertices()) {
    if (!k2.contains(v)) fail(ErrorCode::NotNested, "a vertex of K1 violates a facet inequality of K2");
  }
}

std::vector<RelatedPair> related_pairs(const FaceLattice& k1, const FaceLattice& k2) {
  require_nested(k1.polytope(), k2.polytope());
  const Polytope sum = minkowski_sum(k1.polytope(), k2.polytope());
  std::vector<RelatedPair> pairs;
  for (const auto& g : exposed_faces(sum)) {
    if (g.improper()) continue;
    IntVector w(sum.dim(), 0);
    for (auto k : g.facets) {
      const auto& r = sum.facets()[k].normal;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += r[i];
    }
    RelatedPair rp;
    rp.witness = primitive(std::span<const Integer>(w));
    rp.f1 = k1.argmin(rp.witness);
    rp.f2 = k2.argmin(rp.witness);
    pairs.push_back(std::move(rp));
  }
  std::sort(pairs.begin(), pairs.end(), [](const RelatedPair& a, const RelatedPair& b) {
    return std::tie(a.f2, a.f1) < std::tie(b.f2, b.f1);
  });
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].f1 == pairs[i - 1].f1 && pairs[i].f2 == pairs[i - 1].f2)
      fail(ErrorCode::MismatchDetected, "refinement cone produced a duplicate related pair");
  }
  return pairs;
}

std::vector<RelatedPair> related_pairs(const Polytope& k1, const Polytope& k2) {
  return related_pairs(FaceLattice(k1), FaceLattice(k2));
}

Decomposition canonical_decomposition(const Polytope& k1, const Polytope& k2) {
  Decomposition d{FaceLattice(k1), FaceLattice(k2), {}};
  for (auto& rp : related_pairs(d.k1, d.k2)) {
    std::vector<Point> pts = face_points(k1, d.k1.face(rp.f1));
    for (auto& p : face_points(k2, d.k2.face(rp.f2))) pts.push_back(std::move(p));
    DecompositionPiece piece{std::move(rp), hull_in_affine_span(pts), 0};
    if (piece.hull.full_dimensional()) piece.volume = volume(*piece.hull.local);
    d.pieces.push_back(std::move(piece));
  }
  return d;
}

std::vector<CorrectionSet> Decomposition::correction_sets() const {
  const Rational nfact = factorial(static_cast<unsigned>(k2.polytope().dim()));
  std::vector<CorrectionSet> sets;
  for (std::size_t f = 0; f < k2.size(); ++f) {
    if (k2.face(f).improper()) continue;
    CorrectionSet cs;
    cs.face = f;
    Rational vol = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].pair.f2 != f) continue;
      cs.pieces.push_back(i);
      vol += pieces[i].volume;
    }
    cs.c_volume = nfact * vol;
    sets.push_back(std::move(cs));
  }
  return sets;
}

Rational Decomposition::total_volume() const {
  Rational s = 0;
  for (const auto& p : pieces) s += p.volume;
  return s;
}

std::vector<CorrectionSet> correction_sets(const Polytope& k1, const Polytope& k2) {
  return canonical_decomposition(k1, k2).correction_sets();
}

std::vector<DifferenceRay> difference_rays(const Polytope& k1, const Polytope& k2) {
  std::vector<DifferenceRay> rays;
  for (auto& rp : related_pairs(k1, k2)) rays.push_back({std::move(rp.witness), rp.f1, rp.f2});
  return rays;
}

bool piece_contact_holds(const Decomposition& d, const DecompositionPiece& piece) {
  const Polytope& k1 = d.k1.polytope();
  const Polytope& k2 = d.k2.polytope();
  const auto& w = piece.pair.witness;
  const Rational level = support_eval(k1, std::span<const Integer>(w));
  const Face& f1 = d.k1.face(piece.pair.f1);
  for (const auto& x : piece.hull.vertices) {
    if (!k2.contains(x)) return false;
    if (dot(std::span<const Rational>(x), std::span<const Integer>(w)) > level) return false;
    if (k1.contains(x)) {
      auto it = std::find(k1.vertices().begin(), k1.vertices().end(), x);
      if (it == k1.vertices().end()) return false;
      auto idx = static_cast<std::size_t>(it - k1.vertices().begin());
      if (!std::binary_search(f1.vertices.begin(), f1.vertices.end(), idx)) return false;
    }
  }
  return true;
}

}  // namespace cvxdiff
