#pragma once

#include <vector>

#include "cvxdiff/duality.hpp"

namespace cvxdiff {

/// F1 ~ F2: faces of K1 and K2 whose normal cones meet in their relative interiors.
struct RelatedPair {
  std::size_t f1 = 0;   // index into FaceLattice(K1)
  std::size_t f2 = 0;   // index into FaceLattice(K2)
  IntVector witness;    // primitive, in relint(sigma_F1) and relint(sigma_F2)
};

/// convhull(F1, F2) for one related pair. Volume is zero unless the hull is full-dimensional.
struct DecompositionPiece {
  RelatedPair pair;
  AffineHull hull;
  Rational volume;
};

/// Union of the pieces attached to one proper face of K2, with c_F = n! * volume.
struct CorrectionSet {
  std::size_t face = 0;
  std::vector<std::size_t> pieces;  // indices into Decomposition::pieces
  Rational c_volume;
};

/// Canonical decomposition of K2 \ K1 together with the face lattices it indexes into.
struct Decomposition {
  FaceLattice k1;
  FaceLattice k2;
  std::vector<DecompositionPiece> pieces;  // sorted by (f2, f1)

  std::vector<CorrectionSet> correction_sets() const;
  Rational total_volume() const;
};

/// Throws DimensionMismatch / NotNested when K1 is not a subset of K2.
void require_nested(const Polytope& k1, const Polytope& k2);

/// One pair per proper face of the common refinement of both normal fans, i.e.
/// per proper face of K1 + K2; the witness is the sum of that face's refinement rays.
std::vector<RelatedPair> related_pairs(const FaceLattice& k1, const FaceLattice& k2);
std::vector<RelatedPair> related_pairs(const Polytope& k1, const Polytope& k2);

Decomposition canonical_decomposition(const Polytope& k1, const Polytope& k2);

std::vector<CorrectionSet> correction_sets(const Polytope& k1, const Polytope& k2);

struct DifferenceRay {
  IntVector ray;
  std::size_t f1 = 0;
  std::size_t f2 = 0;
};

/// A representative ray for every related pair.
std::vector<DifferenceRay> difference_rays(const Polytope& k1, const Polytope& k2);

/// Checks hull & K1 == F1 and hull subset of K2 through vertex tests against the witness hyperplane.
bool piece_contact_holds(const Decomposition& d, const DecompositionPiece& piece);

}  // namespace cvxdiff
