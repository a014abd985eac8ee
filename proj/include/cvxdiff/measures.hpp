#pragma once

#include <map>
#include <vector>

#include "cvxdiff/duality.hpp"

namespace cvxdiff {

/// Finitely atomic measure on directions. Each atom is a primitive integer
/// direction r with lattice weight l(r); its Euclidean mass is l(r) * |r|.
///
/// Atoms sit at min-convention normals: a facet contributes at the direction
/// whose argmin face it is, i.e. at its inward normal. Consequently full-sphere
/// pairings against support functions carry a minus sign:
///   n vol(P) = -<phi_P, S(P)>,   n V(K1..Kn) = -<phi_K1, S(K2..Kn)>.
struct SphereMeasure {
  std::size_t dim = 0;
  std::map<IntVector, Rational> atoms;

  /// Adds coeff * other, dropping atoms that cancel.
  void accumulate(const SphereMeasure& other, const Rational& coeff);
  /// Sum of l(r) * r; zero for the surface area measure of any polytope.
  Point resultant() const;
  /// Euclidean total mass, for reports only.
  double euclidean_mass() const;
  friend bool operator==(const SphereMeasure&, const SphereMeasure&) = default;
};

SphereMeasure surface_area_measure(const Polytope& p);

/// S(K_1, ..., K_{n-1}, .) by polarization over the Minkowski sums of all nonempty sublists.
SphereMeasure mixed_surface_area_measure(const std::vector<Polytope>& bodies);
/// Same, with the ambient dimension given explicitly so that n = 1 (no bodies) works.
SphereMeasure mixed_surface_area_measure(const std::vector<Polytope>& bodies, std::size_t n);

/// Restricts a pairing to atoms in relint(cone) of a face of `parent`.
struct ConeRestriction {
  const Polytope& parent;
  const NormalCone& cone;
};

/// sum over atoms r of phi_source(r) * l(r).
Rational pair(const Polytope& source, const SphereMeasure& s,
              const ConeRestriction* restrict_to = nullptr);

/// Inclusion-exclusion over the 2^n - 1 Minkowski sums; MV(K, ..., K) = n! vol(K).
Rational mixed_volume_ie(const std::vector<Polytope>& bodies);

/// -(1/n) <phi_K1, S(K2, ..., Kn)>, checked against mixed_volume_ie / n!.
/// Throws ConventionMismatch if the two disagree.
Rational mixed_volume_via_measure(const std::vector<Polytope>& bodies);

/// Degree of the nef toric b-divisor attached to K: n! vol(K).
Rational degree(const Polytope& k);
/// Mixed degree D_1 ... D_n = MV(K_1, ..., K_n).
Rational mixed_degree(const std::vector<Polytope>& bodies);
/// The same mixed degree as -(n-1)! <phi_K1, S(K2, ..., Kn)>.
Rational mixed_degree_via_measure(const std::vector<Polytope>& bodies);

}  // namespace cvxdiff
