#pragma once

#include <functional>
#include <vector>

#include "cvxdiff/decomp.hpp"
#include "cvxdiff/measures.hpp"

namespace cvxdiff {

/// I(l, k) = integral over [0, 1] of t^k (1 - t)^(l - k) dt = ((l + 1) * C(l, k))^-1.
Rational beta_integral(unsigned l, unsigned k);

/// V(K_1, ..., K_d) = MV / d! for point sets in R^d. Bodies may be lower-dimensional.
Rational normalized_mixed_volume(const std::vector<std::vector<Point>>& bodies);

/// d-volume of the hull of points in R^d, zero when the hull is flat.
Rational hull_volume(const std::vector<Point>& points);

/// lambda F1 + (1 - lambda) F2, for faces already expressed in a common R^d.
AffineHull slice(const std::vector<Point>& f1, const std::vector<Point>& f2, const Rational& lambda);

/// Volume of convhull(F1 u F2) for point sets in distinct parallel hyperplanes of R^m
/// whose union spans R^m, as (gap / |a_k|) * (1 / (d + 1)) * sum_i V(F1^i, F2^(d-i)),
/// where d = m - 1 and the faces are projected along a coordinate k with a_k != 0.
Rational prism_volume(const std::vector<Point>& f1, const std::vector<Point>& f2);

/// c_F of one proper face of K2 by both routes.
struct CorrectionReport {
  std::size_t face = 0;               // index into FaceLattice(K2)
  Rational c_volume;                  // n! * volume of the correction set
  Rational c_measure;                 // sum of terms
  std::vector<Rational> terms;        // terms[i]: i copies of K1, n-1-i copies of K2
};

struct DegreeDifferenceReport {
  Rational degree_difference;  // n! (vol K2 - vol K1)
  Rational sum_c_volume;
  Rational sum_c_measure;
  std::vector<CorrectionReport> reports;
};

struct CorrectionOptions {
  /// Throw MismatchDetected when a face's two routes disagree.
  bool check = true;
  /// Hook applied to each mixed measure S(K1^i, K2^(n-1-i)) before it is used.
  std::function<void(std::size_t i, SphereMeasure&)> tamper;
};

/// S(K1, ..., K1, K2, ..., K2) with `copies_k1` copies of K1, via polarization
/// over the bodies a K1 + b K2.
SphereMeasure mixed_measure_of_pair(const Polytope& k1, const Polytope& k2, std::size_t copies_k1);

std::vector<CorrectionReport> correction_reports(const Decomposition& d,
                                                 const CorrectionOptions& opts = {});

CorrectionReport correction_via_measure(const Polytope& k1, const Polytope& k2, const Face& face);

/// n! (vol K2 - vol K1), sum of c_volume and sum of c_measure; throws MismatchDetected
/// unless all three agree (and, with opts.check, every face agrees).
DegreeDifferenceReport degree_difference_report(const Polytope& k1, const Polytope& k2,
                                                const CorrectionOptions& opts = {});
DegreeDifferenceReport degree_difference_report(const Decomposition& d,
                                                const CorrectionOptions& opts = {});

}  // namespace cvxdiff
