#include "cvxdiff/correction.hpp"

#include <algorithm>

#include "cvxdiff/error.hpp"

namespace cvxdiff {
namespace {

std::vector<Point> minkowski_points(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& p : a) {
    for (const auto& q : b) {
      Point s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      sums.push_back(std::move(s));
    }
  }
  return hull_in_affine_span(sums).vertices;
}

std::vector<Point> scaled_points(std::vector<Point> pts, const Rational& t) {
  for (auto& p : pts)
    for (auto& x : p) x *= t;
  return pts;
}

}  // namespace

Rational beta_integral(unsigned l, unsigned k) {
  if (k > l) fail(ErrorCode::DomainError, "beta_integral requires k <= l");
  return 1 / (Rational(l + 1) * Rational(binomial(l, k)));
}

Rational hull_volume(const std::vector<Point>& points) {
  AffineHull h = hull_in_affine_span(points);
  if (!h.full_dimensional()) return 0;
  return volume(*h.local);
}

Rational normalized_mixed_volume(const std::vector<std::vector<Point>>& bodies) {
  const std::size_t d = bodies.size();
  if (d == 0) return 1;
  for (const auto& b : bodies) {
    if (b.empty() || b.front().size() != d)
      fail(ErrorCode::DimensionMismatch, "need d nonempty bodies in R^d");
  }
  Rational total = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    std::vector<Point> acc;
    for (std::size_t i = 0; i < d; ++i) {
      if (!((mask >> i) & 1)) continue;
      acc = acc.empty() ? hull_in_affine_span(bodies[i]).vertices : minkowski_points(acc, bodies[i]);
    }
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    const Rational v = hull_volume(acc);
    if ((d - size) % 2 == 0) total += v; else total -= v;
  }
  return total / factorial(static_cast<unsigned>(d));
}

AffineHull slice(const std::vector<Point>& f1, const std::vector<Point>& f2, const Rational& lambda) {
  if (lambda < 0 || lambda > 1) fail(ErrorCode::DomainError, "slice parameter outside [0, 1]");
  if (f1.empty() || f2.empty()) fail(ErrorCode::DegenerateInput, "empty face");
  if (lambda == 1) return hull_in_affine_span(f1);
  if (lambda == 0) return hull_in_affine_span(f2);
  return hull_in_affine_span(minkowski_points(scaled_points(f1, lambda), scaled_points(f2, 1 - lambda)));
}

Rational prism_volume(const std::vector<Point>& f1, const std::vector<Point>& f2) {
  if (f1.empty() || f2.empty()) fail(ErrorCode::DegenerateInput, "empty face");
  const std::size_t m = f1.front().size();
  for (const auto* f : {&f1, &f2})
    for (const auto& p : *f)
      if (p.size() != m) fail(ErrorCode::DimensionMismatch, "faces of different dimension");

  // Direction space of both faces; it must be a hyperplane direction not containing f2 - f1.
  std::vector<Point> dirs;
  for (const auto* f : {&f1, &f2}) {
    for (const auto& p : *f) {
      Point d(m);
      for (std::size_t i = 0; i < m; ++i) d[i] = p[i] - f->front()[i];
      dirs.push_back(std::move(d));
    }
  }
  if (rank(dirs) + 1 != m) fail(ErrorCode::DegenerateInput, "faces do not lie in parallel hyperplanes of a common span");

  // Normal a of the hyperplane direction: kernel of the direction matrix.
  std::vector<Point> spanning = dirs;
  spanning.push_back(Point(m, 0));
  AffineHull dir_span = hull_in_affine_span(spanning);
  std::size_t k = 0;
  while (std::find(dir_span.pivots.begin(), dir_span.pivots.end(), k) != dir_span.pivots.end()) ++k;
  // With pivots in RREF form, a_k = 1 and a_p = -directions[j][k] for pivot p = pivots[j].
  Point a(m, 0);
  a[k] = 1;
  for (std::size_t j = 0; j < dir_span.dim; ++j) a[dir_span.pivots[j]] = -dir_span.directions[j][k];
  IntVector normal = primitive(std::span<const Rational>(a));

  const Rational c1 = dot(std::span<const Rational>(f1.front()), std::span<const Integer>(normal));
  const Rational c2 = dot(std::span<const Rational>(f2.front()), std::span<const Integer>(normal));
  if (c1 == c2) fail(ErrorCode::DegenerateInput, "faces lie in the same hyperplane");

  auto project = [&](const std::vector<Point>& f) {
    std::vector<Point> out;
    for (const auto& p : f) {
      Point y;
      for (std::size_t i = 0; i < m; ++i)
        if (i != k) y.push_back(p[i]);
      out.push_back(std::move(y));
    }
    return out;
  };
  const auto g1 = project(f1);
  const auto g2 = project(f2);
  const std::size_t d = m - 1;

  Rational sum = 0;
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<std::vector<Point>> bodies(i, g1);
    bodies.insert(bodies.end(), d - i, g2);
    sum += normalized_mixed_volume(bodies);
  }
  const Rational unit_gap_volume = sum / static_cast<long>(d + 1);
  return unit_gap_volume * abs(c2 - c1) / Rational(abs(normal[k]));
}

SphereMeasure mixed_measure_of_pair(const Polytope& k1, const Polytope& k2, std::size_t copies_k1) {
  const std::size_t n = k1.dim();
  if (k2.dim() != n) fail(ErrorCode::DimensionMismatch, "K1 and K2 dimensions differ");
  if (n == 1) return mixed_surface_area_measure({}, 1);
  const std::size_t m = n - 1;
  const std::size_t i = copies_k1;
  const std::size_t j = m - i;
  SphereMeasure s;
  s.dim = n;
  const Rational norm = 1 / factorial(static_cast<unsigned>(m));
  for (std::size_t a = 0; a <= i; ++a) {
    for (std::size_t b = 0; b <= j; ++b) {
      if (a + b == 0) continue;
      Rational coeff = Rational(binomial(static_cast<unsigned>(i), static_cast<unsigned>(a)) *
                                binomial(static_cast<unsigned>(j), static_cast<unsigned>(b))) * norm;
      if ((m - a - b) % 2 == 1) coeff = -coeff;
      Polytope body = a == 0   ? scale(k2, static_cast<long>(b))
                      : b == 0 ? scale(k1, static_cast<long>(a))
                               : minkowski_sum(scale(k1, static_cast<long>(a)), scale(k2, static_cast<long>(b)));
      s.accumulate(surface_area_measure(body), coeff);
    }
  }
  return s;
}

std::vector<CorrectionReport> correction_reports(const Decomposition& d, const CorrectionOptions& opts) {
  const Polytope& k1 = d.k1.polytope();
  const Polytope& k2 = d.k2.polytope();
  const std::size_t n = k1.dim();
  const Rational scale_factor = factorial(static_cast<unsigned>(n - 1));

  std::vector<CorrectionReport> reports;
  std::vector<std::size_t> slot(d.k2.size(), 0);
  for (const auto& cs : d.correction_sets()) {
    slot[cs.face] = reports.size();
    CorrectionReport r;
    r.face = cs.face;
    r.c_volume = cs.c_volume;
    r.terms.assign(n, 0);
    reports.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < n; ++i) {
    SphereMeasure s = mixed_measure_of_pair(k1, k2, i);
    if (opts.tamper) opts.tamper(i, s);
    for (const auto& [r, w] : s.atoms) {
      const std::size_t face = d.k2.argmin(r);
      const Rational gap = support_eval(k1, std::span<const Integer>(r)) - support_eval(k2, std::span<const Integer>(r));
      reports[slot[face]].terms[i] += scale_factor * gap * w;
    }
  }
  for (auto& r : reports) {
    r.c_measure = 0;
    for (const auto& t : r.terms) r.c_measure += t;
    if (opts.check && r.c_measure != r.c_volume) {
      fail(ErrorCode::MismatchDetected, "face " + std::to_string(r.face) + ": c_volume " +
                                            format_rational(r.c_volume) + " != c_measure " +
                                            format_rational(r.c_measure));
    }
  }
  return reports;
}

CorrectionReport correction_via_measure(const Polytope& k1, const Polytope& k2, const Face& face) {
  Decomposition d = canonical_decomposition(k1, k2);
  const std::size_t idx = d.k2.index_of(face.vertices);
  for (auto& r : correction_reports(d)) {
    if (r.face == idx) return r;
  }
  fail(ErrorCode::DomainError, "the improper face carries no correction term");
}

DegreeDifferenceReport degree_difference_report(const Decomposition& d, const CorrectionOptions& opts) {
  const Polytope& k1 = d.k1.polytope();
  const Polytope& k2 = d.k2.polytope();
  DegreeDifferenceReport out;
  out.degree_difference = degree(k2) - degree(k1);
  out.reports = correction_reports(d, opts);
  out.sum_c_volume = 0;
  out.sum_c_measure = 0;
  for (const auto& r : out.reports) {
    out.sum_c_volume += r.c_volume;
    out.sum_c_measure += r.c_measure;
  }
  if (opts.check && (out.sum_c_volume != out.degree_difference || out.sum_c_measure != out.degree_difference)) {
    fail(ErrorCode::MismatchDetected, "degree difference " + format_rational(out.degree_difference) +
                                          ", sum c_volume " + format_rational(out.sum_c_volume) +
                                          ", sum c_measure " + format_rational(out.sum_c_measure));
  }
  return out;
}

DegreeDifferenceReport degree_difference_report(const Polytope& k1, const Polytope& k2,
                                                const CorrectionOptions& opts) {
  return degree_difference_report(canonical_decomposition(k1, k2), opts);
}

}  // namespace cvxdiff
