#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvxdiff {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point of M_R with exact coordinates.
using Point = std::vector<Rational>;
/// An integer vector; used for primitive normals and ray generators.
using IntVector = std::vector<Integer>;

/// Parses "p/q", "-p/q" or an integer literal. Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string format_rational(const Rational& value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const Rational> a, std::span<const Integer> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

Point to_point(std::span<const Integer> v);

/// Coprime integer vector on the same ray; the zero vector maps to itself.
IntVector primitive(std::span<const Rational> v);
IntVector primitive(std::span<const Integer> v);

bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

/// Rank of a list of rational row vectors, by exact elimination.
std::size_t rank(const std::vector<Point>& rows);

Rational factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

double to_double(const Rational& value);

/// A direction in N_R, carried both as given and as its primitive integer generator.
class Direction {
 public:
  explicit Direction(Point coords);
  explicit Direction(IntVector coords);
  Direction(std::initializer_list<long> coords);

  const Point& coords() const { return coords_; }
  const IntVector& primitive() const { return primitive_; }
  std::size_t dim() const { return coords_.size(); }

 private:
  Point coords_;
  IntVector primitive_;
};

}  // namespace cvxdiff
