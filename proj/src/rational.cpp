#include "cvxdiff/rational.hpp"

#include <regex>

#include "cvxdiff/error.hpp"

namespace cvxdiff {

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(\s*([+-]?[0-9]+)(?:/([0-9]+))?\s*)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) {
    fail(ErrorCode::ParseError, "not a rational literal: '" + s + "'");
  }
  std::string num = m[1].str();
  if (num.front() == '+') num.erase(0, 1);
  Integer n(num, 10);
  Integer d(1);
  if (m[2].matched) {
    d = Integer(m[2].str(), 10);
    if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point to_point(std::span<const Integer> v) {
  Point p;
  p.reserve(v.size());
  for (const auto& x : v) p.emplace_back(x);
  return p;
}

IntVector primitive(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  IntVector out(v.begin(), v.end());
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

IntVector primitive(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) {
    Rational y = x * l;
    scaled.push_back(y.get_num());
  }
  return primitive(std::span<const Integer>(scaled));
}

bool is_zero(std::span<const Integer> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::size_t rank(const std::vector<Point>& rows) {
  if (rows.empty()) return 0;
  std::vector<Point> m = rows;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Rational factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

double to_double(const Rational& value) { return value.get_d(); }

Direction::Direction(Point coords) : coords_(std::move(coords)) {
  if (is_zero(std::span<const Rational>(coords_)))
    fail(ErrorCode::ZeroDirection, "direction must be nonzero");
  primitive_ = cvxdiff::primitive(std::span<const Rational>(coords_));
}

Direction::Direction(IntVector coords) : Direction(to_point(coords)) {}

Direction::Direction(std::initializer_list<long> coords) {
  for (long c : coords) coords_.emplace_back(c);
  if (is_zero(std::span<const Rational>(coords_)))
    fail(ErrorCode::ZeroDirection, "direction must be nonzero");
  primitive_ = cvxdiff::primitive(std::span<const Rational>(coords_));
}

}  // namespace cvxdiff
