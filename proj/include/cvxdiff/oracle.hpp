#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cvxdiff/polytope.hpp"

namespace cvxdiff::oracle {

/// SplitMix64 evaluated at a counter: output i of the stream seeded with `seed`.
/// Stateless, so sample ranges can be drawn independently and in any order.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index);

struct McConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::vector<std::pair<Rational, Rational>> box;
};

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Sample i: coordinate j is lo_j + (hi_j - lo_j) * k / 2^53 with k the top 53
/// bits of counter_hash(seed, i * dim + j).
Point sample_point(const McConfig& cfg, std::uint64_t i);

/// Smallest integer box containing the polytope.
std::vector<std::pair<Rational, Rational>> bounding_box(const Polytope& p);

using Region = std::function<bool(std::span<const Rational>)>;

/// Hit fraction times box volume with binomial standard error. Throws EmptyBox.
McEstimate mc_volume(const Region& region, const McConfig& cfg);

/// Same estimate for a polytope; exact integer arithmetic when the box is integral.
McEstimate mc_volume(const Polytope& p, const McConfig& cfg);

/// Number of samples lying in the interiors of at least two of the given polytopes.
std::uint64_t mc_overlap_count(const std::vector<Polytope>& pieces, const McConfig& cfg);

}  // namespace cvxdiff::oracle
