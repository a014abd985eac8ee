#include "cvxdiff/oracle.hpp"

#include <cmath>
#include <optional>

#include "cvxdiff/error.hpp"

namespace cvxdiff::oracle {
namespace {

using i128 = __int128;
constexpr int kFractionBits = 53;

void check_box(const McConfig& cfg) {
  if (cfg.box.empty()) fail(ErrorCode::EmptyBox, "sampling box has no coordinates");
  for (const auto& [lo, hi] : cfg.box)
    if (!(hi > lo)) fail(ErrorCode::EmptyBox, "sampling box has an empty side");
  if (cfg.samples == 0) fail(ErrorCode::EmptyBox, "zero samples requested");
}

double box_volume(const McConfig& cfg) {
  Rational v = 1;
  for (const auto& [lo, hi] : cfg.box) v *= hi - lo;
  return to_double(v);
}

McEstimate finish(const McConfig& cfg, std::uint64_t hits) {
  const double n = static_cast<double>(cfg.samples);
  const double p = static_cast<double>(hits) / n;
  const double vol = box_volume(cfg);
  return {p * vol, vol * std::sqrt(p * (1 - p) / n), hits, cfg.samples};
}

std::uint64_t fraction_bits(const McConfig& cfg, std::uint64_t i, std::size_t j) {
  return counter_hash(cfg.seed, i * cfg.box.size() + j) >> (64 - kFractionBits);
}

std::optional<i128> to_i128(const Integer& x) {
  Integer bound = Integer(1) << 120;
  if (abs(x) >= bound) return std::nullopt;
  Integer a = abs(x);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  i128 v = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
  return x < 0 ? -v : v;
}

bool integral_box(const McConfig& cfg) {
  for (const auto& [lo, hi] : cfg.box)
    if (lo.get_den() != 1 || hi.get_den() != 1 || !lo.get_num().fits_slong_p() || !hi.get_num().fits_slong_p())
      return false;
  return true;
}

// Facet tests in the scaled lattice X = x * 2^53, exact in 128-bit integers.
class LatticePolytope {
 public:
  static std::optional<LatticePolytope> make(const Polytope& p, const McConfig& cfg) {
    if (!integral_box(cfg) || p.dim() != cfg.box.size()) return std::nullopt;
    Integer max_abs = 0;
    for (const auto& [lo, hi] : cfg.box) {
      max_abs = std::max(max_abs, Integer(abs(lo.get_num())));
      max_abs = std::max(max_abs, Integer(abs(hi.get_num())));
    }
    max_abs = (max_abs + 1) << kFractionBits;
    LatticePolytope lp;
    for (const auto& f : p.facets()) {
      Row row;
      Integer l1 = 0;
      for (std::size_t j = 0; j < f.normal.size(); ++j) {
        if (!f.normal[j].fits_slong_p()) return std::nullopt;
        row.normal.push_back(f.normal[j].get_si());
        l1 += abs(f.normal[j]);
      }
      if (l1 * max_abs >= (Integer(1) << 120)) return std::nullopt;
      Rational scaled = f.offset * (Integer(1) << kFractionBits);
      Integer fl, cl;
      mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      mpz_cdiv_q(cl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      auto a = to_i128(fl), b = to_i128(cl);
      if (!a || !b) return std::nullopt;
      row.open_threshold = *a;
      row.closed_threshold = *b;
      lp.rows_.push_back(std::move(row));
    }
    return lp;
  }

  bool interior(const std::vector<i128>& x) const {
    for (const auto& r : rows_)
      if (eval(r, x) <= r.open_threshold) return false;
    return true;
  }
  bool closed(const std::vector<i128>& x) const {
    for (const auto& r : rows_)
      if (eval(r, x) < r.closed_threshold) return false;
    return true;
  }

 private:
  struct Row {
    std::vector<long> normal;
    i128 open_threshold = 0;    // interior iff <X, r> > floor(c 2^53)
    i128 closed_threshold = 0;  // member iff <X, r> >= ceil(c 2^53)
  };
  static i128 eval(const Row& r, const std::vector<i128>& x) {
    i128 s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += static_cast<i128>(r.normal[j]) * x[j];
    return s;
  }
  std::vector<Row> rows_;
};

std::vector<i128> lattice_sample(const McConfig& cfg, std::uint64_t i) {
  std::vector<i128> x(cfg.box.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const long lo = cfg.box[j].first.get_num().get_si();
    const long hi = cfg.box[j].second.get_num().get_si();
    x[j] = (static_cast<i128>(lo) << kFractionBits) +
           static_cast<i128>(hi - lo) * static_cast<i128>(fraction_bits(cfg, i, j));
  }
  return x;
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Point sample_point(const McConfig& cfg, std::uint64_t i) {
  const Rational denom(Integer(1) << kFractionBits);
  Point x(cfg.box.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    Integer k;
    mpz_set_ui(k.get_mpz_t(), fraction_bits(cfg, i, j));
    const auto& [lo, hi] = cfg.box[j];
    x[j] = lo + (hi - lo) * Rational(k) / denom;
  }
  return x;
}

std::vector<std::pair<Rational, Rational>> bounding_box(const Polytope& p) {
  std::vector<std::pair<Rational, Rational>> box;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    Rational lo = p.vertices().front()[j], hi = lo;
    for (const auto& v : p.vertices()) {
      lo = std::min(lo, v[j]);
      hi = std::max(hi, v[j]);
    }
    Integer fl, cl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_cdiv_q(cl.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    box.emplace_back(Rational(fl), Rational(cl));
  }
  return box;
}

McEstimate mc_volume(const Region& region, const McConfig& cfg) {
  check_box(cfg);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i)
    if (region(sample_point(cfg, i))) ++hits;
  return finish(cfg, hits);
}

McEstimate mc_volume(const Polytope& p, const McConfig& cfg) {
  check_box(cfg);
  if (p.dim() != cfg.box.size()) fail(ErrorCode::DimensionMismatch, "box and polytope dimensions differ");
  for (const auto& v : p.vertices())
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] < cfg.box[j].first || v[j] > cfg.box[j].second)
        fail(ErrorCode::DomainError, "sampling box does not contain the polytope");
  auto lattice = LatticePolytope::make(p, cfg);
  if (!lattice) return mc_volume([&p](std::span<const Rational> x) { return p.contains(x); }, cfg);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i)
    if (lattice->closed(lattice_sample(cfg, i))) ++hits;
  return finish(cfg, hits);
}

std::uint64_t mc_overlap_count(const std::vector<Polytope>& pieces, const McConfig& cfg) {
  check_box(cfg);
  std::vector<LatticePolytope> fast;
  bool use_fast = true;
  for (const auto& p : pieces) {
    auto lp = LatticePolytope::make(p, cfg);
    if (!lp) {
      use_fast = false;
      break;
    }
    fast.push_back(std::move(*lp));
  }
  std::uint64_t doubles = 0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    int inside = 0;
    if (use_fast) {
      const auto x = lattice_sample(cfg, i);
      for (const auto& lp : fast)
        if (lp.interior(x) && ++inside >= 2) break;
    } else {
      const auto x = sample_point(cfg, i);
      for (const auto& p : pieces)
        if (p.interior_contains(x) && ++inside >= 2) break;
    }
    if (inside >= 2) ++doubles;
  }
  return doubles;
}

}  // namespace cvxdiff::oracle
