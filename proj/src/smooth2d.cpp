#include "cvxdiff/smooth2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cvxdiff/error.hpp"

namespace cvxdiff::smooth2d {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Sub-interval endpoints are pulled inward by this much so that no stencil
// straddles a kink located to within bisection accuracy.
constexpr double kInset = 1e-9;

double wrap(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

std::vector<double> sorted_breakpoints(const SupportFunction& f) {
  std::vector<double> b;
  for (double x : f.breakpoints) b.push_back(wrap(x));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double angular_distance(double a, double b) {
  double d = std::fabs(wrap(a) - wrap(b));
  return std::min(d, kTwoPi - d);
}

bool is_breakpoint(const SupportFunction& f, double theta, double eps) {
  for (double b : f.breakpoints)
    if (angular_distance(theta, b) < eps) return true;
  return false;
}

struct Arc {
  double lo = -kInf;
  double hi = kInf;
};

// Smooth arc containing theta, unwrapped so that lo <= theta <= hi.
Arc arc_of(const SupportFunction& f, double theta) {
  const auto b = sorted_breakpoints(f);
  if (b.empty()) return {};
  const double t = wrap(theta);
  const double shift = theta - t;
  auto it = std::upper_bound(b.begin(), b.end(), t);
  if (it == b.begin()) return {b.back() - kTwoPi + shift, b.front() + shift};
  if (it == b.end()) return {b.back() + shift, b.front() + kTwoPi + shift};
  return {*(it - 1) + shift, *it + shift};
}

// Fourth-order first derivative; one-sided near the ends of the arc.
template <class Fn>
auto diff1(const Fn& g, double x, double h, const Arc& arc) {
  if (x - 2 * h >= arc.lo && x + 2 * h <= arc.hi)
    return (8.0 * (g(x + h) - g(x - h)) - (g(x + 2 * h) - g(x - 2 * h))) / (12 * h);
  const double side = x + 4 * h <= arc.hi ? 1.0 : -1.0;
  const double k = side * h;
  return (-25.0 * g(x) + 48.0 * g(x + k) - 36.0 * g(x + 2 * k) + 16.0 * g(x + 3 * k) - 3.0 * g(x + 4 * k)) / (12 * k);
}

struct V2 {
  double x, y;
  V2 operator+(V2 o) const { return {x + o.x, y + o.y}; }
  V2 operator-(V2 o) const { return {x - o.x, y - o.y}; }
  V2 operator/(double s) const { return {x / s, y / s}; }
  friend V2 operator*(double s, V2 v) { return {s * v.x, s * v.y}; }
  double norm() const { return std::hypot(x, y); }
};

V2 gradient_on_arc(const SupportFunction& f, double theta, double h, const Arc& arc) {
  const double phi = f.at_angle(theta);
  const double dphi = diff1([&](double t) { return f.at_angle(t); }, theta, h, arc);
  const double c = std::cos(theta), s = std::sin(theta);
  return {phi * c - dphi * s, phi * s + dphi * c};
}

double density_on_arc(const SupportFunction& f, double theta, double h, const Arc& arc) {
  V2 d = diff1([&](double t) { return gradient_on_arc(f, t, h, arc); }, theta, h, arc);
  return d.norm();
}

// One-sided limit of the Gauss map at a breakpoint, by quadratic extrapolation
// from interior samples at distances s, 2s and 3s.
V2 one_sided_limit(const SupportFunction& f, double theta, int side, const Config& cfg) {
  const double s = 10 * cfg.gauss_step;
  const Arc arc = arc_of(f, theta + side * 0.5 * s);
  V2 g1 = gradient_on_arc(f, theta + side * s, cfg.gauss_step, arc);
  V2 g2 = gradient_on_arc(f, theta + 2 * side * s, cfg.gauss_step, arc);
  V2 g3 = gradient_on_arc(f, theta + 3 * side * s, cfg.gauss_step, arc);
  return 3.0 * g1 - 3.0 * g2 + g3;
}

V2 cartesian_gradient(const SupportFunction& f, double a, double b, double h) {
  return {(f.eval(a + h, b) - f.eval(a - h, b)) / (2 * h), (f.eval(a, b + h) - f.eval(a, b - h)) / (2 * h)};
}

V2 grid_gradient(const SupportFunction& f, double theta, const Config& cfg) {
  return cartesian_gradient(f, std::cos(theta), std::sin(theta), cfg.gauss_step);
}

struct Simpson {
  double fine = 0;
  double coarse = 0;
};

// Composite Simpson with n (even) and n/2 panels from one set of samples.
template <class Fn>
Simpson simpson(const Fn& integrand, double a, double b, int n) {
  if (n < 4) n = 4;
  if (n % 4 != 0) n += 4 - n % 4;
  std::vector<double> y(static_cast<std::size_t>(n) + 1);
  const double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) y[static_cast<std::size_t>(i)] = integrand(i == n ? b : a + i * h);
  auto rule = [&](int step) {
    const int m = n / step;
    const double hh = h * step;
    double s = y.front() + y.back();
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * y[static_cast<std::size_t>(i * step)];
    return s * hh / 3;
  };
  return {rule(1), rule(2)};
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorCode::NonFinite, std::string(what) + " is not finite");
}

}  // namespace

double SupportFunction::at_angle(double theta) const { return eval(std::cos(theta), std::sin(theta)); }

SupportFunction builtin(const std::string& name) {
  using std::numbers::pi;
  if (name == "monja_phi1") {
    return {name,
            [](double a, double b) {
              if (a >= 0 && b >= 0) {
                const double s = a + b;
                return s > 0 ? a * b / s : 0.0;
              }
              return std::min({0.0, a, b});
            },
            {0.0, pi / 2, 5 * pi / 4}};
  }
  if (name == "monja_phi2") {
    return {name, [](double a, double b) { return std::min({0.0, a, b}); }, {0.0, pi / 2, 5 * pi / 4}};
  }
  if (name == "disk") return disk(1.0);
  fail(ErrorCode::UnknownName, "no builtin support function named '" + name + "'");
}

SupportFunction disk(double radius) {
  return {"disk", [radius](double a, double b) { return -radius * std::hypot(a, b); }, {}};
}

SupportFunction from_polytope(const Polytope& p) {
  if (p.dim() != 2) fail(ErrorCode::DimensionMismatch, "planar polytopes only");
  std::vector<Vec2> verts;
  for (const auto& v : p.vertices()) verts.push_back({to_double(v[0]), to_double(v[1])});
  std::vector<double> breaks;
  for (const auto& f : p.facets()) breaks.push_back(wrap(std::atan2(f.normal[1].get_d(), f.normal[0].get_d())));
  return {"polytope",
          [verts](double a, double b) {
            double best = kInf;
            for (const auto& v : verts) best = std::min(best, v[0] * a + v[1] * b);
            return best;
          },
          breaks};
}

Vec2 gauss_point(const SupportFunction& f, double theta, const Config& cfg) {
  if (is_breakpoint(f, theta, 1e-12)) fail(ErrorCode::BreakpointHit, "gauss_point at a breakpoint");
  V2 g = gradient_on_arc(f, theta, cfg.gauss_step, arc_of(f, theta));
  require_finite(g.x, "gauss point");
  require_finite(g.y, "gauss point");
  return {g.x, g.y};
}

double surface_measure_density(const SupportFunction& f, double theta, const Config& cfg) {
  if (is_breakpoint(f, theta, 1e-12)) fail(ErrorCode::BreakpointHit, "density at a breakpoint");
  const double rho = density_on_arc(f, theta, cfg.density_step, arc_of(f, theta));
  require_finite(rho, "density");
  return rho;
}

double atom_mass(const SupportFunction& f, double theta, const Config& cfg) {
  V2 plus = one_sided_limit(f, theta, +1, cfg);
  V2 minus = one_sided_limit(f, theta, -1, cfg);
  const double m = (plus - minus).norm();
  return m > cfg.atom_threshold ? m : 0.0;
}

std::vector<Atom> detect_atoms(const SupportFunction& f, const Config& cfg) {
  SupportFunction bare{f.name, f.eval, {}};
  constexpr int kGrid = 4096;
  const double offset = 1.234567e-4;
  // Below this bracket width the difference stencils see both sides of a kink.
  const double resolution = 20 * cfg.gauss_step;
  std::vector<double> found;
  auto g_at = [&](double t) { return grid_gradient(bare, t, cfg); };
  for (int i = 0; i < kGrid; ++i) {
    double t0 = offset + kTwoPi * i / kGrid;
    double t1 = offset + kTwoPi * (i + 1) / kGrid;
    V2 g0 = g_at(t0), g1 = g_at(t1);
    double jump = (g1 - g0).norm();
    if (jump <= cfg.atom_threshold) continue;
    bool atom = true;
    while (t1 - t0 > resolution) {
      // A probe within a stencil width of the kink sees a blend of both
      // sides, so two shifted probes are tried before giving up.
      double tm = 0, left = 0, right = 0;
      V2 gm{};
      bool concentrated = false;
      for (double shift : {0.0, -5.0, 5.0}) {
        tm = 0.5 * (t0 + t1) + shift * cfg.gauss_step;
        gm = g_at(tm);
        left = (gm - g0).norm();
        right = (g1 - gm).norm();
        if (std::max(left, right) >= 0.75 * jump) {
          concentrated = true;
          break;
        }
      }
      if (!concentrated) {
        atom = false;
        break;
      }
      if (left >= right) {
        t1 = tm;
        g1 = gm;
        jump = left;
      } else {
        t0 = tm;
        g0 = gm;
        jump = right;
      }
    }
    if (!atom || jump <= cfg.atom_threshold) continue;
    // The flat face dual to the atom is the segment between the one-sided
    // limits; the atom direction is normal to it.
    double t = 0.5 * (t0 + t1);
    for (int iter = 0; iter < 3; ++iter) {
      const V2 edge = one_sided_limit(bare, t, +1, cfg) - one_sided_limit(bare, t, -1, cfg);
      if (edge.norm() <= cfg.atom_threshold) break;
      double normal = std::atan2(edge.x, -edge.y);
      normal += kTwoPi * std::round((t - normal) / kTwoPi);
      if (std::fabs(normal - t) > 2 * resolution) break;
      t = normal;
    }
    found.push_back(wrap(t));
  }
  std::sort(found.begin(), found.end());
  std::vector<Atom> atoms;
  for (double t : found) {
    if (!atoms.empty() && angular_distance(atoms.back().angle, t) < resolution) continue;
    const double m = atom_mass(bare, t, cfg);
    if (m > 0) atoms.push_back({t, m});
  }
  return atoms;
}

DualFace dual_face_smooth(const SupportFunction& f, Vec2 v, const Config& cfg) {
  const double norm = std::hypot(v[0], v[1]);
  if (norm == 0) fail(ErrorCode::ZeroDirection, "dual face at the zero direction");
  const double h = cfg.gauss_step * norm;
  V2 g = cartesian_gradient(f, v[0], v[1], h);
  require_finite(g.x, "dual face");
  require_finite(g.y, "dual face");
  return {{g.x, g.y}, is_breakpoint(f, std::atan2(v[1], v[0]), 1e-9)};
}

Estimate numeric_correction(const SupportFunction& f1, const SupportFunction& f2, double theta_a,
                            double theta_b, const Config& cfg) {
  if (!(theta_b > theta_a)) fail(ErrorCode::DomainError, "sector is a single ray or empty; use the exact route");
  if (theta_b - theta_a > kTwoPi) fail(ErrorCode::DomainError, "sector wider than the full circle");

  // Cut points: breakpoints of either function strictly inside the sector.
  std::vector<double> cuts{theta_a, theta_b};
  for (const auto* f : {&f1, &f2}) {
    for (double b : f->breakpoints) {
      for (double t = wrap(b) + kTwoPi * std::floor(theta_a / kTwoPi) - kTwoPi; t < theta_b; t += kTwoPi)
        if (t > theta_a + kInset && t < theta_b - kInset) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < kInset; }), cuts.end());

  Estimate est;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Arc arc{cuts[k] + kInset, cuts[k + 1] - kInset};
    auto integrand = [&](double t) {
      const double gap = f1.at_angle(t) - f2.at_angle(t);
      const double rho = density_on_arc(f1, t, cfg.density_step, arc) + density_on_arc(f2, t, cfg.density_step, arc);
      return gap * rho;
    };
    Simpson s = simpson(integrand, arc.lo, arc.hi, cfg.panels);
    est.value += s.fine + (s.fine - s.coarse) / 15;
    est.coarse += s.coarse;
    est.error += std::fabs(s.fine - s.coarse) / 15;
    est.panels += cfg.panels;
  }
  for (std::size_t k = 1; k + 1 < cuts.size(); ++k) {
    const double t = cuts[k];
    double mass = 0;
    if (is_breakpoint(f1, t, 1e-12)) mass += atom_mass(f1, t, cfg);
    if (is_breakpoint(f2, t, 1e-12)) mass += atom_mass(f2, t, cfg);
    if (mass == 0) continue;
    const double contribution = (f1.at_angle(t) - f2.at_angle(t)) * mass;
    est.value += contribution;
    est.coarse += contribution;
    est.atoms.push_back({wrap(t), mass});
  }
  require_finite(est.value, "correction");
  if (est.error > cfg.tolerance) {
    fail(ErrorCode::NonConvergence, "Richardson estimate " + std::to_string(est.error) + " exceeds tolerance " +
                                        std::to_string(cfg.tolerance));
  }
  return est;
}

Estimate numeric_volume(const SupportFunction& f, const Config& cfg) {
  SupportFunction g = f;
  if (g.breakpoints.empty()) {
    for (const auto& a : detect_atoms(f, cfg)) g.breakpoints.push_back(a.angle);
  }
  const auto cuts = sorted_breakpoints(g);

  Estimate est;
  auto integrate = [&](double lo, double hi, Arc arc) {
    auto integrand = [&](double t) { return g.at_angle(t) * density_on_arc(g, t, cfg.density_step, arc); };
    Simpson s = simpson(integrand, lo, hi, cfg.panels);
    est.value += s.fine + (s.fine - s.coarse) / 15;
    est.coarse += s.coarse;
    est.error += std::fabs(s.fine - s.coarse) / 15;
    est.panels += cfg.panels;
  };
  if (cuts.empty()) {
    integrate(0, kTwoPi, Arc{});
  } else {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double lo = cuts[k] + kInset;
      const double hi = (k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + kTwoPi) - kInset;
      integrate(lo, hi, Arc{lo, hi});
    }
    for (double t : cuts) {
      const double m = atom_mass(g, t, cfg);
      if (m == 0) continue;
      est.value += g.at_angle(t) * m;
      est.coarse += g.at_angle(t) * m;
      est.atoms.push_back({t, m});
    }
  }
  est.value *= -0.5;
  est.coarse *= -0.5;
  est.error *= 0.5;
  require_finite(est.value, "volume");
  if (est.error > cfg.tolerance) {
    fail(ErrorCode::NonConvergence, "Richardson estimate " + std::to_string(est.error) + " exceeds tolerance " +
                                        std::to_string(cfg.tolerance));
  }
  return est;
}

ShapeCheck check_support_function(const SupportFunction& f, int samples, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0, kTwoPi);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  ShapeCheck out;
  for (int i = 0; i < samples; ++i) {
    const double t = angle(rng), r = radius(rng);
    const double a = r * std::cos(t), b = r * std::sin(t);
    const double v = f.eval(a, b);
    out.homogeneity = std::max(out.homogeneity, std::fabs(f.eval(2 * a, 2 * b) - 2 * v) / std::max(1.0, std::fabs(v)));
    const double t2 = angle(rng), r2 = radius(rng);
    const double c = r2 * std::cos(t2), d = r2 * std::sin(t2);
    const double mid = f.eval(0.5 * (a + c), 0.5 * (b + d));
    out.concavity = std::max(out.concavity, 0.5 * (v + f.eval(c, d)) - mid);
  }
  return out;
}

}  // namespace cvxdiff::smooth2d
