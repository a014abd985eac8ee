#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cvxdiff/polytope.hpp"

namespace cvxdiff::smooth2d {

using Vec2 = std::array<double, 2>;

/// A planar convex body given through its support function (min convention).
///
/// `eval` must be positively homogeneous of degree one, concave and reentrant.
/// Breakpoints are angles in [0, 2 pi) where one-sided derivatives may differ;
/// between consecutive breakpoints the function is assumed smooth.
struct SupportFunction {
  std::string name;
  std::function<double(double a, double b)> eval;
  std::vector<double> breakpoints;

  double at_angle(double theta) const;
};

struct Config {
  int panels = 1024;            // Simpson panels per smooth arc
  double tolerance = 1e-6;      // Richardson error bound
  double gauss_step = 1e-6;     // angular step for gauss_point
  double density_step = 1e-3;   // angular step for the Gauss-map derivative
  double atom_threshold = 1e-6; // minimal gradient jump counted as an atom
};

/// Names: monja_phi1, monja_phi2, disk (unit radius). Throws UnknownName.
SupportFunction builtin(const std::string& name);
SupportFunction disk(double radius);
SupportFunction from_polytope(const Polytope& p);

/// Gradient of the support function at (cos theta, sin theta): the boundary point dual to theta.
/// Throws BreakpointHit when theta lies on a breakpoint.
Vec2 gauss_point(const SupportFunction& f, double theta, const Config& cfg = {});

/// |d/dtheta gauss_point|, the arclength density of the Gauss image.
double surface_measure_density(const SupportFunction& f, double theta, const Config& cfg = {});

/// Flat edge length at a breakpoint: |g(theta+) - g(theta-)|.
double atom_mass(const SupportFunction& f, double theta, const Config& cfg = {});

struct Atom {
  double angle = 0;
  double mass = 0;
};

/// Atoms located by bracketing jumps of the Gauss map, ignoring supplied breakpoints.
std::vector<Atom> detect_atoms(const SupportFunction& f, const Config& cfg = {});

struct DualFace {
  Vec2 point{};
  bool boundary = false;  // v lies on a breakpoint; point is the central-difference limit
};

/// Gradient of the degree-one extension at v by central differences in Cartesian coordinates.
DualFace dual_face_smooth(const SupportFunction& f, Vec2 v, const Config& cfg = {});

struct Estimate {
  double value = 0;
  double error = 0;       // Richardson estimate |S_N - S_N/2| / 15
  double coarse = 0;      // S_N/2
  int panels = 0;
  std::vector<Atom> atoms;
};

/// Integral over the open sector (theta_a, theta_b) of (f1 - f2) against
/// S_1(K1) + S_1(K2). Atoms strictly inside the sector are included.
/// Throws DomainError for an empty or single-ray sector, NonConvergence when the
/// Richardson estimate exceeds cfg.tolerance.
Estimate numeric_correction(const SupportFunction& f1, const SupportFunction& f2, double theta_a,
                            double theta_b, const Config& cfg = {});

/// Area of the body: -(1/2) [ integral of phi rho + sum of phi(u_a) * mass_a ].
/// Uses the supplied breakpoints, or detected atoms when none are supplied.
Estimate numeric_volume(const SupportFunction& f, const Config& cfg = {});

/// Largest homogeneity and concavity violations over `samples` random direction pairs.
struct ShapeCheck {
  double homogeneity = 0;
  double concavity = 0;
};
ShapeCheck check_support_function(const SupportFunction& f, int samples, unsigned long seed);

}  // namespace cvxdiff::smooth2d
