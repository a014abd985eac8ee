#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvxdiff/error.hpp"
#include "cvxdiff/smooth2d.hpp"
#include "support.hpp"

namespace cvxdiff::smooth2d {
namespace {

constexpr double kPi = std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

TEST(SmoothBuiltin, Values) {
  const auto phi1 = builtin("monja_phi1"), phi2 = builtin("monja_phi2");
  EXPECT_DOUBLE_EQ(phi1.eval(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(phi2.eval(1, 1), 0);
  EXPECT_DOUBLE_EQ(phi1.eval(1, -2), -2);
  EXPECT_DOUBLE_EQ(builtin("disk").eval(3, 4), -5);
  EXPECT_THROW(builtin("nope"), Error);
}

TEST(SmoothBuiltin, ShapeChecks) {
  for (const char* name : {"monja_phi1", "monja_phi2", "disk"}) {
    const auto check = check_support_function(builtin(name), 2000, 17);
    EXPECT_LE(check.homogeneity, 1e-12) << name;
    EXPECT_LE(check.concavity, 1e-10) << name;
  }
}

TEST(SmoothGaussPoint, Examples) {
  const auto phi1 = builtin("monja_phi1");
  const Vec2 g = gauss_point(phi1, kPi / 4);
  EXPECT_NEAR(g[0], 0.25, 1e-6);
  EXPECT_NEAR(g[1], 0.25, 1e-6);
  const Vec2 s = gauss_point(from_polytope(testing::outer_square()), kPi / 3);
  EXPECT_NEAR(s[0], -2, 1e-9);
  EXPECT_NEAR(s[1], -2, 1e-9);
  EXPECT_THROW(gauss_point(phi1, 0.0), Error);
}

TEST(SmoothGaussPoint, DualityResidualAndMonotonicity) {
  const auto phi1 = builtin("monja_phi1");
  double previous_cross_sign = 0;
  Vec2 prev = gauss_point(phi1, 0.01), prev_step{0, 0};
  for (int i = 1; i <= 150; ++i) {
    const double theta = 0.01 + i * 0.01;
    const Vec2 g = gauss_point(phi1, theta);
    EXPECT_NEAR(g[0] * std::cos(theta) + g[1] * std::sin(theta), phi1.at_angle(theta), 1e-8);
    const Vec2 step{g[0] - prev[0], g[1] - prev[1]};
    if (i > 1) {
      const double cross = prev_step[0] * step[1] - prev_step[1] * step[0];
      if (previous_cross_sign != 0) EXPECT_GT(cross * previous_cross_sign, 0);
      previous_cross_sign = cross > 0 ? 1 : -1;
    }
    prev = g;
    prev_step = step;
  }
}

TEST(SmoothDualFace, Examples) {
  const auto phi1 = builtin("monja_phi1");
  const auto a = dual_face_smooth(phi1, {1, 1});
  EXPECT_NEAR(a.point[0], 0.25, 1e-6);
  EXPECT_NEAR(a.point[1], 0.25, 1e-6);
  EXPECT_FALSE(a.boundary);
  const auto b = dual_face_smooth(from_polytope(testing::outer_square()), {1, 2});
  EXPECT_NEAR(b.point[0], -2, 1e-9);
  EXPECT_NEAR(b.point[1], -2, 1e-9);
  const auto c = dual_face_smooth(phi1, {1, 0});
  EXPECT_TRUE(c.boundary);
  EXPECT_NEAR(c.point[0], 0, 1e-6);
  EXPECT_NEAR(c.point[1], 1, 1e-6);
}

TEST(SmoothDensity, Examples) {
  EXPECT_NEAR(surface_measure_density(from_polytope(testing::outer_square()), kPi / 3), 0, 1e-9);
  for (double r : {0.5, 1.0, 3.0})
    for (double theta : {0.1, 1.0, 2.5, 4.0}) EXPECT_NEAR(surface_measure_density(disk(r), theta), r, 1e-6);
  const auto phi1 = builtin("monja_phi1");
  const double length = simpson([&](double t) { return surface_measure_density(phi1, t); }, 1e-9, kPi / 2 - 1e-9, 4096);
  const double arc = simpson([](double t) { return 2 * std::sqrt(t * t + (1 - t) * (1 - t)); }, 0, 1, 4096);
  EXPECT_NEAR(length, arc, 1e-4);
}

TEST(SmoothCorrection, MonjaAndTrivial) {
  const auto phi1 = builtin("monja_phi1"), phi2 = builtin("monja_phi2");
  const auto c = numeric_correction(phi1, phi2, 0, kPi / 2);
  EXPECT_NEAR(c.value, 1.0 / 3.0, 1e-4);
  EXPECT_LE(c.error, 1e-6);
  EXPECT_NEAR(numeric_correction(phi1, phi1, 0, kPi / 2).value, 0, 1e-12);
  EXPECT_THROW(numeric_correction(phi1, phi2, 1, 1), Error);
}

TEST(SmoothCorrection, AgreesWithArcParametrization) {
  // Boundary arc x = t^2, y = (1 - t)^2; the integrand is phi1 at the inward
  // unit normal times arclength.
  const auto phi1 = builtin("monja_phi1");
  const double oracle = simpson(
      [&](double t) {
        const double dx = 2 * t, dy = -2 * (1 - t);
        const double speed = std::hypot(dx, dy);
        if (speed == 0) return 0.0;
        return phi1.eval(-dy / speed, dx / speed) * speed;
      },
      0, 1, 2048);
  EXPECT_NEAR(oracle, 1.0 / 3.0, 1e-10);
  const auto c = numeric_correction(phi1, builtin("monja_phi2"), 0, kPi / 2);
  EXPECT_NEAR(c.value, oracle, 1e-6);
}

TEST(SmoothCorrection, AtomicSectorIsRefused) {
  const auto t = from_polytope(testing::inner_triangle()), s = from_polytope(testing::outer_square());
  EXPECT_THROW(numeric_correction(t, s, kPi / 2, kPi / 2), Error);
}

TEST(SmoothVolume, Examples) {
  EXPECT_NEAR(numeric_volume(builtin("monja_phi1")).value, 1.0 / 3.0, 1e-4);
  EXPECT_NEAR(numeric_volume(builtin("monja_phi2")).value, 0.5, 1e-6);
  EXPECT_NEAR(numeric_volume(disk(1)).value, kPi, 1e-4);
}

TEST(SmoothVolume, PolygonsMatchExactVolumeAndAtomsSitAtNormals) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope p = testing::random_polytope(rng, 2, 7, 5);
    SupportFunction f = from_polytope(p);
    EXPECT_NEAR(numeric_volume(f).value, to_double(volume(p)), 1e-6);
    f.breakpoints.clear();
    const auto atoms = detect_atoms(f);
    ASSERT_EQ(atoms.size(), p.facets().size());
    for (const auto& facet : p.facets()) {
      double angle = std::atan2(facet.normal[1].get_d(), facet.normal[0].get_d());
      if (angle < 0) angle += 2 * kPi;
      double best = 10;
      for (const auto& a : atoms) {
        const double d = std::fabs(a.angle - angle);
        best = std::min(best, std::min(d, 2 * kPi - d));
      }
      EXPECT_LT(best, 1e-6);
    }
    EXPECT_NEAR(numeric_volume(f).value, to_double(volume(p)), 1e-6);
  }
}

}  // namespace
}  // namespace cvxdiff::smooth2d
