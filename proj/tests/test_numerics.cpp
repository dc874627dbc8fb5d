#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conify/errors.hpp"
#include "conify/numerics.hpp"

using namespace conify;

namespace {

constexpr double kPi = std::numbers::pi;

// v' = v + 2 w (u x v) + 2 u x (u x v) for the unit quaternion (w, u).
Vec3 rotate_by_quaternion(const std::array<double, 4>& q, const Vec3& v) {
  const Vec3 u{q[1], q[2], q[3]};
  auto cross = [](const Vec3& a, const Vec3& b) {
    return Vec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  const Vec3 uv = cross(u, v);
  const Vec3 uuv = cross(u, uv);
  return {v[0] + 2 * (q[0] * uv[0] + uuv[0]), v[1] + 2 * (q[0] * uv[1] + uuv[1]), v[2] + 2 * (q[0] * uv[2] + uuv[2])};
}

}  // namespace

TEST_CASE("model metric coefficients") {
  const auto unit = metric_tensor({{1.0, 1.0}, {2, 2}});
  CHECK(unit[0] == doctest::Approx(1.0));
  CHECK(unit[1] == doctest::Approx(1.0));
  CHECK(metric_tensor({{4.0}, {2}})[0] == doctest::Approx(0.25));
  CHECK(metric_tensor({{1.0}, {1}})[0] == doctest::Approx(1.0));
  CHECK(metric_tensor({{std::complex<double>(0, 4)}, {2}})[0] == doctest::Approx(0.25));
}

TEST_CASE("scaling identity") {
  CHECK(scaling_pullback_check({{std::complex<double>(0.3, -2)}, {1}}, 2.0) < 1e-12);
  CHECK(scaling_pullback_check({{1.0}, {2}}, 2.0) < 1e-12);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(0.2, 5), z(-3, 3), tau(0.1, 10);
  for (int k = 0; k < 200; ++k) {
    ModelMetricPoint p{{{z(rng), z(rng)}, {z(rng), z(rng)}, {z(rng), z(rng)}}, {w(rng), w(rng), w(rng)}};
    CHECK(scaling_pullback_check(p, tau(rng)) < kResultTolerance);
  }
}

TEST_CASE("worked rotations") {
  const RotationSolution id = rotation_from_target(1, 0, 0);
  CHECK(id.c == doctest::Approx(1));
  CHECK(std::fabs(id.theta) < kOrthogonalityTolerance);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(id.rotation[i][j] - (i == j)) < kOrthogonalityTolerance);
  }

  const RotationSolution y = rotation_from_target(0, 1, 0);
  CHECK(std::fabs(y.axis[0] - 1 / std::sqrt(2.0)) < kOrthogonalityTolerance);
  CHECK(std::fabs(y.axis[1] - 1 / std::sqrt(2.0)) < kOrthogonalityTolerance);
  CHECK(std::fabs(y.theta - kPi) < kOrthogonalityTolerance);

  const RotationSolution z = rotation_from_target(0, 0, 1);
  CHECK(std::fabs(z.axis[0]) < kOrthogonalityTolerance);
  CHECK(std::fabs(z.axis[1] - 1) < kOrthogonalityTolerance);
  CHECK(std::fabs(z.theta - 3 * kPi / 2) < kOrthogonalityTolerance);

  const RotationSolution back = rotation_from_target(-1, 0, 0);
  CHECK(std::fabs(back.axis[1] - 1) < kOrthogonalityTolerance);
  CHECK(std::fabs(back.theta - kPi) < kOrthogonalityTolerance);
}

TEST_CASE("rotations reach random targets") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 300; ++k) {
    const double d = g(rng), e = g(rng), f = g(rng);
    const RotationSolution s = rotation_from_target(d, e, f);
    CHECK(s.c == doctest::Approx(std::sqrt(d * d + e * e + f * f)));
    CHECK(reconstruction_error(s, d, e, f) < kResultTolerance);
    CHECK(orthogonality_error(s.rotation) < kOrthogonalityTolerance);
    CHECK(std::fabs(determinant(s.rotation) - 1) < kOrthogonalityTolerance);
    CHECK(quaternion_error(s, d, e, f) < kResultTolerance);
    CHECK(std::fabs(s.axis[2]) == 0.0);
    const Vec3 image = rotate_by_quaternion(s.quaternion, {s.c, 0, 0});
    CHECK(std::fabs(image[0] - d) < kResultTolerance);
    CHECK(std::fabs(image[1] - e) < kResultTolerance);
    CHECK(std::fabs(image[2] - f) < kResultTolerance);
  }
}

TEST_CASE("rodrigues") {
  const Mat3 r = rodrigues({0, 0, 1}, kPi / 2);
  CHECK(std::fabs(r[0][1] + 1) < kOrthogonalityTolerance);
  CHECK(std::fabs(r[1][0] - 1) < kOrthogonalityTolerance);
  CHECK(orthogonality_error(r) < kOrthogonalityTolerance);
}

TEST_CASE("metric rejects a zero coordinate") {
  CHECK_THROWS_AS(metric_tensor({{0.0, 1.0}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(rotation_from_target(0, 0, 0), PreconditionError);
}
