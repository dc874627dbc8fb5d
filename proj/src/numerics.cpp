#include "conify/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conify/errors.hpp"

namespace conify {

std::vector<double> metric_tensor(const ModelMetricPoint& p) {
  if (p.z.size() != p.weights.size()) throw ArityMismatch("point and weight lengths differ");
  std::vector<double> out;
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    const double r = std::abs(p.z[i]);
    if (r == 0) throw PreconditionError("metric is evaluated on (C*)^l only");
    if (!(p.weights[i] > 0)) throw PreconditionError("weights must be positive");
    out.push_back(std::pow(r, 2.0 / p.weights[i] - 2.0));
  }
  return out;
}

double scaling_pullback_check(const ModelMetricPoint& p, double tau) {
  if (!(tau > 0)) throw PreconditionError("tau must be positive");
  const auto g = metric_tensor(p);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double scale = std::pow(tau, p.weights[i]);
    // d(tau^w z) ^ d(conj) picks up |tau^w|^2.
    const double lhs = std::pow(std::abs(p.z[i]) * scale, 2.0 / p.weights[i] - 2.0) * scale * scale;
    const double rhs = tau * tau * g[i];
    worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(rhs));
  }
  return worst;
}

Mat3 rodrigues(const Vec3& n, double theta) {
  const double s = std::sin(theta);
  const double c = 1 - std::cos(theta);
  const Mat3 k{{{0, -n[2], n[1]}, {n[2], 0, -n[0]}, {-n[1], n[0], 0}}};
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double k2 = 0;
      for (int m = 0; m < 3; ++m) k2 += k[i][m] * k[m][j];
      r[i][j] = (i == j ? 1.0 : 0.0) + s * k[i][j] + c * k2;
    }
  }
  return r;
}

RotationSolution rotation_from_target(double d, double e, double f) {
  RotationSolution s;
  s.c = std::sqrt(d * d + e * e + f * f);
  if (!(s.c > 0) || !std::isfinite(s.c)) throw PreconditionError("target vector must be nonzero and finite");
  const double dp = d / s.c, ep = e / s.c, fp = f / s.c;
  const double h = std::hypot(1 - dp, ep);
  if (h == 0) {
    s.axis = {1, 0, 0};
    s.theta = 0;
  } else {
    s.axis = {ep / h, (1 - dp) / h, 0};
    // Components of x and u perpendicular to the axis; |x_perp|^2 = b'^2.
    const Vec3& n = s.axis;
    const Vec3 x{1, 0, 0};
    const Vec3 u{dp, ep, fp};
    const double nx = n[0], nu = n[0] * dp + n[1] * ep;
    const Vec3 xp{x[0] - nx * n[0], x[1] - nx * n[1], x[2]};
    const Vec3 up{u[0] - nu * n[0], u[1] - nu * n[1], u[2]};
    const Vec3 cross{xp[1] * up[2] - xp[2] * up[1], xp[2] * up[0] - xp[0] * up[2], xp[0] * up[1] - xp[1] * up[0]};
    const double cos_part = xp[0] * up[0] + xp[1] * up[1] + xp[2] * up[2];
    const double sin_part = n[0] * cross[0] + n[1] * cross[1] + n[2] * cross[2];
    double theta = std::atan2(sin_part, cos_part);
    if (theta < 0) theta += 2 * std::numbers::pi;
    if (theta >= 2 * std::numbers::pi) theta -= 2 * std::numbers::pi;
    s.theta = theta;
  }
  s.rotation = rodrigues(s.axis, s.theta);
  const double half = s.theta / 2;
  s.quaternion = {std::cos(half), std::sin(half) * s.axis[0], std::sin(half) * s.axis[1], std::sin(half) * s.axis[2]};
  return s;
}

double reconstruction_error(const RotationSolution& s, double d, double e, double f) {
  const Vec3 target{d, e, f};
  double sq = 0;
  for (int i = 0; i < 3; ++i) {
    const double v = s.rotation[i][0] * s.c - target[i];
    sq += v * v;
  }
  return std::sqrt(sq);
}

double orthogonality_error(const Mat3& r) {
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double v = 0;
      for (int k = 0; k < 3; ++k) v += r[k][i] * r[k][j];
      worst = std::max(worst, std::fabs(v - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double determinant(const Mat3& r) {
  return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

namespace {

using Quat = std::array<double, 4>;

Quat mul(const Quat& p, const Quat& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

}  // namespace

double quaternion_error(const RotationSolution& s, double d, double e, double f) {
  const Quat& q = s.quaternion;
  const Quat conj{q[0], -q[1], -q[2], -q[3]};
  const Quat img = mul(mul(q, Quat{0, 1, 0, 0}), conj);
  const double c = std::sqrt(d * d + e * e + f * f);
  return std::sqrt(img[0] * img[0] + std::pow(img[1] - d / c, 2) + std::pow(img[2] - e / c, 2) +
                   std::pow(img[3] - f / c, 2));
}

}  // namespace conify
