#pragma once

#include <array>
#include <complex>
#include <vector>

namespace conify {

inline constexpr double kResultTolerance = 1e-9;
inline constexpr double kOrthogonalityTolerance = 1e-12;

struct ModelMetricPoint {
  std::vector<std::complex<double>> z;
  std::vector<double> weights;
};

// Coefficients |z_i|^(2/w_i - 2) of the diagonal model metric.
std::vector<double> metric_tensor(const ModelMetricPoint& p);

// Max relative discrepancy between the pullback under z_i -> tau^{w_i} z_i
// and tau^2 times the metric.
double scaling_pullback_check(const ModelMetricPoint& p, double tau);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct RotationSolution {
  double c = 0;
  Vec3 axis{};  // (a', b', 0)
  double theta = 0;  // [0, 2 pi), right-hand rule about axis
  Mat3 rotation{};
  // Unit quaternion cos(theta/2) + sin(theta/2)(a' I + b' J) in (1, I, J, K).
  std::array<double, 4> quaternion{};
};

RotationSolution rotation_from_target(double d, double e, double f);
Mat3 rodrigues(const Vec3& axis, double theta);

// Residual |R (c,0,0) - (d,e,f)|.
double reconstruction_error(const RotationSolution& s, double d, double e, double f);
// max |R^T R - Id| entry.
double orthogonality_error(const Mat3& r);
double determinant(const Mat3& r);
// |q I q^{-1} - (d' I + e' J + f' K)| with quaternion units I J = K.
double quaternion_error(const RotationSolution& s, double d, double e, double f);

}  // namespace conify
