#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace apdelay {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Operator 2-norm (largest singular value).
double spectral_norm(const CMat& m);

/// Smallest singular value.
double min_singular_value(const CMat& m);

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

}  // namespace apdelay
