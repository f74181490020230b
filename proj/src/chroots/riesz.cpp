#include <cmath>

#include "apdelay/chroots.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

CMat riesz_projection(const CMat& M, cplx center, double radius) {
  if (M.rows() == 0 || M.rows() != M.cols()) throw ValidationError("matrix must be square and nonempty");
  if (!(radius > 0.0)) throw ValidationError("radius must be positive");
  const Index n = M.rows();
  const CMat id = CMat::Identity(n, n);
  constexpr int kMaxNodes = 1 << 14;
  for (int nodes = 256; nodes <= kMaxNodes; nodes *= 2) {
    CMat P = CMat::Zero(n, n);
    for (int k = 0; k < nodes; ++k) {
      // Trapezoid on lambda = c + r e^{i theta}: d lambda / (2 pi i) = r e^{i theta} d theta / (2 pi).
      const cplx e = std::exp(kI * (2.0 * kPi * k / nodes));
      const cplx lambda = center + radius * e;
      const CMat resolvent_arg = lambda * id - M;
      if (min_singular_value(resolvent_arg) < 1e-8) {
        throw EigenvalueOnContour("an eigenvalue lies within 1e-8 of the contour");
      }
      P += (radius * e) * resolvent_arg.partialPivLu().solve(id);
    }
    P /= static_cast<double>(nodes);
    if ((P * P - P).norm() < 1e-10) return P;
  }
  throw EigenvalueOnContour("projection not idempotent after node doubling; spectrum too close to the circle");
}

}  // namespace apdelay
