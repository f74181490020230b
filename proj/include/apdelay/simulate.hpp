#pragma once

// Method-of-steps RK4 for retarded systems (all eta_k <= 0). Delayed values
// inside the computed range come from cubic Hermite interpolation of the
// stored states and right-hand sides; earlier values come from the history.
// Derivative discontinuities at multiples of the delays are not meshed, so
// the observed order drops locally there.

#include <span>
#include <vector>

#include "apdelay/apfun.hpp"
#include "apdelay/chroots.hpp"

namespace apdelay {

/// Initial data: `source` evaluated on [-lag, 0].
struct History {
  TrigPolynomial source;
  double lag = 0.0;

  /// lag = sys.max_lag().
  static History from(const DelaySystem& sys, TrigPolynomial source);
};

struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<CVec> values;

  double time(std::size_t k) const { return t0 + dt * static_cast<double>(k); }
};

/// Integrates on [0, T] with step dt (T/dt rounded to the nearest integer
/// step count). Throws AdvanceTermPresent for eta_k > 0 and StepTooLarge
/// when dt exceeds a quarter of the shortest nonzero delay.
Trajectory integrate(const DelaySystem& sys, const TrigPolynomial& f, const History& h, double T, double dt);

/// max_k ||values[k] - u(t_k)||.
double compare(const Trajectory& traj, const TrigPolynomial& u);

}  // namespace apdelay
