#include <algorithm>
#include <cmath>

#include "apdelay/errors.hpp"
#include "apdelay/simulate.hpp"

namespace apdelay {

History History::from(const DelaySystem& sys, TrigPolynomial source) {
  if (source.dim() != sys.dim()) throw DimMismatch("history and system dimensions differ");
  return History{std::move(source), sys.max_lag()};
}

namespace {

class StepState {
 public:
  StepState(const DelaySystem& sys, const TrigPolynomial& f, const History& h, double dt)
      : sys_(sys), f_(f), h_(h), dt_(dt) {}

  // x(s) for s up to the last stored node.
  CVec lookup(double s) const {
    if (s <= 0.0) return eval(h_.source, s);
    const double x = s / dt_;
    auto k = static_cast<std::size_t>(std::floor(x));
    if (k + 1 >= values_.size()) k = values_.size() - 2;
    const double w = x - static_cast<double>(k);
    // Cubic Hermite basis on [t_k, t_k + dt].
    const double w2 = w * w;
    const double w3 = w2 * w;
    const double h00 = 2 * w3 - 3 * w2 + 1;
    const double h10 = w3 - 2 * w2 + w;
    const double h01 = -2 * w3 + 3 * w2;
    const double h11 = w3 - w2;
    return h00 * values_[k] + (h10 * dt_) * slopes_[k] + h01 * values_[k + 1] + (h11 * dt_) * slopes_[k + 1];
  }

  CVec rhs(double t, const CVec& x) const {
    CVec out = sys_.A() * x + eval(f_, t);
    for (const auto& term : sys_.terms()) out += term.B * (term.eta == 0.0 ? x : lookup(t + term.eta));
    return out;
  }

  std::vector<CVec> values_;
  std::vector<CVec> slopes_;

 private:
  const DelaySystem& sys_;
  const TrigPolynomial& f_;
  const History& h_;
  double dt_;
};

}  // namespace

Trajectory integrate(const DelaySystem& sys, const TrigPolynomial& f, const History& h, double T, double dt) {
  if (sys.has_advance()) {
    throw AdvanceTermPresent("advance terms make the initial value problem ill-posed; use residual checks instead");
  }
  if (f.dim() != sys.dim() || h.source.dim() != sys.dim()) throw DimMismatch("forcing/history dimension mismatch");
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  double min_delay = 0.0;
  for (const auto& term : sys.terms()) {
    if (term.eta < 0.0) min_delay = min_delay == 0.0 ? -term.eta : std::min(min_delay, -term.eta);
  }
  if (!(dt > 0.0) || (min_delay > 0.0 && dt > 0.25 * min_delay)) {
    throw StepTooLarge("dt must be positive and at most a quarter of the shortest delay");
  }
  const auto steps = static_cast<std::size_t>(std::max(1LL, std::llround(T / dt)));

  StepState st(sys, f, h, dt);
  st.values_.reserve(steps + 1);
  st.slopes_.reserve(steps + 1);
  st.values_.push_back(eval(h.source, 0.0));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = dt * static_cast<double>(n);
    const CVec& x = st.values_[n];
    // k1 doubles as the Hermite slope at node n.
    CVec k1 = st.rhs(t, x);
    st.slopes_.push_back(k1);
    // Delays are at least 4 dt, so stage lookups stay at or before node n - 3.
    const CVec k2 = st.rhs(t + 0.5 * dt, x + 0.5 * dt * k1);
    const CVec k3 = st.rhs(t + 0.5 * dt, x + 0.5 * dt * k2);
    const CVec k4 = st.rhs(t + dt, x + dt * k3);
    st.values_.push_back(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  }
  return Trajectory{0.0, dt, std::move(st.values_)};
}

double compare(const Trajectory& traj, const TrigPolynomial& u) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.values.size(); ++k) {
    if (traj.values[k].size() != u.dim()) throw DimMismatch("trajectory and polynomial dimensions differ");
    worst = std::max(worst, (traj.values[k] - eval(u, traj.time(k))).norm());
  }
  return worst;
}

}  // namespace apdelay
