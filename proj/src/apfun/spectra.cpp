#include <algorithm>
#include <cmath>

#include "apdelay/apfun.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

SampledSignal sample(const TrigPolynomial& f, double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw ValidationError("sampling needs dt > 0 and t1 >= t0");
  SampledSignal s;
  s.t0 = t0;
  s.dt = dt;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / dt)) + 1;
  s.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) s.values.push_back(eval(f, t0 + dt * static_cast<double>(k)));
  return s;
}

CVec bohr_coefficient_numeric(const SampledSignal& g, double lambda, double T) {
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  if (g.values.size() < 2 || !(g.dt > 0.0)) throw InsufficientCoverage("need at least two samples");
  const double slack = 1e-9 * g.dt;
  if (g.t0 > -T + slack || g.t_end() < T - slack) {
    throw InsufficientCoverage("samples span [" + std::to_string(g.t0) + ", " + std::to_string(g.t_end()) +
                               "], need [-T, T] with T = " + std::to_string(T));
  }
  const auto last = static_cast<long>(g.values.size()) - 1;
  const long k_lo = std::clamp(static_cast<long>(std::ceil((-T - g.t0) / g.dt - 1e-9)), 0L, last);
  const long k_hi = std::clamp(static_cast<long>(std::floor((T - g.t0) / g.dt + 1e-9)), 0L, last);
  auto integrand = [&](long k) -> CVec {
    const double t = g.t0 + g.dt * static_cast<double>(k);
    return std::exp(-kI * (lambda * t)) * g.values[static_cast<std::size_t>(k)];
  };
  // Linear interpolation of the integrand between nodes k and k+1.
  auto at = [&](double t) -> CVec {
    const double x = (t - g.t0) / g.dt;
    const long k = std::clamp(static_cast<long>(std::floor(x)), 0L, last - 1);
    const double w = x - static_cast<double>(k);
    return (1.0 - w) * integrand(k) + w * integrand(k + 1);
  };

  CVec sum = CVec::Zero(g.dim());
  for (long k = k_lo; k < k_hi; ++k) sum += 0.5 * g.dt * (integrand(k) + integrand(k + 1));
  const double t_lo = g.t0 + g.dt * static_cast<double>(k_lo);
  const double t_hi = g.t0 + g.dt * static_cast<double>(k_hi);
  if (t_lo - (-T) > slack) sum += 0.5 * (t_lo + T) * (at(-T) + integrand(k_lo));
  if (T - t_hi > slack) sum += 0.5 * (T - t_hi) * (integrand(k_hi) + at(T));
  return sum / (2.0 * T);
}

double bohr_numeric_leakage_bound(const TrigPolynomial& f, double lambda, double T) {
  double bound = 0.0;
  for (const auto& h : f.terms()) {
    const double gap = std::abs(h.freq.value() - lambda);
    if (gap == 0.0) continue;
    bound += 2.0 * h.coeff.norm() / gap;
  }
  return bound / T;
}

CVec carleman_transform(const TrigPolynomial& f, cplx lambda) {
  if (lambda.real() == 0.0) throw OnAxis("Carleman transform is undefined on the imaginary axis");
  CVec out = CVec::Zero(f.dim());
  for (const auto& h : f.terms()) {
    const cplx gap = lambda - kI * h.freq.value();
    if (std::abs(gap) < 1e-12) throw AtPole("lambda coincides with i*" + std::to_string(h.freq.value()));
    out += h.coeff / gap;
  }
  return out;
}

BeurlingEstimate beurling_estimate(const SampledSignal& g, std::span<const double> grid, double eps,
                                   double threshold) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (g.values.size() < 2) throw SpanTooShort("signal has fewer than two samples");
  const double span = g.t_end() - g.t0;
  if (span < 10.0 / eps) {
    throw SpanTooShort("span " + std::to_string(span) + " is below 10/eps = " + std::to_string(10.0 / eps));
  }
  BeurlingEstimate est;
  for (const auto& v : g.values) est.sup_norm = std::max(est.sup_norm, v.norm());

  const auto half = static_cast<long>(std::floor(0.4 * span / g.dt));
  est.kernel_half_width = g.dt * static_cast<double>(half);
  est.tail_bound = 4.0 / (kPi * eps * est.kernel_half_width);
  if (est.sup_norm == 0.0 || grid.empty()) return est;

  // Fejer kernel (eps/2pi) sinc^2(eps t/2), pre-multiplied by the step.
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  for (long m = -half; m <= half; ++m) {
    const double x = 0.5 * eps * g.dt * static_cast<double>(m);
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    kernel[static_cast<std::size_t>(m + half)] = g.dt * eps / (2.0 * kPi) * sinc * sinc;
  }

  const long n = static_cast<long>(g.values.size());
  const long s_lo = half;
  const long s_hi = n - 1 - half;
  constexpr int kCenters = 9;
  std::vector<long> centers;
  for (int c = 0; c < kCenters; ++c) {
    const long s = s_lo + (s_hi - s_lo) * c / (kCenters - 1);
    if (centers.empty() || centers.back() != s) centers.push_back(s);
  }

  std::vector<double> amplitude(grid.size(), 0.0);
  std::vector<cplx> phase(kernel.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double xi = grid[gi];
    for (long m = -half; m <= half; ++m) {
      phase[static_cast<std::size_t>(m + half)] =
          kernel[static_cast<std::size_t>(m + half)] * std::exp(kI * (xi * g.dt * static_cast<double>(m)));
    }
    double best = 0.0;
    for (long s : centers) {
      CVec acc = CVec::Zero(g.dim());
      for (long m = -half; m <= half; ++m) acc += phase[static_cast<std::size_t>(m + half)] * g.values[static_cast<std::size_t>(s - m)];
      best = std::max(best, acc.norm());
    }
    amplitude[gi] = best / est.sup_norm;
  }

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    if (amplitude[gi] <= threshold) continue;
    est.detections.push_back({grid[gi], amplitude[gi]});
    const bool left_ok = gi == 0 || amplitude[gi] >= amplitude[gi - 1];
    const bool right_ok = gi + 1 == grid.size() || amplitude[gi] > amplitude[gi + 1];
    if (left_ok && right_ok) est.peaks.push_back(grid[gi]);
  }
  return est;
}

namespace {

constexpr double kTwoPi = 2.0 * kPi;

bool full_circle(const Arc& a) { return a.length >= kTwoPi; }

bool on_arc(const Arc& a, double theta) {
  if (full_circle(a)) return true;
  double d = std::fmod(theta - a.start, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d <= a.length;
}

}  // namespace

std::pair<TrigPolynomial, TrigPolynomial> circle_split(const TrigPolynomial& f, std::span<const Arc> arcs) {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (!(arcs[i].length >= 0.0) || !std::isfinite(arcs[i].start)) throw ValidationError("malformed arc");
    for (std::size_t j = 0; j < i; ++j) {
      const bool overlap = full_circle(arcs[i]) || full_circle(arcs[j]) || on_arc(arcs[j], arcs[i].start) ||
                           on_arc(arcs[i], arcs[j].start);
      if (overlap) throw ValidationError("arcs must be pairwise disjoint");
    }
  }
  std::vector<Harmonic> inside;
  std::vector<Harmonic> outside;
  for (const auto& h : f.terms()) {
    const double theta = h.freq.value();
    bool hit = false;
    for (const auto& a : arcs) {
      if (!full_circle(a) && (chordal_distance(theta, a.start) <= 1e-9 ||
                              chordal_distance(theta, a.start + a.length) <= 1e-9)) {
        throw AmbiguousBoundary("exp(i*" + h.freq.describe(f.basis()) + ") lies on an arc endpoint");
      }
      hit = hit || on_arc(a, theta);
    }
    (hit ? inside : outside).push_back(h);
  }
  return {TrigPolynomial(f.basis(), f.dim(), std::move(inside)), TrigPolynomial(f.basis(), f.dim(), std::move(outside))};
}

}  // namespace apdelay
