#pragma once

// Forced delay equations with trigonometric forcing: harmonic-balance
// construction of the almost periodic solution, residual checks against the
// differential and integrated forms of the equation, spectral-inclusion
// verification, hypothesis reports for the Massera-type existence results,
// and non-existence certificates based on the frequency module.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apdelay/apfun.hpp"
#include "apdelay/chroots.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

struct ForcedProblem {
  DelaySystem sys;
  TrigPolynomial f;

  /// Throws DimMismatch when f.dim() != sys.dim().
  ForcedProblem(DelaySystem sys, TrigPolynomial f);
};

/// A forcing frequency at which Delta(i lambda) is numerically singular.
class Resonance : public Error {
 public:
  Resonance(Frequency freq, std::string label, double conditioning)
      : Error("Resonance(" + label + "): Delta(i*lambda) is numerically singular"),
        freq_(std::move(freq)),
        label_(std::move(label)),
        conditioning_(conditioning) {}
  const Frequency& frequency() const { return freq_; }
  const std::string& label() const { return label_; }
  double conditioning() const { return conditioning_; }

 private:
  Frequency freq_;
  std::string label_;
  double conditioning_;
};

/// Frequency-to-root matching tolerance (same as the default axis_tol).
inline constexpr double kMatchTolerance = 1e-6;
/// Chordal distance at or below which circle sets count as touching.
inline constexpr double kCircleSeparation = 1e-9;

struct SolutionBundle {
  TrigPolynomial u;
  double classical_residual = 0.0;
  double mild_residual = 0.0;
  bool spectral_check = false;
  std::vector<std::pair<Frequency, double>> per_frequency_conditioning;  // canonical order
};

/// u = sum_j Delta(i lambda_j)^{-1} c_j exp(i lambda_j t). Throws Resonance.
SolutionBundle harmonic_solve(const ForcedProblem& p);

/// 201 points on [0, 4 pi / lambda_min] (lambda_min the smallest nonzero
/// |frequency| of f), or on [0, 10] when f has no nonzero frequency.
std::vector<double> default_grid(const TrigPolynomial& f);

struct Residuals {
  double classical = 0.0;
  double mild = 0.0;
};

/// classical = max ||u' - A u - sum_k B_k u(. + eta_k) - f||,
/// mild = max ||u(t) - u(0) - A int_0^t u - int_0^t (Bu + f)||, both over
/// the grid, with exact derivatives and antiderivatives.
Residuals residuals(const TrigPolynomial& u, const ForcedProblem& p, std::span<const double> grid);

struct ConditionReport {
  double xi_max = 0.0;
  double axis_tol = 0.0;
  std::vector<double> sigma_i;            // sorted, window-limited
  std::vector<cplx> near_axis;            // ambiguous roots (warnings)
  std::vector<Frequency> resonances;      // lambda in sigma_b(f) matching sigma_i
  std::vector<double> sigma_i_minus_spf;  // sigma_i points not matching sigma_b(f)

  struct Thm12 {
    bool sigma_i_minus_spf_finite_in_window = true;
    bool spf_countable = true;
    bool c0_free = true;
    bool verdict = true;
  } thm12;
  struct Thm20 {
    double circle_distance = 2.0;
    bool separated = true;
  } thm20;
  struct Thm21 {
    bool circle_spf_countable = true;
    bool verdict = true;
  } thm21;

  bool solvable_directly = true;
  std::vector<std::string> notes;

  bool hypotheses_hold() const { return thm12.verdict && thm20.separated && thm21.verdict; }
};

ConditionReport check_conditions(const ForcedProblem& p, double xi_max, double axis_tol = 1e-6);

/// u1 = terms of u with frequency in lambda1, u2 = u - u1.
std::pair<TrigPolynomial, TrigPolynomial> decompose_solution(const TrigPolynomial& u,
                                                             std::span<const Frequency> lambda1);

struct InclusionResult {
  bool pass = false;
  std::optional<Frequency> witness;
  /// "forcing-in-solution" (sigma_b(f) in sigma_b(u)) or
  /// "solution-in-characteristic" (sigma_b(u) in sigma_i u sigma_b(f)).
  std::string failed_inclusion;
  std::vector<double> sigma_i;
};

/// Checks sigma_b(f) in sigma_b(u) in sigma_i(window) u sigma_b(f), matching
/// numeric sigma_i points to frequencies within kMatchTolerance. Throws
/// WindowTooSmall when a frequency of u lies outside [-xi_max, xi_max].
InclusionResult verify_spectral_inclusion(const TrigPolynomial& u, const ForcedProblem& p, double xi_max,
                                          double axis_tol = 1e-6);

struct Certificate {
  bool certified = false;
  int order = 0;  // l = qp_order(f)
  int k = 0;
  std::vector<Frequency> module_basis;
  std::string statement;
};

/// Certifies that no k-quasi-periodic strong mild solution exists when
/// k < qp_order(f); otherwise refuses.
Certificate nonexistence_certificate(const ForcedProblem& p, int k);

struct PeriodicCertificate {
  bool certified = false;
  Frequency period;
  Frequency fundamental;  // 2 pi / period
  std::optional<Frequency> witness;  // a frequency of f outside fundamental * Z
  std::string statement;
};

/// Certifies that no strong mild solution of the given period exists when
/// sigma_b(f) is not contained in (2 pi / period) Z. Throws IncommensurableTau.
PeriodicCertificate periodic_certificate(const ForcedProblem& p, const Frequency& period);

}  // namespace apdelay
