#include <algorithm>
#include <cmath>
#include <sstream>

#include "apdelay/massera.hpp"

namespace apdelay {

namespace {

bool matches_any(double lambda, std::span<const double> points, double tol) {
  return std::any_of(points.begin(), points.end(), [&](double xi) { return std::abs(xi - lambda) <= tol; });
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ConditionReport check_conditions(const ForcedProblem& p, double xi_max, double axis_tol) {
  ConditionReport rep;
  rep.xi_max = xi_max;
  rep.axis_tol = axis_tol;
  const AxisSpectrum ax = sigma_i(p.sys, xi_max, axis_tol);
  rep.sigma_i = ax.points;
  rep.near_axis = ax.ambiguous;
  for (const auto& z : ax.ambiguous) {
    rep.notes.push_back("NearAxisAmbiguity: root " + fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") +
                        fmt(std::abs(z.imag())) + "i has |Re z| in (axis_tol/2, axis_tol]; not classified");
  }

  const auto spf = bohr_spectrum(p.f);
  std::vector<double> spf_values;
  for (const auto& lam : spf) {
    spf_values.push_back(lam.value());
    if (matches_any(lam.value(), rep.sigma_i, kMatchTolerance)) {
      rep.resonances.push_back(lam);
    } else if (matches_any(lam.value(), rep.sigma_i, 10.0 * kMatchTolerance)) {
      rep.notes.push_back("near-resonance: forcing frequency " + lam.describe(p.f.basis()) +
                          " is within 10x the matching tolerance of a characteristic point");
    }
    if (std::abs(lam.value()) > xi_max) {
      rep.notes.push_back("forcing frequency " + lam.describe(p.f.basis()) + " lies outside the search window");
    }
  }
  for (double xi : rep.sigma_i) {
    if (!matches_any(xi, spf_values, kMatchTolerance)) rep.sigma_i_minus_spf.push_back(xi);
  }

  // Finitely many roots in a bounded window, so the window-limited set is
  // always finite.
  rep.thm12.sigma_i_minus_spf_finite_in_window = true;
  rep.thm12.spf_countable = true;
  rep.thm12.c0_free = true;
  rep.thm12.verdict = true;
  rep.notes.push_back("c0-free: automatic, the state space is finite dimensional");
  rep.notes.push_back("sp(f) countable: automatic, the forcing has finitely many frequencies");
  std::ostringstream window;
  window.precision(17);
  window << "characteristic set searched within [-" << xi_max << ", " << xi_max
         << "] only; compactness of sigma_i minus sp(f) is decided in this window";
  rep.notes.push_back(window.str());

  if (rep.sigma_i_minus_spf.empty() || spf_values.empty()) {
    rep.thm20.circle_distance = 2.0;
    rep.notes.push_back("circle separation vacuous: one of the lifted sets is empty");
  } else {
    double d = 2.0;
    for (double xi : rep.sigma_i_minus_spf) {
      for (double lam : spf_values) d = std::min(d, chordal_distance(xi, lam));
    }
    rep.thm20.circle_distance = d;
  }
  rep.thm20.separated = rep.thm20.circle_distance > kCircleSeparation;
  rep.thm21.circle_spf_countable = true;
  rep.thm21.verdict = rep.thm20.separated && rep.thm12.c0_free && rep.thm21.circle_spf_countable;

  rep.solvable_directly = rep.resonances.empty();
  for (const auto& lam : spf) {
    const double cond = char_conditioning(p.sys, kI * lam.value());
    if (!(cond <= kSingularConditioning)) {
      rep.solvable_directly = false;
      if (std::find(rep.resonances.begin(), rep.resonances.end(), lam) == rep.resonances.end()) {
        rep.resonances.push_back(lam);
      }
    }
  }
  if (rep.hypotheses_hold() != rep.solvable_directly) {
    rep.notes.push_back(rep.solvable_directly
                            ? "theorem hypotheses fail but the harmonic-balance solve is well posed"
                            : "theorem hypotheses hold but the harmonic-balance solve hits a resonance");
  }
  return rep;
}

InclusionResult verify_spectral_inclusion(const TrigPolynomial& u, const ForcedProblem& p, double xi_max,
                                          double axis_tol) {
  if (!(u.basis() == p.f.basis())) throw BasisMismatch("solution and forcing use different generator bases");
  if (u.dim() != p.f.dim()) throw DimMismatch("solution and forcing dimensions differ");
  for (const auto& h : u.terms()) {
    if (std::abs(h.freq.value()) > xi_max) {
      throw WindowTooSmall("frequency " + h.freq.describe(u.basis()) + " exceeds xi_max = " + fmt(xi_max));
    }
  }
  InclusionResult out;
  const auto spu = bohr_spectrum(u);
  const auto spf = bohr_spectrum(p.f);
  for (const auto& lam : spf) {
    if (std::find(spu.begin(), spu.end(), lam) == spu.end()) {
      out.witness = lam;
      out.failed_inclusion = "forcing-in-solution";
      return out;
    }
  }
  out.sigma_i = sigma_i(p.sys, xi_max, axis_tol).points;
  for (const auto& lam : spu) {
    if (std::find(spf.begin(), spf.end(), lam) != spf.end()) continue;
    if (!matches_any(lam.value(), out.sigma_i, kMatchTolerance)) {
      out.witness = lam;
      out.failed_inclusion = "solution-in-characteristic";
      return out;
    }
  }
  out.pass = true;
  return out;
}

}  // namespace apdelay
