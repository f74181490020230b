#include <algorithm>
#include <cmath>

#include "apdelay/massera.hpp"

namespace apdelay {

ForcedProblem::ForcedProblem(DelaySystem sys_in, TrigPolynomial f_in) : sys(std::move(sys_in)), f(std::move(f_in)) {
  if (f.dim() != sys.dim()) {
    throw DimMismatch("forcing has dimension " + std::to_string(f.dim()) + ", system has " +
                      std::to_string(sys.dim()));
  }
}

namespace {

bool contains(std::span<const Frequency> set, const Frequency& x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

// [B u](t) = sum_k B_k u(t + eta_k), again a trigonometric polynomial.
TrigPolynomial apply_delays(const DelaySystem& sys, const TrigPolynomial& u) {
  std::vector<Harmonic> terms;
  for (const auto& h : u.terms()) {
    CVec c = CVec::Zero(u.dim());
    for (const auto& t : sys.terms()) c += std::exp(kI * (h.freq.value() * t.eta)) * (t.B * h.coeff);
    terms.push_back({h.freq, std::move(c)});
  }
  return TrigPolynomial(u.basis(), u.dim(), std::move(terms));
}

// int_0^t g, with c*t for the constant term.
CVec antiderivative(const TrigPolynomial& g, double t) {
  CVec out = CVec::Zero(g.dim());
  for (const auto& h : g.terms()) {
    const double lambda = h.freq.value();
    if (h.freq.is_zero()) {
      out += t * h.coeff;
    } else {
      out += ((std::exp(kI * (lambda * t)) - 1.0) / (kI * lambda)) * h.coeff;
    }
  }
  return out;
}

}  // namespace

SolutionBundle harmonic_solve(const ForcedProblem& p) {
  std::vector<Harmonic> terms;
  std::vector<std::pair<Frequency, double>> conditioning;
  for (const auto& h : p.f.terms()) {
    const cplx z = kI * h.freq.value();
    const double cond = char_conditioning(p.sys, z);
    if (!(cond <= kSingularConditioning)) throw Resonance(h.freq, h.freq.describe(p.f.basis()), cond);
    conditioning.emplace_back(h.freq, cond);
    terms.push_back({h.freq, char_matrix(p.sys, z).fullPivLu().solve(h.coeff)});
  }
  SolutionBundle out{TrigPolynomial(p.f.basis(), p.f.dim(), std::move(terms)), 0.0, 0.0, false,
                     std::move(conditioning)};
  const auto grid = default_grid(p.f);
  const auto r = residuals(out.u, p, grid);
  out.classical_residual = r.classical;
  out.mild_residual = r.mild;
  const auto spf = bohr_spectrum(p.f);
  out.spectral_check = std::all_of(out.u.terms().begin(), out.u.terms().end(),
                                   [&](const Harmonic& h) { return contains(spf, h.freq); });
  return out;
}

std::vector<double> default_grid(const TrigPolynomial& f) {
  const double lambda_min = f.min_abs_nonzero_frequency();
  const double end = lambda_min > 0.0 ? 4.0 * kPi / lambda_min : 10.0;
  std::vector<double> grid(201);
  for (int i = 0; i < 201; ++i) grid[static_cast<std::size_t>(i)] = end * i / 200.0;
  return grid;
}

Residuals residuals(const TrigPolynomial& u, const ForcedProblem& p, std::span<const double> grid) {
  if (u.dim() != p.sys.dim() || u.dim() != p.f.dim()) throw DimMismatch("solution and problem dimensions differ");
  if (!(u.basis() == p.f.basis())) throw BasisMismatch("solution and forcing use different generator bases");
  if (grid.empty()) throw ValidationError("residual grid must be non-empty");
  const TrigPolynomial du = derivative(u);
  const TrigPolynomial bu = apply_delays(p.sys, u);
  const CVec u0 = eval(u, 0.0);
  Residuals r;
  for (double t : grid) {
    if (!std::isfinite(t)) throw ValidationError("residual grid must be finite");
    const CVec ut = eval(u, t);
    const CVec classical = eval(du, t) - p.sys.A() * ut - eval(bu, t) - eval(p.f, t);
    const CVec mild = ut - u0 - p.sys.A() * antiderivative(u, t) - antiderivative(bu, t) - antiderivative(p.f, t);
    r.classical = std::max(r.classical, classical.norm());
    r.mild = std::max(r.mild, mild.norm());
  }
  return r;
}

std::pair<TrigPolynomial, TrigPolynomial> decompose_solution(const TrigPolynomial& u,
                                                             std::span<const Frequency> lambda1) {
  for (const auto& l : lambda1) {
    if (l.basis_size() != u.basis().size()) throw BasisMismatch("frequency over a different basis");
  }
  std::vector<Harmonic> first;
  std::vector<Harmonic> rest;
  for (const auto& h : u.terms()) (contains(lambda1, h.freq) ? first : rest).push_back(h);
  return {TrigPolynomial(u.basis(), u.dim(), std::move(first)), TrigPolynomial(u.basis(), u.dim(), std::move(rest))};
}

}  // namespace apdelay
