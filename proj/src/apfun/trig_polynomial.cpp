#include <algorithm>
#include <cmath>

#include "apdelay/apfun.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

TrigPolynomial::TrigPolynomial(GeneratorBasis basis, Index dim, std::vector<Harmonic> terms)
    : basis_(std::move(basis)), dim_(dim) {
  if (dim_ <= 0) throw ValidationError("dimension must be positive");
  for (const auto& h : terms) {
    if (h.coeff.size() != dim_) {
      throw DimMismatch("coefficient of length " + std::to_string(h.coeff.size()) + " in dimension " +
                        std::to_string(dim_));
    }
    if (h.freq.basis_size() != basis_.size()) throw BasisMismatch("frequency over a different basis");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Harmonic& a, const Harmonic& b) { return frequency_less(a.freq, b.freq); });
  std::vector<Harmonic> merged;
  for (auto& h : terms) {
    if (!merged.empty() && merged.back().freq == h.freq) {
      merged.back().coeff += h.coeff;
    } else {
      merged.push_back(std::move(h));
    }
  }
  double largest = 0.0;
  for (const auto& h : merged) largest = std::max(largest, h.coeff.norm());
  const double cutoff = kPruneTolerance * (merged.empty() || largest == 0.0 ? 1.0 : largest);
  for (auto& h : merged) {
    if (h.coeff.norm() > cutoff) terms_.push_back(std::move(h));
  }
}

double TrigPolynomial::max_abs_frequency() const {
  double m = 0.0;
  for (const auto& h : terms_) m = std::max(m, std::abs(h.freq.value()));
  return m;
}

double TrigPolynomial::min_abs_nonzero_frequency() const {
  double m = 0.0;
  for (const auto& h : terms_) {
    if (h.freq.is_zero()) continue;
    const double a = std::abs(h.freq.value());
    if (m == 0.0 || a < m) m = a;
  }
  return m;
}

CVec eval(const TrigPolynomial& f, double t) {
  CVec out = CVec::Zero(f.dim());
  for (const auto& h : f.terms()) out += std::exp(kI * (h.freq.value() * t)) * h.coeff;
  return out;
}

namespace {

void require_compatible(const TrigPolynomial& f, const TrigPolynomial& g) {
  if (!(f.basis() == g.basis())) throw BasisMismatch("polynomials use different generator bases");
  if (f.dim() != g.dim()) throw DimMismatch("polynomial dimensions differ");
}

}  // namespace

TrigPolynomial combine(const TrigPolynomial& f, const TrigPolynomial& g, cplx alpha, cplx beta) {
  require_compatible(f, g);
  std::vector<Harmonic> terms;
  terms.reserve(f.terms().size() + g.terms().size());
  for (const auto& h : f.terms()) terms.push_back({h.freq, alpha * h.coeff});
  for (const auto& h : g.terms()) terms.push_back({h.freq, beta * h.coeff});
  return TrigPolynomial(f.basis(), f.dim(), std::move(terms));
}

TrigPolynomial scaled(const TrigPolynomial& f, cplx alpha) {
  std::vector<Harmonic> terms;
  for (const auto& h : f.terms()) terms.push_back({h.freq, alpha * h.coeff});
  return TrigPolynomial(f.basis(), f.dim(), std::move(terms));
}

TrigPolynomial derivative(const TrigPolynomial& f) {
  std::vector<Harmonic> terms;
  for (const auto& h : f.terms()) {
    if (h.freq.is_zero()) continue;
    terms.push_back({h.freq, (kI * h.freq.value()) * h.coeff});
  }
  return TrigPolynomial(f.basis(), f.dim(), std::move(terms));
}

TrigPolynomial translate(const TrigPolynomial& f, double h) {
  std::vector<Harmonic> terms;
  for (const auto& term : f.terms()) terms.push_back({term.freq, std::exp(kI * (term.freq.value() * h)) * term.coeff});
  return TrigPolynomial(f.basis(), f.dim(), std::move(terms));
}

CVec bohr_coefficient(const TrigPolynomial& f, const Frequency& lambda) {
  if (lambda.basis_size() != f.basis().size()) throw BasisMismatch("frequency over a different basis");
  for (const auto& h : f.terms()) {
    if (h.freq == lambda) return h.coeff;
  }
  return CVec::Zero(f.dim());
}

std::vector<Frequency> bohr_spectrum(const TrigPolynomial& f) {
  std::vector<Frequency> out;
  out.reserve(f.terms().size());
  for (const auto& h : f.terms()) out.push_back(h.freq);
  return out;
}

}  // namespace apdelay
