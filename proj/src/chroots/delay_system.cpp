#include <cmath>
#include <limits>

#include "apdelay/chroots.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

DelaySystem::DelaySystem(CMat A, std::vector<DelayTerm> terms, double delta)
    : A_(std::move(A)), terms_(std::move(terms)), delta_(delta) {
  if (A_.rows() == 0 || A_.rows() != A_.cols()) throw ValidationError("A must be a nonempty square matrix");
  if (!A_.allFinite()) throw ValidationError("A has non-finite entries");
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) throw ValidationError("delta must be positive and finite");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (!std::isfinite(t.eta)) throw ValidationError("eta must be finite");
    if (t.B.rows() != A_.rows() || t.B.cols() != A_.cols()) throw ValidationError("dim mismatch between A and B");
    if (!t.B.allFinite()) throw ValidationError("B has non-finite entries");
    if (t.B.isZero(0.0)) throw ValidationError("B matrices must be nonzero");
    for (std::size_t j = 0; j < k; ++j) {
      if (terms_[j].eta == t.eta) throw ValidationError("duplicate eta " + std::to_string(t.eta));
    }
  }
}

bool DelaySystem::has_advance() const {
  for (const auto& t : terms_) {
    if (t.eta > 0.0) return true;
  }
  return false;
}

double DelaySystem::max_lag() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::abs(t.eta));
  return r;
}

bool DelaySystem::is_real() const {
  if (!A_.imag().isZero(0.0)) return false;
  for (const auto& t : terms_) {
    if (!t.B.imag().isZero(0.0)) return false;
  }
  return true;
}

void Region::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) throw ValidationError("region must have re_min < re_max and im_min < im_max");
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max)) {
    throw ValidationError("region bounds must be finite");
  }
}

CMat char_matrix(const DelaySystem& sys, cplx z) {
  CMat m = z * CMat::Identity(sys.dim(), sys.dim()) - sys.A();
  for (const auto& t : sys.terms()) m -= std::exp(z * t.eta) * t.B;
  return m;
}

CMat char_matrix_derivative(const DelaySystem& sys, cplx z) {
  CMat m = CMat::Identity(sys.dim(), sys.dim());
  for (const auto& t : sys.terms()) m -= (t.eta * std::exp(z * t.eta)) * t.B;
  return m;
}

double char_scale(const DelaySystem& sys, cplx z) {
  double s = std::abs(z) + spectral_norm(sys.A());
  for (const auto& t : sys.terms()) s += spectral_norm(t.B) * std::exp(z.real() * t.eta);
  return s;
}

double char_conditioning(const DelaySystem& sys, cplx z) {
  const double smin = min_singular_value(char_matrix(sys, z));
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return char_scale(sys, z) / smin;
}

cplx char_det_value(const DelaySystem& sys, cplx z) {
  const CMat m = char_matrix(sys, z);
  return m.rows() == 1 ? m(0, 0) : m.partialPivLu().determinant();
}

CharDet char_det(const DelaySystem& sys, cplx z) {
  const CMat m = char_matrix(sys, z);
  const double smin = min_singular_value(m);
  if (smin == 0.0 || char_scale(sys, z) / smin > kSingularConditioning) {
    throw SingularAtPoint("Delta(z) is numerically singular at z = (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) + ")");
  }
  const CMat d = char_matrix_derivative(sys, z);
  if (m.rows() == 1) return {m(0, 0), d(0, 0) / m(0, 0)};
  const auto lu = m.partialPivLu();
  return {lu.determinant(), lu.solve(d).trace()};
}

double growth_norm(const DelaySystem& sys, double delta) {
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  double s = 0.0;
  for (const auto& t : sys.terms()) s += spectral_norm(t.B) * std::exp(delta * std::abs(t.eta));
  return s;
}

}  // namespace apdelay
