#pragma once

// Linear delay systems with finitely many point-mass delay/advance terms
//
//   x'(t) = A x(t) + sum_k B_k x(t + eta_k) + f(t),
//
// their characteristic matrix
//
//   Delta(z) = z I - A - sum_k B_k exp(z eta_k),
//
// and the characteristic roots in the strip |Re z| < delta.
//
// Sign convention: substituting x(t) = exp(i lambda t) c gives the
// multiplier exp(+i lambda eta_k) for each term, so Delta(i lambda) a = c is
// exactly the harmonic balance of the forced equation. For a retarded term
// (eta = -1, B = -pi/2) this is the classical z + (pi/2) exp(-z).

#include <vector>

#include "apdelay/linalg.hpp"

namespace apdelay {

struct DelayTerm {
  double eta = 0.0;
  CMat B;
};

class DelaySystem {
 public:
  /// Throws ValidationError: A square and nonempty, B_k of matching shape
  /// and nonzero, eta finite and pairwise distinct, delta > 0 and finite.
  DelaySystem(CMat A, std::vector<DelayTerm> terms, double delta);

  Index dim() const { return A_.rows(); }
  const CMat& A() const { return A_; }
  const std::vector<DelayTerm>& terms() const { return terms_; }
  double delta() const { return delta_; }

  bool has_advance() const;
  /// max |eta_k|, 0 without terms.
  double max_lag() const;
  bool is_real() const;

 private:
  CMat A_;
  std::vector<DelayTerm> terms_;
  double delta_;
};

struct Region {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool contains(cplx z, double slack = 0.0) const {
    return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
           z.imag() <= im_max + slack;
  }
  /// Throws ValidationError unless re_min < re_max and im_min < im_max.
  void validate() const;
};

CMat char_matrix(const DelaySystem& sys, cplx z);
/// Delta'(z) = I - sum_k eta_k B_k exp(z eta_k).
CMat char_matrix_derivative(const DelaySystem& sys, cplx z);

/// |z| + ||A|| + sum_k ||B_k|| |exp(z eta_k)|; an upper bound for ||Delta(z)||
/// that sets the scale for singularity tests.
double char_scale(const DelaySystem& sys, cplx z);

/// char_scale / sigma_min(Delta(z)): the reciprocal relative distance of
/// Delta(z) to the singular matrices. Infinite at characteristic roots.
double char_conditioning(const DelaySystem& sys, cplx z);

/// Delta(z) is treated as singular above this conditioning.
inline constexpr double kSingularConditioning = 1e12;

struct CharDet {
  cplx det;
  cplx logderiv;  // det'/det = tr(Delta^{-1} Delta')
};

/// Throws SingularAtPoint when Delta(z) is numerically singular.
CharDet char_det(const DelaySystem& sys, cplx z);
cplx char_det_value(const DelaySystem& sys, cplx z);

/// Number of characteristic roots (with multiplicity) inside the region, by
/// the argument principle. Throws BoundaryRoot if the contour integral does
/// not settle on an integer.
int count_roots(const DelaySystem& sys, const Region& region);

struct Root {
  cplx z;
  int multiplicity = 1;
  double det_residual = 0.0;
};

struct RootSet {
  std::vector<Root> roots;  // sorted by (re, im)
  Region region;            // the region actually searched (after jitter)
  int total_count = 0;
  double boundary_scale = 0.0;  // max |det Delta| over the contour nodes
};

/// All roots in the region by rectangle subdivision and Newton refinement.
/// Throws BoundaryRoot (after three outward jitters of 1e-4 x region size)
/// and NoConvergence.
RootSet find_roots(const DelaySystem& sys, const Region& region, double tol = 1e-10);

struct AxisSpectrum {
  std::vector<double> points;   // Im z for roots with |Re z| <= axis_tol/2
  std::vector<cplx> ambiguous;  // roots with axis_tol/2 < |Re z| <= axis_tol
  double xi_max = 0.0;
  double axis_tol = 0.0;
  double strip_half_width = 0.0;
};

/// The imaginary-axis characteristic set within [-xi_max, xi_max]. Roots are
/// located in a strip of half-width min(delta/2, 0.25) (widened to exceed
/// axis_tol), split into unit-height panels, then classified by |Re z|.
AxisSpectrum sigma_i(const DelaySystem& sys, double xi_max, double axis_tol = 1e-6);

/// (1/2 pi i) contour integral of (lambda I - M)^{-1} over a circle, by the
/// trapezoid rule with node doubling from 256 until ||P^2 - P|| < 1e-10.
/// Throws EigenvalueOnContour.
CMat riesz_projection(const CMat& M, cplx center, double radius);

/// sum_k ||B_k||_2 exp(delta |eta_k|).
double growth_norm(const DelaySystem& sys, double delta);

}  // namespace apdelay
