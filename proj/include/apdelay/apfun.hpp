#pragma once

// Exact calculus of vector-valued trigonometric polynomials
//
//   f(t) = sum_j c_j exp(i lambda_j t),   c_j in C^n,
//
// whose frequencies are exact rational combinations of user-declared real
// generators. Module, basis and periodicity questions are answered on the
// rational coordinates; floating point enters only through evaluation.
//
// Rational independence of the generator values cannot be decided from
// doubles. It is taken as an assertion by whoever declares the basis, and
// every structural answer below is conditional on it.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "apdelay/linalg.hpp"

namespace apdelay {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal integers). Throws ParseError.
Rational parse_rational(std::string_view text);
/// Lowest-terms "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& q);

struct Generator {
  std::string name;
  double value = 0.0;
  bool operator==(const Generator&) const = default;
};

class GeneratorBasis {
 public:
  GeneratorBasis() = default;
  /// Throws ValidationError unless values are finite, nonzero and pairwise
  /// distinct and names are unique identifiers.
  explicit GeneratorBasis(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const GeneratorBasis&) const = default;

 private:
  std::vector<Generator> generators_;
};

/// An exact real sum_i q_i * omega_i over a generator basis. Used both for
/// frequencies and for exact periods.
class Frequency {
 public:
  Frequency(const GeneratorBasis& basis, std::vector<Rational> coords);
  static Frequency zero(const GeneratorBasis& basis);
  /// q * omega_index.
  static Frequency unit(const GeneratorBasis& basis, std::size_t index, const Rational& q = 1);

  const std::vector<Rational>& coords() const { return coords_; }
  double value() const { return value_; }
  bool is_zero() const;
  std::size_t basis_size() const { return coords_.size(); }

  /// Human-readable form, e.g. "1/2*pi + sqrt2".
  std::string describe(const GeneratorBasis& basis) const;

  friend bool operator==(const Frequency& a, const Frequency& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Rational> coords_;
  double value_ = 0.0;
};

/// Canonical order: numeric value, then coordinates lexicographically.
/// Ties on value only happen for distinct coordinates when the generators
/// are rationally dependent in floating point, so the order stays total.
bool frequency_less(const Frequency& a, const Frequency& b);

Frequency add(const GeneratorBasis& basis, const Frequency& a, const Frequency& b);
Frequency scale(const GeneratorBasis& basis, const Frequency& a, const Rational& q);

struct Harmonic {
  Frequency freq;
  CVec coeff;
};

/// Coefficients with Euclidean norm at most this fraction of the largest
/// coefficient norm (or of 1 for the zero polynomial) are dropped.
inline constexpr double kPruneTolerance = 1e-14;

class TrigPolynomial {
 public:
  /// Merges equal frequencies, prunes, and sorts terms canonically. Throws
  /// DimMismatch for coefficient vectors of the wrong length and
  /// BasisMismatch for frequencies with the wrong coordinate count.
  TrigPolynomial(GeneratorBasis basis, Index dim, std::vector<Harmonic> terms = {});

  const GeneratorBasis& basis() const { return basis_; }
  Index dim() const { return dim_; }
  const std::vector<Harmonic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest |lambda| among nonzero frequencies, 0 if none.
  double max_abs_frequency() const;
  /// Smallest |lambda| among nonzero frequencies, 0 if none.
  double min_abs_nonzero_frequency() const;

 private:
  GeneratorBasis basis_;
  Index dim_;
  std::vector<Harmonic> terms_;
};

CVec eval(const TrigPolynomial& f, double t);

/// alpha*f + beta*g.
TrigPolynomial combine(const TrigPolynomial& f, const TrigPolynomial& g, cplx alpha, cplx beta);
TrigPolynomial scaled(const TrigPolynomial& f, cplx alpha);
TrigPolynomial derivative(const TrigPolynomial& f);
/// t -> f(t + h); the coefficient of lambda picks up exp(i lambda h).
TrigPolynomial translate(const TrigPolynomial& f, double h);

/// Mean value a(lambda, f). Exact read-off: distinct exponentials are
/// orthogonal under the mean.
CVec bohr_coefficient(const TrigPolynomial& f, const Frequency& lambda);
/// Sorted canonically.
std::vector<Frequency> bohr_spectrum(const TrigPolynomial& f);

// ---------------------------------------------------------------------------
// Frequency modules

class FrequencyModule {
 public:
  FrequencyModule(GeneratorBasis basis, std::vector<Frequency> integer_basis);

  const GeneratorBasis& basis() const { return basis_; }
  const std::vector<Frequency>& integer_basis() const { return integer_basis_; }
  std::size_t rank() const { return integer_basis_.size(); }

  /// Integer coefficients n_i with x = sum_i n_i b_i, or nullopt when x is
  /// not in the module. Requires the basis in echelon form, which
  /// integer_basis() guarantees.
  std::optional<std::vector<mpz_class>> express(const Frequency& x) const;

 private:
  GeneratorBasis basis_;
  std::vector<Frequency> integer_basis_;
};

/// Integer basis of the additive group generated by `freqs`: denominators
/// are cleared per generator coordinate with the coordinate LCM, the integer
/// matrix is brought to Hermite normal form, and the nonzero rows are scaled
/// back. Throws BasisMismatch.
FrequencyModule integer_basis(const GeneratorBasis& basis, std::span<const Frequency> freqs);

/// Row-style Hermite normal form over the integers; zero rows are dropped.
/// Exposed for testing.
std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows);

/// Rank of the module of sigma_b(f).
int qp_order(const TrigPolynomial& f);

/// Exact test sigma_b(f) in omega*Z.
bool is_multiple_of(const TrigPolynomial& f, const Frequency& omega);

/// 2*pi/period as an exact element over the basis. The period must be a
/// rational multiple q of a single generator g, and some generator h must
/// satisfy g*h = 2*pi*r for a small rational r (|num|, den <= 12), matched
/// to 1e-13 relative. Throws IncommensurableTau otherwise.
Frequency angular_frequency_of_period(const GeneratorBasis& basis, const Frequency& period);

/// True iff every frequency of f is an integer multiple of 2*pi/period.
bool is_periodic(const TrigPolynomial& f, const Frequency& period);

// ---------------------------------------------------------------------------
// Sampled signals and spectral estimates

/// Uniformly sampled vector signal: values[k] = g(t0 + k*dt).
struct SampledSignal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<CVec> values;

  double t_end() const { return t0 + dt * static_cast<double>(values.size() - 1); }
  Index dim() const { return values.empty() ? 0 : values.front().size(); }
};

SampledSignal sample(const TrigPolynomial& f, double t0, double t1, double dt);

/// Trapezoid approximation of (1/2T) int_{-T}^{T} exp(-i lambda t) g(t) dt.
/// For a trigonometric g the error is at most
/// (1/T) sum_{mu != lambda} 2|c_mu| / |mu - lambda| plus O(dt^2).
/// Throws InsufficientCoverage if the samples do not span [-T, T].
CVec bohr_coefficient_numeric(const SampledSignal& g, double lambda, double T);

/// The leakage bound above evaluated for a trigonometric polynomial.
double bohr_numeric_leakage_bound(const TrigPolynomial& f, double lambda, double T);

/// sum_j c_j / (lambda - i lambda_j). This is the Carleman-Laplace
/// transform on both half-planes (int_0^inf for Re > 0, -int_-inf^0 for
/// Re < 0); the poles sit exactly on i*sigma_b(f).
/// Throws OnAxis for Re lambda == 0 and AtPole within 1e-12 of a pole.
CVec carleman_transform(const TrigPolynomial& f, cplx lambda);

struct BeurlingEstimate {
  struct Point {
    double xi;
    double amplitude;  // max_s |(phi_xi * g)(s)|, relative to sup|g|
  };
  std::vector<Point> detections;  // amplitude > threshold, sorted by xi
  std::vector<double> peaks;      // local maxima among detections
  double tail_bound = 0.0;        // kernel truncation bound, relative
  double sup_norm = 0.0;
  double kernel_half_width = 0.0;
};

/// Band-limited filter test for membership in the Beurling spectrum. For
/// each grid point xi the signal is convolved with
///   phi(t) = exp(i xi t) * (eps / 2pi) * sinc^2(eps t / 2),
/// whose transform is the triangle supported on (xi - eps, xi + eps).
/// The kernel is truncated to |t| <= 0.4*span and evaluated at a few
/// interior points; the truncation tail bound is 4 / (pi eps W).
/// Throws SpanTooShort if span < 10 / eps.
BeurlingEstimate beurling_estimate(const SampledSignal& g, std::span<const double> grid, double eps,
                                   double threshold);

/// Closed arc {exp(i theta) : theta in [start, start + length]}.
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

/// Splits f by lifting each frequency to exp(i lambda) on the unit circle:
/// u1 keeps terms landing in some arc, u2 the rest. Throws AmbiguousBoundary
/// when a lifted frequency is within 1e-9 (chordal) of an arc endpoint, and
/// ValidationError for overlapping arcs.
std::pair<TrigPolynomial, TrigPolynomial> circle_split(const TrigPolynomial& f, std::span<const Arc> arcs);

/// |exp(i a) - exp(i b)|.
double chordal_distance(double a, double b);

}  // namespace apdelay
