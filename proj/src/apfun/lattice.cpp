#include <cmath>
#include <numeric>

#include "apdelay/apfun.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

namespace {

using IntRow = std::vector<mpz_class>;

void axpy_row(IntRow& target, const mpz_class& q, const IntRow& source) {
  for (std::size_t c = 0; c < target.size(); ++c) target[c] -= q * source[c];
}

}  // namespace

std::vector<IntRow> hermite_normal_form(std::vector<IntRow> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Euclid on column c among the unprocessed rows.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot_row][c].get_mpz_t());
        axpy_row(rows[r], q, rows[pivot_row]);
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot_row][c] == 0) continue;
    if (rows[pivot_row][c] < 0) {
      for (auto& x : rows[pivot_row]) x = -x;
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot_row][c].get_mpz_t());
      axpy_row(rows[r], q, rows[pivot_row]);
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

FrequencyModule::FrequencyModule(GeneratorBasis basis, std::vector<Frequency> integer_basis)
    : basis_(std::move(basis)), integer_basis_(std::move(integer_basis)) {}

std::optional<std::vector<mpz_class>> FrequencyModule::express(const Frequency& x) const {
  if (x.basis_size() != basis_.size()) throw BasisMismatch("frequency over a different basis");
  std::vector<Rational> residual = x.coords();
  std::vector<mpz_class> out;
  for (const auto& b : integer_basis_) {
    std::size_t pivot = 0;
    while (pivot < b.coords().size() && b.coords()[pivot] == 0) ++pivot;
    if (pivot == b.coords().size()) return std::nullopt;
    Rational n = residual[pivot] / b.coords()[pivot];
    n.canonicalize();
    if (n.get_den() != 1) return std::nullopt;
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= n * b.coords()[i];
    out.push_back(n.get_num());
  }
  for (const auto& r : residual) {
    if (r != 0) return std::nullopt;
  }
  return out;
}

FrequencyModule integer_basis(const GeneratorBasis& basis, std::span<const Frequency> freqs) {
  const std::size_t k = basis.size();
  std::vector<mpz_class> lcm(k, mpz_class(1));
  for (const auto& f : freqs) {
    if (f.basis_size() != k) throw BasisMismatch("frequency over a different basis");
    for (std::size_t i = 0; i < k; ++i) {
      mpz_lcm(lcm[i].get_mpz_t(), lcm[i].get_mpz_t(), f.coords()[i].get_den_mpz_t());
    }
  }
  std::vector<IntRow> rows;
  for (const auto& f : freqs) {
    IntRow row(k);
    for (std::size_t i = 0; i < k; ++i) {
      Rational scaled_coord = f.coords()[i] * lcm[i];
      scaled_coord.canonicalize();
      row[i] = scaled_coord.get_num();
    }
    rows.push_back(std::move(row));
  }
  std::vector<Frequency> out;
  for (const auto& row : hermite_normal_form(std::move(rows))) {
    std::vector<Rational> coords(k);
    for (std::size_t i = 0; i < k; ++i) coords[i] = Rational(row[i], lcm[i]);
    out.emplace_back(basis, std::move(coords));
  }
  return FrequencyModule(basis, std::move(out));
}

int qp_order(const TrigPolynomial& f) {
  const auto spectrum = bohr_spectrum(f);
  return static_cast<int>(integer_basis(f.basis(), spectrum).rank());
}

bool is_multiple_of(const TrigPolynomial& f, const Frequency& omega) {
  if (omega.basis_size() != f.basis().size()) throw BasisMismatch("frequency over a different basis");
  if (omega.is_zero()) throw ValidationError("fundamental frequency must be nonzero");
  FrequencyModule cyclic(f.basis(), {omega});
  for (const auto& h : f.terms()) {
    if (!cyclic.express(h.freq)) return false;
  }
  return true;
}

Frequency angular_frequency_of_period(const GeneratorBasis& basis, const Frequency& period) {
  if (period.basis_size() != basis.size()) throw BasisMismatch("period over a different basis");
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (period.coords()[i] == 0) continue;
    if (index) throw IncommensurableTau("period must be a rational multiple of a single generator");
    index = i;
  }
  if (!index) throw IncommensurableTau("period must be nonzero");
  if (period.value() <= 0.0) throw IncommensurableTau("period must be positive");
  const Rational& q = period.coords()[*index];
  const double g = basis[*index].value;
  // 2*pi / (q g) = (r / q) * h  requires  g * h = 2*pi / r.
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const double ratio = g * basis[m].value / (2.0 * kPi);
    for (long den = 1; den <= 12; ++den) {
      const double num = std::round(ratio * static_cast<double>(den));
      if (num == 0.0 || std::abs(num) > 12.0) continue;
      if (std::abs(ratio * static_cast<double>(den) - num) <= 1e-13 * std::abs(num)) {
        // g h / 2pi = num / den, so r = den / num.
        Rational r(den, static_cast<long>(num));
        r.canonicalize();
        Rational coeff = r / q;
        coeff.canonicalize();
        return Frequency::unit(basis, m, coeff);
      }
    }
  }
  throw IncommensurableTau("2*pi/period is not expressible over the generator basis");
}

bool is_periodic(const TrigPolynomial& f, const Frequency& period) {
  return is_multiple_of(f, angular_frequency_of_period(f.basis(), period));
}

}  // namespace apdelay
