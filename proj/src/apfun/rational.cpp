#include <cctype>
#include <cmath>

#include "apdelay/apfun.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("expected rational \"p/q\", got \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

GeneratorBasis::GeneratorBasis(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (!is_identifier(g.name)) throw ValidationError("generator name \"" + g.name + "\" is not an identifier");
    if (!std::isfinite(g.value) || g.value == 0.0) {
      throw ValidationError("generator " + g.name + " must be finite and nonzero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators_[j].name == g.name) throw ValidationError("duplicate generator name " + g.name);
      if (generators_[j].value == g.value) throw ValidationError("duplicate generator value for " + g.name);
    }
  }
}

std::optional<std::size_t> GeneratorBasis::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

Frequency::Frequency(const GeneratorBasis& basis, std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.size() != basis.size()) {
    throw BasisMismatch("frequency has " + std::to_string(coords_.size()) + " coordinates, basis has " +
                        std::to_string(basis.size()));
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i].canonicalize();
    value_ += coords_[i].get_d() * basis[i].value;
  }
}

Frequency Frequency::zero(const GeneratorBasis& basis) {
  return Frequency(basis, std::vector<Rational>(basis.size(), Rational(0)));
}

Frequency Frequency::unit(const GeneratorBasis& basis, std::size_t index, const Rational& q) {
  std::vector<Rational> c(basis.size(), Rational(0));
  c.at(index) = q;
  return Frequency(basis, std::move(c));
}

bool Frequency::is_zero() const {
  for (const auto& q : coords_) {
    if (q != 0) return false;
  }
  return true;
}

std::string Frequency::describe(const GeneratorBasis& basis) const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    Rational q = coords_[i];
    if (!out.empty()) {
      out += q < 0 ? " - " : " + ";
      q = abs(q);
    } else if (q < 0) {
      out += "-";
      q = abs(q);
    }
    if (q != 1) out += format_rational(q) + "*";
    out += basis[i].name;
  }
  return out.empty() ? "0" : out;
}

bool frequency_less(const Frequency& a, const Frequency& b) {
  if (a.value() != b.value()) return a.value() < b.value();
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end());
}

Frequency add(const GeneratorBasis& basis, const Frequency& a, const Frequency& b) {
  if (a.basis_size() != b.basis_size()) throw BasisMismatch("frequency coordinate counts differ");
  std::vector<Rational> c(a.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
  return Frequency(basis, std::move(c));
}

Frequency scale(const GeneratorBasis& basis, const Frequency& a, const Rational& q) {
  std::vector<Rational> c(a.coords());
  for (auto& x : c) x *= q;
  return Frequency(basis, std::move(c));
}

double chordal_distance(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

}  // namespace apdelay
