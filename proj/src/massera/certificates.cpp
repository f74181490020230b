#include "apdelay/massera.hpp"

namespace apdelay {

Certificate nonexistence_certificate(const ForcedProblem& p, int k) {
  if (k < 0) throw ValidationError("k must be non-negative");
  const auto spf = bohr_spectrum(p.f);
  const FrequencyModule module = integer_basis(p.f.basis(), spf);
  Certificate c;
  c.k = k;
  c.order = static_cast<int>(module.rank());
  c.module_basis = module.integer_basis();
  if (k < c.order) {
    c.certified = true;
    std::string basis_text;
    for (const auto& b : c.module_basis) basis_text += (basis_text.empty() ? "" : ", ") + b.describe(p.f.basis());
    c.statement = "the forcing is " + std::to_string(c.order) + "-quasi-periodic with integer basis {" + basis_text +
                  "}; every strong mild almost periodic solution u has sigma_b(f) contained in sigma_b(u), so its "
                  "module has rank at least " +
                  std::to_string(c.order) + " > " + std::to_string(k) + ": no " + std::to_string(k) +
                  "-quasi-periodic strong mild solution exists";
  } else {
    c.statement = "no conclusion: k = " + std::to_string(k) + " is not below the forcing order " +
                  std::to_string(c.order);
  }
  return c;
}

PeriodicCertificate periodic_certificate(const ForcedProblem& p, const Frequency& period) {
  const Frequency omega = angular_frequency_of_period(p.f.basis(), period);
  PeriodicCertificate c{false, period, omega, std::nullopt, {}};
  const FrequencyModule cyclic(p.f.basis(), {omega});
  for (const auto& h : p.f.terms()) {
    if (!cyclic.express(h.freq)) {
      c.witness = h.freq;
      break;
    }
  }
  const std::string tau = period.describe(p.f.basis());
  if (c.witness) {
    c.certified = true;
    c.statement = "forcing frequency " + c.witness->describe(p.f.basis()) + " is not an integer multiple of 2*pi/(" +
                  tau + ") = " + omega.describe(p.f.basis()) + "; since sigma_b(f) is contained in sigma_b(u), no (" +
                  tau + ")-periodic strong mild solution exists";
  } else {
    c.statement = "no conclusion: every forcing frequency is an integer multiple of 2*pi/(" + tau + ")";
  }
  return c;
}

}  // namespace apdelay
