// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are the contractual ones.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "apdelay/cli.hpp"
#include "apdelay/errors.hpp"
#include "apdelay/io.hpp"
#include "apdelay/simulate.hpp"
#include "oracles.hpp"

using namespace apdelay;
using namespace oracle;
namespace fs = std::filesystem;

namespace {

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// 1. Harmonic balance on x' = -x + e^{it}.
void harmonic_exactness(Check& c) {
  const ForcedProblem p(scalar_system(-1.0, {}), scalar_poly(basis_one(), {{{"1"}, 1.0}}));
  const auto bundle = harmonic_solve(p);
  // Oracle: the 1x1 system (i + 1) a = 1 solved by hand.
  const cplx expected = 1.0 / cplx(1.0, 1.0);
  const cplx a = bohr_coefficient(bundle.u, freq(basis_one(), {"1"}))(0);
  c.expect(std::abs(a - expected) < 1e-12, "coefficient off by " + sci(std::abs(a - expected)));
  c.expect(std::abs(expected - cplx(0.5, -0.5)) < 1e-15, "oracle disagrees with (1 - i)/2");
  const auto grid = default_grid(p.f);
  c.expect(grid.size() == 201, "grid has " + std::to_string(grid.size()) + " points");
  const auto r = residuals(bundle.u, p, grid);
  c.expect(r.classical < 1e-12, "classical residual " + sci(r.classical));
  c.expect(r.mild < 1e-12, "mild residual " + sci(r.mild));
}

// 2. Roots of z + (pi/2) e^{-z}; count vs find on random systems.
void characteristic_roots(Check& c) {
  const auto sys = quarter_wave_system();
  const auto rs = find_roots(sys, Region{-1.0, 1.0, -3.0, 3.0});
  c.expect(rs.roots.size() == 2, std::to_string(rs.roots.size()) + " roots found");
  for (const cplx target : {cplx(0.0, -kPi / 2), cplx(0.0, kPi / 2)}) {
    // Oracle: analytic substitution.
    c.expect(std::abs(target + kPi / 2 * std::exp(-target)) < 1e-15, "oracle root is not a root");
    bool hit = false;
    for (const auto& r : rs.roots) hit = hit || (std::abs(r.z - target) < 1e-8 && r.multiplicity == 1);
    c.expect(hit, "no simple root within 1e-8 of " + sci(target.imag()) + "i");
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    const auto s = random_system(rng, 1 + seed % 2, 1 + seed % 3, false);
    const auto found = find_roots(s, Region{-1.0, 1.0, -4.0, 4.0});
    int m = 0;
    for (const auto& r : found.roots) m += r.multiplicity;
    const int counted = count_roots(s, found.region);
    c.expect(counted == m, "seed " + std::to_string(seed) + ": count " + std::to_string(counted) + " vs found " +
                               std::to_string(m));
  }
}

// 3. Delta(i lambda) a(lambda, u) = a(lambda, f) and sigma_b(u) = sigma_b(f).
void balance_identity(Check& c) {
  for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
    const auto p = random_problem(seed);
    const auto u = harmonic_solve(p).u;
    for (const auto& h : p.f.terms()) {
      const cplx z = kI * h.freq.value();
      const double err = (char_matrix(p.sys, z) * bohr_coefficient(u, h.freq) - h.coeff).norm();
      const double cond = char_conditioning(p.sys, z);
      c.expect(err < 1e-10 * cond, "seed " + std::to_string(seed) + ": residual " + sci(err));
    }
    c.expect(bohr_spectrum(u) == bohr_spectrum(p.f), "seed " + std::to_string(seed) + ": spectra differ");
  }
}

// 4. Spectral inclusion passes on solutions and catches a planted violation.
void spectral_inclusion(Check& c) {
  const auto b = basis_one_sqrt2();
  for (std::uint64_t seed = 2000; seed < 2020; ++seed) {
    const auto p = random_problem(seed);
    const auto u = harmonic_solve(p).u;
    const auto ok = verify_spectral_inclusion(u, p, 10.0);
    c.expect(ok.pass, "seed " + std::to_string(seed) + ": solution rejected");

    // Plant a frequency that is neither forced nor characteristic.
    Frequency extra = freq(b, {"7/3", "1/5"});
    for (int shift = 0; shift < 10; ++shift) {
      bool clash = false;
      for (double xi : ok.sigma_i) clash = clash || std::abs(xi - extra.value()) < 1e-3;
      for (const auto& lam : bohr_spectrum(p.f)) clash = clash || lam == extra;
      if (!clash) break;
      extra = add(b, extra, freq(b, {"1/7", "0"}));
    }
    CVec v = CVec::Ones(p.f.dim());
    const auto bad = combine(u, TrigPolynomial(b, p.f.dim(), {{extra, v}}), 1.0, 1.0);
    const auto r = verify_spectral_inclusion(bad, p, 10.0);
    c.expect(!r.pass && r.witness && *r.witness == extra && r.failed_inclusion == "solution-in-characteristic",
             "seed " + std::to_string(seed) + ": violation not witnessed");
  }
}

// 5. Riesz projections on matrices with separated spectra.
void riesz(Check& c) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 4;
    std::vector<cplx> eigs;
    while (static_cast<Index>(eigs.size()) < n) {
      const cplx e(u(rng), u(rng));
      bool ok = true;
      for (const auto& x : eigs) ok = ok && std::abs(x - e) >= 0.5;
      if (ok) eigs.push_back(e);
    }
    CMat S = random_matrix(rng, n, 1.0) + 2.0 * CMat::Identity(n, n);
    CMat D = CMat::Zero(n, n);
    for (Index i = 0; i < n; ++i) D(i, i) = eigs[i];
    const CMat M = S * D * S.inverse();
    CMat sum = CMat::Zero(n, n);
    for (const auto& e : eigs) {
      const CMat P = riesz_projection(M, e, 0.2);
      c.expect((P * P - P).norm() < 1e-10, "idempotence " + sci((P * P - P).norm()));
      c.expect((P * M - M * P).norm() < 1e-10, "commutation " + sci((P * M - M * P).norm()));
      c.expect(std::abs(P.trace() - 1.0) < 1e-8, "trace " + sci(std::abs(P.trace() - 1.0)));
      sum += P;
    }
    c.expect((sum - CMat::Identity(n, n)).norm() < 1e-9, "completeness " + sci((sum - CMat::Identity(n, n)).norm()));
  }
}

// 6. Integer bases, checked against determinantal divisors of the input.
void integer_bases(Check& c) {
  const auto b1 = basis_one();
  const std::vector<Frequency> halves = {freq(b1, {"1/2"}), freq(b1, {"1/3"})};
  const auto m1 = integer_basis(b1, halves);
  c.expect(m1.rank() == 1 && m1.integer_basis()[0] == freq(b1, {"1/6"}), "{1/2, 1/3} does not give {1/6}");
  // Oracle: over the common denominator 6 the rows are (3), (2); d_1 = 1,
  // so the lattice is (1/6) Z.
  c.expect(determinantal_divisor({{3}, {2}}, 1) == 1, "oracle divisor for {3, 2}");

  const auto b2 = basis_one_sqrt2();
  const std::vector<Frequency> three = {freq(b2, {"1", "0"}), freq(b2, {"0", "1"}), freq(b2, {"1", "1"})};
  const auto m2 = integer_basis(b2, three);
  c.expect(m2.rank() == 2, "rank " + std::to_string(m2.rank()));
  const IntMatrix rows = {{1, 0}, {0, 1}, {1, 1}};
  c.expect(rational_rank(rows) == 2 && determinantal_divisor(rows, 2) == 1, "oracle rank/divisor");
  IntMatrix basis_rows;
  for (const auto& f : m2.integer_basis()) basis_rows.push_back({f.coords()[0].get_num(), f.coords()[1].get_num()});
  c.expect(determinantal_divisor(basis_rows, 2) == 1, "basis lattice differs from Z^2");

  const auto f = scalar_poly(b2, {{{"1", "0"}, 1.0}, {{"0", "1"}, 1.0}});
  c.expect(qp_order(f) == 2, "qp_order " + std::to_string(qp_order(f)));
}

// 7. Non-existence certificates.
void certificates(Check& c) {
  const auto b = basis_one_sqrt2();
  const ForcedProblem p(scalar_system(-1.0, {{-1.0, 0.2}}), scalar_poly(b, {{{"1", "0"}, 1.0}, {{"0", "1"}, 1.0}}));
  c.expect(nonexistence_certificate(p, 1).certified, "no certificate for k = 1");
  c.expect(!nonexistence_certificate(p, 2).certified, "certificate issued for k = 2");

  const auto bp = basis_one_pi();
  const ForcedProblem q(scalar_system(-1.0, {}), scalar_poly(bp, {{{"1", "0"}, 1.0}, {{"3", "0"}, 0.5}}));
  // Period 2 pi: every integer frequency fits, so refuse.
  c.expect(!periodic_certificate(q, freq(bp, {"0", "2"})).certified, "2pi-periodicity wrongly excluded");
  // Period pi: fundamental 2, frequency 1 does not fit.
  const auto cert = periodic_certificate(q, freq(bp, {"0", "1"}));
  c.expect(cert.certified && cert.witness && *cert.witness == freq(bp, {"1", "0"}), "pi-periodicity not excluded");
}

// 8. Circle closure: separation fails, the direct solve does not.
void circle_closure(Check& c) {
  const ForcedProblem p(quarter_wave_system(), scalar_poly(basis_pi(), {{{"5/2"}, 1.0}}));
  const cplx z = kI * (2.5 * kPi);
  // Oracle: i 5pi/2 + (pi/2) e^{-i 5pi/2} = i 5pi/2 - i pi/2.
  const cplx oracle = z + kPi / 2 * std::exp(-z);
  c.expect(std::abs(oracle - cplx(0.0, 2.0 * kPi)) < 1e-10, "oracle");
  const cplx d = char_matrix(p.sys, z)(0, 0);
  c.expect(std::abs(d - cplx(0.0, 2.0 * kPi)) < 1e-10, "Delta = " + sci(d.real()) + " + " + sci(d.imag()) + "i");
  const auto rep = check_conditions(p, 10.0);
  c.expect(!rep.thm20.separated, "reported separated");
  c.expect(rep.solvable_directly, "reported not solvable directly");
}

// 9. Integrator against the harmonic solution and its convergence order.
void simulation(Check& c) {
  const ForcedProblem p(scalar_system(0.0, {{-1.0, -0.5}}), scalar_poly(basis_one(), {{{"1"}, 1.0}}));
  const auto u = harmonic_solve(p).u;
  const double dev = compare(integrate(p.sys, p.f, History::from(p.sys, u), 20.0, 1e-3), u);
  c.expect(dev < 1e-4, "deviation " + sci(dev));

  // cos(pi t / 2) solves x' = -(pi/2) x(t - 1) on the whole line, so the
  // history has no breaking points.
  const auto sys = quarter_wave_system();
  const auto b = basis_pi();
  const auto exact = scalar_poly(b, {{{"1/2"}, 0.5}, {{"-1/2"}, 0.5}});
  const TrigPolynomial zero(b, 1);
  const auto h = History::from(sys, exact);
  const double e1 = compare(integrate(sys, zero, h, 10.0, 0.05), exact);
  const double e2 = compare(integrate(sys, zero, h, 10.0, 0.025), exact);
  c.expect(e1 / e2 >= 8.0, "halving dt improves by " + sci(e1 / e2));
}

// 10. Beurling detection of two tones; Carleman transform vs quadrature.
void spectrum_estimation(Check& c) {
  const double step = 0.05, eps = 0.1;
  const auto f = scalar_poly(basis_one(), {{{"1"}, 1.0}, {{"5/2"}, 1.0}});
  const auto g = sample(f, 0.0, 1000.0, 0.05);
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(i * step);
  const auto est = beurling_estimate(g, grid, eps, 1e-3);
  c.expect(est.peaks.size() == 2, std::to_string(est.peaks.size()) + " peaks");
  if (est.peaks.size() == 2) {
    c.expect(std::abs(est.peaks[0] - 1.0) <= step + 1e-12, "first peak at " + sci(est.peaks[0]));
    c.expect(std::abs(est.peaks[1] - 2.5) <= step + 1e-12, "second peak at " + sci(est.peaks[1]));
  }
  // The filter passband is (xi - eps, xi + eps); any detection must lie in
  // that band around a tone, up to one grid step.
  for (const auto& d : est.detections) {
    const double gap = std::min(std::abs(d.xi - 1.0), std::abs(d.xi - 2.5));
    c.expect(gap <= eps + step + 1e-12, "spurious detection at " + sci(d.xi));
  }

  const auto e = scalar_poly(basis_one(), {{{"1"}, 1.0}});
  const cplx lam(0.5, 0.3);
  // Oracle: Simpson on [0, 80]; the tail is below e^{-40}.
  const cplx num = simpson([&](double t) { return std::exp((kI - lam) * t); }, 0.0, 80.0, 160000);
  const double err = std::abs(carleman_transform(e, lam)(0) - num);
  c.expect(err < 1e-6, "Carleman error " + sci(err));
}

// 11. CLI: determinism, round trip, exit codes.
int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(APDELAY_CLI_PATH) + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_contract(Check& c) {
  const std::string dir = APDELAY_PROBLEMS_DIR;
  const fs::path tmp = fs::temp_directory_path() / "apdelay_acceptance";
  fs::create_directories(tmp);
  const fs::path a = tmp / "a.json", b = tmp / "b.json";

  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    const std::string text = read_file(entry.path().string());
    c.expect(serialize_problem(parse_problem(text)) == text, "round trip " + entry.path().filename().string());
    for (const char* cmd : {"roots", "check", "solve"}) {
      const int ca = run_cli(std::string(cmd) + " " + entry.path().string(), a);
      const int cb = run_cli(std::string(cmd) + " " + entry.path().string(), b);
      c.expect(ca == cb && read_file(a.string()) == read_file(b.string()),
               std::string(cmd) + " not deterministic on " + entry.path().filename().string());
    }
  }
  c.expect(files >= 5, "corpus has " + std::to_string(files) + " files");

  c.expect(run_cli("check " + dir + "/damped_scalar.json", a) == 0, "exit 0");
  c.expect(run_cli("check " + dir + "/circle_closure.json", a) == 1, "exit 1 (check failed)");
  c.expect(run_cli("solve " + dir + "/quarter_wave_resonant.json", a) == 1, "exit 1 (resonance)");
  c.expect(run_cli("nonsense " + dir + "/damped_scalar.json", a) == 2, "exit 2");
  c.expect(run_cli("roots " + dir + "/boundary_roots.json", a) == 3, "exit 3");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"harmonic-balance exactness", harmonic_exactness},
      {"characteristic roots", characteristic_roots},
      {"balance identity on random problems", balance_identity},
      {"spectral inclusion", spectral_inclusion},
      {"riesz projections", riesz},
      {"integer bases", integer_bases},
      {"non-existence certificates", certificates},
      {"circle closure", circle_closure},
      {"simulation cross-check", simulation},
      {"spectrum estimation", spectrum_estimation},
      {"cli determinism and round trip", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("threw ") + e.what());
    }
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!c.failures.empty()) {
      ++failed;
      std::cout << ": " << c.failures.front();
      if (c.failures.size() > 1) std::cout << " (+" << c.failures.size() - 1 << " more)";
    }
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
