#include <algorithm>
#include <cmath>
#include <ostream>

#include "apdelay/cli.hpp"
#include "apdelay/errors.hpp"
#include "apdelay/io.hpp"

namespace apdelay {

namespace {

struct Outcome {
  json report;
  int code = kExitOk;
  std::string csv;  // empty when the command has no CSV form
};

json frequency_json(const Frequency& f, const GeneratorBasis& basis) {
  return json{{"coords", to_json(f)}, {"value", f.value()}, {"label", f.describe(basis)}};
}

json resonance_json(const Resonance& r, const GeneratorBasis& basis) {
  json j = frequency_json(r.frequency(), basis);
  j["conditioning"] = std::isfinite(r.conditioning()) ? json(r.conditioning()) : json(nullptr);
  return j;
}

Outcome resonance_outcome(const Resonance& r, const GeneratorBasis& basis) {
  return {json{{"status", "resonance"}, {"resonance", resonance_json(r, basis)}, {"message", r.what()}},
          kExitCheckFailed, {}};
}

Trajectory sampled_solution(const TrigPolynomial& u, std::span<const double> grid) {
  // Grid points are uniform by construction; store them as a trajectory.
  Trajectory t{grid.empty() ? 0.0 : grid.front(), grid.size() > 1 ? grid[1] - grid[0] : 0.0, {}};
  for (double x : grid) t.values.push_back(eval(u, x));
  return t;
}

std::vector<double> residual_grid(const ProblemFile& pf) {
  return pf.options.grid ? pf.options.grid->points_vector() : default_grid(pf.problem.f);
}

Outcome run_problem_command(const CliRequest& req, ProblemFile& pf) {
  auto& opt = pf.options;
  if (req.xi_max) opt.xi_max = *req.xi_max;
  if (req.axis_tol) opt.axis_tol = *req.axis_tol;
  if (req.T) opt.T = *req.T;
  if (req.dt) opt.dt = *req.dt;
  if (req.k) opt.k = *req.k;
  if (!req.tau.empty()) {
    json coords = json::array();
    for (const auto& s : req.tau) coords.push_back(s);
    opt.tau = frequency_from_json(coords, pf.generators, "--tau");
  }
  const ForcedProblem& p = pf.problem;
  const double xi_max = opt.xi_max_or_default();
  const double axis_tol = opt.axis_tol_or_default();
  if (!(xi_max > 0.0)) throw ValidationError("xi_max must be positive");
  if (!(axis_tol > 0.0) || !(axis_tol < p.sys.delta())) throw ValidationError("axis_tol must lie in (0, delta)");
  const std::string& cmd = req.command;

  if (cmd == "roots") {
    const Region region = opt.region.value_or(Region{-0.5 * p.sys.delta(), 0.5 * p.sys.delta(), -xi_max, xi_max});
    const RootSet roots = find_roots(p.sys, region);
    return {json{{"status", "ok"}, {"roots", to_json(roots)}}, kExitOk, roots_csv(roots)};
  }
  if (cmd == "sigma-i") {
    const AxisSpectrum ax = sigma_i(p.sys, xi_max, axis_tol);
    return {json{{"status", "ok"}, {"sigma_i", to_json(ax)}}, kExitOk, axis_csv(ax)};
  }
  if (cmd == "check") {
    const ConditionReport rep = check_conditions(p, xi_max, axis_tol);
    const bool pass = rep.hypotheses_hold() && rep.solvable_directly;
    return {json{{"status", pass ? "hypotheses-hold" : "check-failed"}, {"report", to_json(rep, pf.generators)}},
            pass ? kExitOk : kExitCheckFailed, {}};
  }
  if (cmd == "solve" || cmd == "decompose") {
    SolutionBundle bundle = harmonic_solve(p);
    if (opt.grid) {
      const auto r = residuals(bundle.u, p, opt.grid->points_vector());
      bundle.classical_residual = r.classical;
      bundle.mild_residual = r.mild;
    }
    if (cmd == "solve") {
      const auto grid = residual_grid(pf);
      return {json{{"status", "ok"}, {"solution", to_json(bundle)}}, kExitOk,
              trajectory_csv(sampled_solution(bundle.u, grid))};
    }
    const std::vector<Frequency> lambda1 = opt.lambda1.value_or(std::vector<Frequency>{});
    const auto [u1, u2] = decompose_solution(bundle.u, lambda1);
    json l1 = json::array();
    for (const auto& l : lambda1) l1.push_back(frequency_json(l, pf.generators));
    return {json{{"status", "ok"},
                 {"solution", to_json(bundle)},
                 {"lambda1", std::move(l1)},
                 {"u1", to_json(u1)},
                 {"u2", to_json(u2)}},
            kExitOk,
            {}};
  }
  if (cmd == "certify") {
    if (!opt.k && !opt.tau) throw ValidationError("certify needs --k or --tau (or options.k / options.tau)");
    json certs = json::array();
    bool all_certified = true;
    if (opt.k) {
      const Certificate c = nonexistence_certificate(p, *opt.k);
      all_certified = all_certified && c.certified;
      certs.push_back(to_json(c, pf.generators));
    }
    if (opt.tau) {
      const PeriodicCertificate c = periodic_certificate(p, *opt.tau);
      all_certified = all_certified && c.certified;
      certs.push_back(to_json(c, pf.generators));
    }
    return {json{{"status", all_certified ? "certified" : "refused"}, {"certificates", std::move(certs)}},
            all_certified ? kExitOk : kExitCheckFailed, {}};
  }
  if (cmd == "simulate") {
    const double T = opt.T_or_default();
    const double dt = opt.dt_or_default();
    if (p.sys.has_advance()) {
      return {json{{"status", "refused"},
                   {"message", "advance terms present: the initial value problem is not well posed; "
                               "use solve and its residuals instead"}},
              kExitCheckFailed,
              {}};
    }
    std::optional<SolutionBundle> bundle;
    if (!opt.history) bundle = harmonic_solve(p);
    const TrigPolynomial& source = opt.history ? *opt.history : bundle->u;
    const Trajectory traj = integrate(p.sys, p.f, History::from(p.sys, source), T, dt);
    json rep{{"status", "ok"},
             {"T", T},
             {"dt", dt},
             {"steps", static_cast<long>(traj.values.size()) - 1},
             {"history", opt.history ? "options.history" : "harmonic solution"}};
    if (bundle) rep["deviation_from_solution"] = compare(traj, bundle->u);
    return {std::move(rep), kExitOk, trajectory_csv(traj)};
  }
  throw ValidationError("unknown command " + cmd);
}

Outcome run_spectrum(const CliRequest& req) {
  const SampledSignal sig = read_signal_csv(read_file(req.input_path));
  if (!req.grid_min || !req.grid_max || !req.grid_step || !req.eps) {
    throw ValidationError("spectrum needs --grid-min, --grid-max, --grid-step and --eps");
  }
  if (!(*req.grid_step > 0.0) || *req.grid_max < *req.grid_min) throw ValidationError("malformed frequency grid");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((*req.grid_max - *req.grid_min) / *req.grid_step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(*req.grid_min + *req.grid_step * static_cast<double>(i));
  const BeurlingEstimate est = beurling_estimate(sig, grid, *req.eps, req.threshold);
  json rep{{"status", "ok"}, {"beurling", to_json(est)}, {"threshold", req.threshold}, {"eps", *req.eps}};
  if (!req.lambdas.empty()) {
    const double T = req.mean_T.value_or(std::min(-sig.t0, sig.t_end()));
    json coeffs = json::array();
    for (double lambda : req.lambdas) {
      const CVec a = bohr_coefficient_numeric(sig, lambda, T);
      json re = json::array(), im = json::array();
      for (Index i = 0; i < a.size(); ++i) {
        re.push_back(a(i).real());
        im.push_back(a(i).imag());
      }
      coeffs.push_back(json{{"lambda", lambda}, {"T", T}, {"re", std::move(re)}, {"im", std::move(im)}});
    }
    rep["bohr_coefficients"] = std::move(coeffs);
  }
  return {std::move(rep), kExitOk, spectrum_csv(est)};
}

bool has_csv_form(const std::string& command) {
  return command == "roots" || command == "sigma-i" || command == "solve" || command == "simulate" ||
         command == "spectrum";
}

std::string error_kind(const std::exception& e) {
  const std::string what = e.what();
  const auto colon = what.find(':');
  return colon == std::string::npos ? "Error" : what.substr(0, colon);
}

}  // namespace

int run(const CliRequest& req, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  auto fail = [&](const std::exception& e, int code) {
    outcome = {json{{"status", "error"}, {"error", {{"kind", error_kind(e)}, {"message", e.what()}}}}, code, {}};
    err << e.what() << "\n";
  };
  const auto& cmds = cli_commands();
  const bool known = std::find(cmds.begin(), cmds.end(), req.command) != cmds.end();
  const bool csv = req.format == "csv";
  try {
    if (!known) throw ValidationError("unknown command \"" + req.command + "\"");
    if (req.format != "json" && !csv) throw ValidationError("--format must be json or csv");
    if (csv && !req.out) throw ValidationError("--format csv needs --out PATH");
    if (csv && !has_csv_form(req.command)) throw ValidationError("command " + req.command + " has no CSV form");
    if (req.command == "spectrum") {
      outcome = run_spectrum(req);
    } else {
      ProblemFile pf = parse_problem(read_file(req.input_path));
      try {
        outcome = run_problem_command(req, pf);
      } catch (const Resonance& r) {
        outcome = resonance_outcome(r, pf.generators);
        err << r.what() << "\n";
      }
    }
  } catch (const BoundaryRoot& e) {
    fail(e, kExitNumerical);
  } catch (const NoConvergence& e) {
    fail(e, kExitNumerical);
  } catch (const EigenvalueOnContour& e) {
    fail(e, kExitNumerical);
  } catch (const SingularAtPoint& e) {
    fail(e, kExitNumerical);
  } catch (const AdvanceTermPresent& e) {
    fail(e, kExitCheckFailed);
  } catch (const WindowTooSmall& e) {
    fail(e, kExitUsage);
  } catch (const Error& e) {
    // Parse, validation, basis/dimension, coverage and I/O problems.
    fail(e, kExitUsage);
  } catch (const std::exception& e) {
    fail(e, kExitNumerical);
  }

  json report = std::move(outcome.report);
  report["schema_version"] = kSchemaVersion;
  report["command"] = req.command;
  report["exit_code"] = outcome.code;
  const std::string text = write_json(report);
  out << text;
  if (req.out && outcome.code != kExitUsage) {
    try {
      if (csv) {
        if (outcome.code == kExitOk) write_file(*req.out, outcome.csv);
      } else {
        write_file(*req.out, text);
      }
    } catch (const Error& e) {
      err << e.what() << "\n";
      return kExitUsage;
    }
  }
  return outcome.code;
}

}  // namespace apdelay
