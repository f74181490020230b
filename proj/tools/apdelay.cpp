// apdelay: almost periodic solutions of linear delay equations.
//
//   apdelay <command> <problem-file> [--xi-max R] [--axis-tol R] [--T R]
//           [--dt R] [--out PATH] [--format json|csv]
//
// `spectrum` takes a signal CSV (t, re_1, im_1, ...) instead of a problem.

#include <iostream>

#include <CLI11.hpp>

#include "apdelay/cli.hpp"

int main(int argc, char** argv) {
  apdelay::CliRequest req;
  CLI::App app{"Almost periodic solutions of linear functional differential equations"};
  app.add_option("command", req.command, "roots | sigma-i | check | solve | decompose | certify | simulate | spectrum")
      ->required();
  app.add_option("input", req.input_path, "problem file (JSON), or signal CSV for spectrum")->required();
  app.add_option("--xi-max", req.xi_max, "half-width of the imaginary-axis search window");
  app.add_option("--axis-tol", req.axis_tol, "|Re z| tolerance for imaginary-axis roots");
  app.add_option("--T", req.T, "simulation horizon");
  app.add_option("--dt", req.dt, "simulation step");
  app.add_option("--k", req.k, "certify: quasi-periodic order to rule out");
  app.add_option("--tau", req.tau, "certify: period as rational coordinates over the generators")->delimiter(',');
  app.add_option("--out", req.out, "write the report (json) or the CSV artifact (csv) to PATH");
  app.add_option("--format", req.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid-min", req.grid_min, "spectrum: first frequency");
  app.add_option("--grid-max", req.grid_max, "spectrum: last frequency");
  app.add_option("--grid-step", req.grid_step, "spectrum: frequency step");
  app.add_option("--eps", req.eps, "spectrum: filter half-bandwidth");
  app.add_option("--threshold", req.threshold, "spectrum: detection threshold relative to sup|g|");
  app.add_option("--lambda", req.lambdas, "spectrum: frequencies for numeric Bohr coefficients");
  app.add_option("--mean-T", req.mean_T, "spectrum: half-window T of the mean value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return apdelay::kExitUsage;
  }
  return apdelay::run(req, std::cout, std::cerr);
}
