#pragma once

// File formats: problem files and reports share one JSON-compatible schema
// (schema_version 1); roots, spectra and trajectories also export as CSV.
// Output is byte-deterministic: sorted keys, two-space indentation, and
// floating-point values printed with 17 significant digits ("%.16e").

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apdelay/apfun.hpp"
#include "apdelay/chroots.hpp"
#include "apdelay/massera.hpp"
#include "apdelay/simulate.hpp"

namespace apdelay {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

std::string write_json(const json& value);
/// Parses JSON text; throws ParseError carrying the 1-based line.
json read_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

json to_json(const GeneratorBasis& basis);
json to_json(const Frequency& freq);  // rational coordinate strings
json to_json(const TrigPolynomial& f, bool with_generators = true);
json to_json(const DelaySystem& sys);
json to_json(const Region& region);

GeneratorBasis basis_from_json(const json& j, const std::string& path);
Frequency frequency_from_json(const json& j, const GeneratorBasis& basis, const std::string& path);
/// `shared` supplies the generators when the object has none of its own;
/// when both exist they must agree.
TrigPolynomial trig_from_json(const json& j, const GeneratorBasis* shared, const std::string& path);
DelaySystem system_from_json(const json& j, const std::string& path);
Region region_from_json(const json& j, const std::string& path);

struct GridSpec {
  double t_min = 0.0;
  double t_max = 0.0;
  int points = 0;

  std::vector<double> points_vector() const;
};

/// Optional analysis settings; absent fields take the documented defaults
/// and are not written back out.
struct AnalysisOptions {
  std::optional<double> xi_max;    // default 10
  std::optional<double> axis_tol;  // default 1e-6
  std::optional<GridSpec> grid;    // default: massera::default_grid
  std::optional<double> T;         // default 20
  std::optional<double> dt;        // default 1e-3
  std::optional<Region> region;    // roots: default [-delta/2, delta/2] x [-xi_max, xi_max]
  std::optional<std::vector<Frequency>> lambda1;
  std::optional<int> k;
  std::optional<Frequency> tau;
  std::optional<TrigPolynomial> history;

  double xi_max_or_default() const { return xi_max.value_or(10.0); }
  double axis_tol_or_default() const { return axis_tol.value_or(1e-6); }
  double T_or_default() const { return T.value_or(20.0); }
  double dt_or_default() const { return dt.value_or(1e-3); }
};

struct ProblemFile {
  GeneratorBasis generators;
  ForcedProblem problem;
  AnalysisOptions options;
};

/// Throws ParseError (malformed text, missing or mistyped fields) and
/// ValidationError (well-formed but violating an invariant, e.g.
/// "duplicate eta" or "dim mismatch").
ProblemFile parse_problem(std::string_view text);
json to_json(const ProblemFile& problem);
std::string serialize_problem(const ProblemFile& problem);

// Reports
json to_json(const RootSet& roots);
json to_json(const AxisSpectrum& spectrum);
json to_json(const ConditionReport& report, const GeneratorBasis& basis);
json to_json(const SolutionBundle& bundle);
json to_json(const InclusionResult& result);
json to_json(const Certificate& certificate, const GeneratorBasis& basis);
json to_json(const PeriodicCertificate& certificate, const GeneratorBasis& basis);
json to_json(const BeurlingEstimate& estimate);

// CSV
std::string roots_csv(const RootSet& roots);
std::string axis_csv(const AxisSpectrum& spectrum);
std::string spectrum_csv(const BeurlingEstimate& estimate);
std::string trajectory_csv(const Trajectory& traj);
/// Columns t, re_1, im_1, ..., re_n, im_n with uniform t.
SampledSignal read_signal_csv(std::string_view text);
std::string format_double(double x);

}  // namespace apdelay
