#include <cmath>

#include "apdelay/errors.hpp"
#include "apdelay/io.hpp"

namespace apdelay {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json matrix_part(const CMat& m, bool imag) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const CMat& m) { return json{{"re", matrix_part(m, false)}, {"im", matrix_part(m, true)}}; }

CMat matrix_from_json(const json& j, Index n, const std::string& path) {
  const json& re = array(field(j, "re", path), path + ".re");
  const json* im = optional_field(j, "im");
  if (im) array(*im, path + ".im");
  if (static_cast<Index>(re.size()) != n || (im && static_cast<Index>(im->size()) != n)) {
    throw ValidationError("dim mismatch: " + path + " must have " + std::to_string(n) + " rows");
  }
  CMat m(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    const json& rrow = array(re[ru], at(path + ".re", ru));
    if (static_cast<Index>(rrow.size()) != n || (im && static_cast<Index>((*im)[ru].size()) != n)) {
      throw ValidationError("dim mismatch: " + at(path, ru) + " must have " + std::to_string(n) + " columns");
    }
    for (Index c = 0; c < n; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      const double x = number(rrow[cu], at(at(path + ".re", ru), cu));
      const double y = im ? number(array((*im)[ru], at(path + ".im", ru))[cu], at(at(path + ".im", ru), cu)) : 0.0;
      m(r, c) = {x, y};
    }
  }
  return m;
}

CVec vector_from_json(const json& re, const json* im, Index n, const std::string& path) {
  array(re, path + ".re");
  if (im) array(*im, path + ".im");
  if (static_cast<Index>(re.size()) != n || (im && static_cast<Index>(im->size()) != n)) {
    throw ValidationError("dim mismatch: " + path + " coefficient must have length " + std::to_string(n));
  }
  CVec v(n);
  for (Index i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    v(i) = {number(re[iu], at(path + ".re", iu)), im ? number((*im)[iu], at(path + ".im", iu)) : 0.0};
  }
  return v;
}

json vector_part(const CVec& v, bool imag) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(imag ? v(i).imag() : v(i).real());
  return a;
}

json frequency_entry(const Frequency& f, const GeneratorBasis& basis) {
  return json{{"coords", to_json(f)}, {"value", f.value()}, {"label", f.describe(basis)}};
}

}  // namespace

std::vector<double> GridSpec::points_vector() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = points == 1 ? t_min : t_min + (t_max - t_min) * i / (points - 1);
  }
  return out;
}

json to_json(const GeneratorBasis& basis) {
  json a = json::array();
  for (const auto& g : basis.generators()) a.push_back(json{{"name", g.name}, {"value", g.value}});
  return a;
}

json to_json(const Frequency& freq) {
  json a = json::array();
  for (const auto& q : freq.coords()) a.push_back(format_rational(q));
  return a;
}

json to_json(const TrigPolynomial& f, bool with_generators) {
  json j;
  if (with_generators) j["generators"] = to_json(f.basis());
  j["dim"] = f.dim();
  json terms = json::array();
  for (const auto& h : f.terms()) {
    terms.push_back(json{{"coords", to_json(h.freq)}, {"re", vector_part(h.coeff, false)}, {"im", vector_part(h.coeff, true)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

json to_json(const DelaySystem& sys) {
  json terms = json::array();
  for (const auto& t : sys.terms()) terms.push_back(json{{"eta", t.eta}, {"B", matrix_json(t.B)}});
  return json{{"dim", sys.dim()}, {"A", matrix_json(sys.A())}, {"terms", std::move(terms)}, {"delta", sys.delta()}};
}

json to_json(const Region& r) {
  return json{{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_min", r.im_min}, {"im_max", r.im_max}};
}

GeneratorBasis basis_from_json(const json& j, const std::string& path) {
  std::vector<Generator> gens;
  const json& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = at(path, i);
    const json& name = field(a[i], "name", p);
    if (!name.is_string()) fail(p + ".name", "expected a string");
    gens.push_back({name.get<std::string>(), number(field(a[i], "value", p), p + ".value")});
  }
  return GeneratorBasis(std::move(gens));
}

Frequency frequency_from_json(const json& j, const GeneratorBasis& basis, const std::string& path) {
  const json& a = array(j, path);
  if (a.size() != basis.size()) {
    fail(path, "expected " + std::to_string(basis.size()) + " rational coordinates, got " + std::to_string(a.size()));
  }
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_string()) fail(at(path, i), "frequency coordinates must be rational strings \"p/q\"");
    try {
      coords.push_back(parse_rational(a[i].get<std::string>()));
    } catch (const ParseError& e) {
      fail(at(path, i), e.what());
    }
  }
  return Frequency(basis, std::move(coords));
}

TrigPolynomial trig_from_json(const json& j, const GeneratorBasis* shared, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  std::optional<GeneratorBasis> own;
  if (const json* g = optional_field(j, "generators")) own = basis_from_json(*g, path + ".generators");
  if (!own && !shared) fail(path + ".generators", "missing field");
  if (own && shared && !(*own == *shared)) throw ValidationError(path + ".generators differ from the declared generators");
  const GeneratorBasis& basis = own ? *own : *shared;
  const long dim = integer(field(j, "dim", path), path + ".dim");
  if (dim <= 0) throw ValidationError(path + ".dim must be positive");
  std::vector<Harmonic> terms;
  const json& a = array(field(j, "terms", path), path + ".terms");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = at(path + ".terms", i);
    Frequency freq = frequency_from_json(field(a[i], "coords", p), basis, p + ".coords");
    for (const auto& h : terms) {
      if (h.freq == freq) throw ValidationError("duplicate frequency at " + p);
    }
    terms.push_back({std::move(freq), vector_from_json(field(a[i], "re", p), optional_field(a[i], "im"), dim, p)});
  }
  return TrigPolynomial(basis, dim, std::move(terms));
}

DelaySystem system_from_json(const json& j, const std::string& path) {
  const long dim = integer(field(j, "dim", path), path + ".dim");
  if (dim <= 0) throw ValidationError(path + ".dim must be positive");
  CMat A = matrix_from_json(field(j, "A", path), dim, path + ".A");
  std::vector<DelayTerm> terms;
  if (const json* t = optional_field(j, "terms")) {
    array(*t, path + ".terms");
    for (std::size_t i = 0; i < t->size(); ++i) {
      const std::string p = at(path + ".terms", i);
      terms.push_back({number(field((*t)[i], "eta", p), p + ".eta"), matrix_from_json(field((*t)[i], "B", p), dim, p + ".B")});
    }
  }
  return DelaySystem(std::move(A), std::move(terms), number(field(j, "delta", path), path + ".delta"));
}

Region region_from_json(const json& j, const std::string& path) {
  Region r{number(field(j, "re_min", path), path + ".re_min"), number(field(j, "re_max", path), path + ".re_max"),
           number(field(j, "im_min", path), path + ".im_min"), number(field(j, "im_max", path), path + ".im_max")};
  r.validate();
  return r;
}

ProblemFile parse_problem(std::string_view text) {
  const json root = read_json(text);
  if (!root.is_object()) fail("$", "expected an object");
  const json& version = field(root, "schema_version", "$");
  if (!version.is_number_integer() || version.get<long>() != kSchemaVersion) {
    fail("$.schema_version", "unsupported schema version (expected 1)");
  }
  GeneratorBasis basis = basis_from_json(field(root, "generators", "$"), "$.generators");
  DelaySystem sys = system_from_json(field(root, "system", "$"), "$.system");
  TrigPolynomial f = trig_from_json(field(root, "forcing", "$"), &basis, "$.forcing");
  if (f.dim() != sys.dim()) {
    throw ValidationError("dim mismatch: forcing has dimension " + std::to_string(f.dim()) + ", system has " +
                          std::to_string(sys.dim()));
  }

  AnalysisOptions opt;
  if (const json* o = optional_field(root, "options")) {
    if (!o->is_object()) fail("$.options", "expected an object");
    static const char* const kKnown[] = {"xi_max", "axis_tol", "grid", "T", "dt", "region", "lambda1", "k", "tau", "history"};
    for (const auto& [key, value] : o->items()) {
      bool known = false;
      for (const char* k : kKnown) known = known || key == k;
      if (!known) fail("$.options." + key, "unknown option");
    }
    if (const json* v = optional_field(*o, "xi_max")) {
      opt.xi_max = number(*v, "$.options.xi_max");
      if (!(*opt.xi_max > 0.0)) throw ValidationError("options.xi_max must be positive");
    }
    if (const json* v = optional_field(*o, "axis_tol")) {
      opt.axis_tol = number(*v, "$.options.axis_tol");
      if (!(*opt.axis_tol > 0.0) || !(*opt.axis_tol < sys.delta())) {
        throw ValidationError("options.axis_tol must lie in (0, delta)");
      }
    }
    if (const json* v = optional_field(*o, "grid")) {
      GridSpec g{number(field(*v, "t_min", "$.options.grid"), "$.options.grid.t_min"),
                 number(field(*v, "t_max", "$.options.grid"), "$.options.grid.t_max"),
                 static_cast<int>(integer(field(*v, "points", "$.options.grid"), "$.options.grid.points"))};
      if (g.points < 1 || g.t_max < g.t_min) throw ValidationError("options.grid needs points >= 1 and t_max >= t_min");
      opt.grid = g;
    }
    if (const json* v = optional_field(*o, "T")) opt.T = number(*v, "$.options.T");
    if (const json* v = optional_field(*o, "dt")) opt.dt = number(*v, "$.options.dt");
    if (const json* v = optional_field(*o, "region")) opt.region = region_from_json(*v, "$.options.region");
    if (const json* v = optional_field(*o, "lambda1")) {
      std::vector<Frequency> l;
      array(*v, "$.options.lambda1");
      for (std::size_t i = 0; i < v->size(); ++i) l.push_back(frequency_from_json((*v)[i], basis, at("$.options.lambda1", i)));
      opt.lambda1 = std::move(l);
    }
    if (const json* v = optional_field(*o, "k")) {
      const long k = integer(*v, "$.options.k");
      if (k < 0) throw ValidationError("options.k must be non-negative");
      opt.k = static_cast<int>(k);
    }
    if (const json* v = optional_field(*o, "tau")) opt.tau = frequency_from_json(*v, basis, "$.options.tau");
    if (const json* v = optional_field(*o, "history")) {
      opt.history = trig_from_json(*v, &basis, "$.options.history");
      if (opt.history->dim() != sys.dim()) throw ValidationError("dim mismatch: options.history");
    }
  }
  return ProblemFile{basis, ForcedProblem(std::move(sys), std::move(f)), std::move(opt)};
}

json to_json(const ProblemFile& pf) {
  json options = json::object();
  const auto& o = pf.options;
  if (o.xi_max) options["xi_max"] = *o.xi_max;
  if (o.axis_tol) options["axis_tol"] = *o.axis_tol;
  if (o.grid) options["grid"] = json{{"t_min", o.grid->t_min}, {"t_max", o.grid->t_max}, {"points", o.grid->points}};
  if (o.T) options["T"] = *o.T;
  if (o.dt) options["dt"] = *o.dt;
  if (o.region) options["region"] = to_json(*o.region);
  if (o.lambda1) {
    json a = json::array();
    for (const auto& l : *o.lambda1) a.push_back(to_json(l));
    options["lambda1"] = std::move(a);
  }
  if (o.k) options["k"] = *o.k;
  if (o.tau) options["tau"] = to_json(*o.tau);
  if (o.history) options["history"] = to_json(*o.history, false);
  return json{{"schema_version", kSchemaVersion},
              {"generators", to_json(pf.generators)},
              {"system", to_json(pf.problem.sys)},
              {"forcing", to_json(pf.problem.f, false)},
              {"options", std::move(options)}};
}

std::string serialize_problem(const ProblemFile& problem) { return write_json(to_json(problem)); }

json to_json(const RootSet& roots) {
  json a = json::array();
  for (const auto& r : roots.roots) {
    a.push_back(json{{"re", r.z.real()}, {"im", r.z.imag()}, {"multiplicity", r.multiplicity}, {"residual", r.det_residual}});
  }
  return json{{"region", to_json(roots.region)},
              {"roots", std::move(a)},
              {"total_count", roots.total_count},
              {"boundary_scale", roots.boundary_scale}};
}

json to_json(const AxisSpectrum& s) {
  json amb = json::array();
  for (const auto& z : s.ambiguous) amb.push_back(json{{"re", z.real()}, {"im", z.imag()}});
  return json{{"sigma_i", s.points},
              {"ambiguous", std::move(amb)},
              {"window", json::array({-s.xi_max, s.xi_max})},
              {"axis_tol", s.axis_tol},
              {"strip_half_width", s.strip_half_width}};
}

json to_json(const ConditionReport& r, const GeneratorBasis& basis) {
  json res = json::array();
  for (const auto& f : r.resonances) res.push_back(frequency_entry(f, basis));
  json near = json::array();
  for (const auto& z : r.near_axis) near.push_back(json{{"re", z.real()}, {"im", z.imag()}});
  return json{{"window", json::array({-r.xi_max, r.xi_max})},
              {"axis_tol", r.axis_tol},
              {"sigma_i_window", r.sigma_i},
              {"sigma_i_minus_spf", r.sigma_i_minus_spf},
              {"near_axis", std::move(near)},
              {"resonances", std::move(res)},
              {"thm12",
               {{"sigma_i_minus_spf_finite_in_window", r.thm12.sigma_i_minus_spf_finite_in_window},
                {"spf_countable", r.thm12.spf_countable},
                {"c0_free", r.thm12.c0_free},
                {"verdict", r.thm12.verdict}}},
              {"thm20", {{"circle_distance", r.thm20.circle_distance}, {"separated", r.thm20.separated}}},
              {"thm21", {{"circle_spf_countable", r.thm21.circle_spf_countable}, {"verdict", r.thm21.verdict}}},
              {"hypotheses_hold", r.hypotheses_hold()},
              {"solvable_directly", r.solvable_directly},
              {"notes", r.notes}};
}

json to_json(const SolutionBundle& b) {
  json cond = json::array();
  for (const auto& [f, c] : b.per_frequency_conditioning) {
    json e = frequency_entry(f, b.u.basis());
    e["conditioning"] = c;
    cond.push_back(std::move(e));
  }
  return json{{"u", to_json(b.u)},
              {"classical_residual", b.classical_residual},
              {"mild_residual", b.mild_residual},
              {"spectral_check", b.spectral_check},
              {"per_frequency_conditioning", std::move(cond)}};
}

json to_json(const InclusionResult& r) {
  json j{{"pass", r.pass}, {"sigma_i", r.sigma_i}};
  if (r.witness) {
    j["witness"] = json{{"coords", to_json(*r.witness)}, {"value", r.witness->value()}};
    j["failed_inclusion"] = r.failed_inclusion;
  }
  return j;
}

json to_json(const Certificate& c, const GeneratorBasis& basis) {
  json mb = json::array();
  for (const auto& b : c.module_basis) mb.push_back(frequency_entry(b, basis));
  return json{{"kind", "quasi-periodic"}, {"certified", c.certified}, {"k", c.k}, {"order", c.order},
              {"module_basis", std::move(mb)}, {"statement", c.statement}};
}

json to_json(const PeriodicCertificate& c, const GeneratorBasis& basis) {
  json j{{"kind", "periodic"},
         {"certified", c.certified},
         {"period", frequency_entry(c.period, basis)},
         {"fundamental", frequency_entry(c.fundamental, basis)},
         {"statement", c.statement}};
  if (c.witness) j["witness"] = frequency_entry(*c.witness, basis);
  return j;
}

json to_json(const BeurlingEstimate& e) {
  json det = json::array();
  for (const auto& p : e.detections) det.push_back(json{{"xi", p.xi}, {"amplitude", p.amplitude}});
  return json{{"detections", std::move(det)},
              {"peaks", e.peaks},
              {"tail_bound", e.tail_bound},
              {"sup_norm", e.sup_norm},
              {"kernel_half_width", e.kernel_half_width}};
}

}  // namespace apdelay
