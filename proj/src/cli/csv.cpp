#include <cmath>
#include <sstream>

#include "apdelay/errors.hpp"
#include "apdelay/io.hpp"

namespace apdelay {

std::string roots_csv(const RootSet& roots) {
  std::string out = "re,im,multiplicity,residual\n";
  for (const auto& r : roots.roots) {
    out += format_double(r.z.real()) + "," + format_double(r.z.imag()) + "," + std::to_string(r.multiplicity) + "," +
           format_double(r.det_residual) + "\n";
  }
  return out;
}

std::string axis_csv(const AxisSpectrum& spectrum) {
  std::string out = "xi\n";
  for (double xi : spectrum.points) out += format_double(xi) + "\n";
  return out;
}

std::string spectrum_csv(const BeurlingEstimate& estimate) {
  std::string out = "xi,amplitude\n";
  for (const auto& p : estimate.detections) out += format_double(p.xi) + "," + format_double(p.amplitude) + "\n";
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  const Index n = traj.values.empty() ? 0 : traj.values.front().size();
  std::string out = "t";
  for (Index i = 1; i <= n; ++i) out += ",re_" + std::to_string(i) + ",im_" + std::to_string(i);
  out += "\n";
  for (std::size_t k = 0; k < traj.values.size(); ++k) {
    out += format_double(traj.time(k));
    for (Index i = 0; i < n; ++i) {
      out += "," + format_double(traj.values[k](i).real()) + "," + format_double(traj.values[k](i).imag());
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double to_double(const std::string& s, int line) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got \"" + s + "\"", line);
  }
  if (used != s.size() || !std::isfinite(x)) throw ParseError("expected a finite number, got \"" + s + "\"", line);
  return x;
}

}  // namespace

SampledSignal read_signal_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<double> times;
  SampledSignal sig;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_fields(line);
    if (columns == 0) {
      if (cells.empty() || cells[0] != "t" || cells.size() < 3 || cells.size() % 2 == 0) {
        throw ParseError("signal header must be t,re_1,im_1,...,re_n,im_n", line_no);
      }
      columns = cells.size();
      continue;
    }
    if (cells.size() != columns) throw ParseError("expected " + std::to_string(columns) + " columns", line_no);
    times.push_back(to_double(cells[0], line_no));
    const Index n = static_cast<Index>((columns - 1) / 2);
    CVec v(n);
    for (Index i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(1 + 2 * i);
      v(i) = {to_double(cells[c], line_no), to_double(cells[c + 1], line_no)};
    }
    sig.values.push_back(std::move(v));
  }
  if (times.size() < 2) throw ParseError("signal needs at least two samples");
  sig.t0 = times.front();
  sig.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(sig.dt > 0.0)) throw ParseError("signal times must increase");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - (sig.t0 + sig.dt * static_cast<double>(k))) > 1e-6 * sig.dt) {
      throw ParseError("signal times must be uniformly spaced");
    }
  }
  return sig;
}

}  // namespace apdelay
