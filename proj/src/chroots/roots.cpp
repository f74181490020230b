#include <algorithm>
#include <cmath>
#include <optional>

#include "apdelay/chroots.hpp"
#include "apdelay/errors.hpp"

namespace apdelay {

namespace {

constexpr double kPanelLength = 1.0;
constexpr int kMinOrder = 32;
constexpr int kMaxOrder = 128;
constexpr double kPanelTolerance = 1e-6;
constexpr int kMaxPanelDepth = 40;
constexpr double kIntegralityTol = 0.1;
// Contour nodes are only rejected when Delta is singular to working
// precision; the logarithmic derivative stays accurate well beyond the
// Newton/solve threshold.
constexpr double kContourSingular = 1e15;
constexpr int kNewtonIterations = 100;
constexpr int kJitterAttempts = 3;
constexpr double kJitterFraction = 1e-4;

struct ContourSample {
  cplx winding;
  double max_abs_det = 0.0;
};

// Gauss-Legendre sum of det'/det along the segment [a, b]; nullopt when a
// node is singular to working precision.
std::optional<cplx> segment_sum(const DelaySystem& sys, cplx a, cplx b, int order, double& max_abs_det) {
  const GaussRule& rule = gauss_legendre(order);
  const cplx mid = 0.5 * (a + b);
  const cplx half = 0.5 * (b - a);
  cplx sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const cplx z = mid + half * rule.nodes[i];
    const CMat m = char_matrix(sys, z);
    const double smin = min_singular_value(m);
    if (!(smin > 0.0) || char_scale(sys, z) / smin > kContourSingular) return std::nullopt;
    const CMat d = char_matrix_derivative(sys, z);
    cplx det, logderiv;
    if (m.rows() == 1) {
      det = m(0, 0);
      logderiv = d(0, 0) / m(0, 0);
    } else {
      const auto lu = m.partialPivLu();
      det = lu.determinant();
      logderiv = lu.solve(d).trace();
    }
    max_abs_det = std::max(max_abs_det, std::abs(det));
    sum += rule.weights[i] * logderiv * half;
  }
  return sum;
}

// Bisects a panel until orders n and 2n agree, so roots much closer to the
// contour than the panel length are still resolved.
std::optional<cplx> adaptive_segment(const DelaySystem& sys, cplx a, cplx b, int order, int depth,
                                     double& max_abs_det) {
  const auto coarse = segment_sum(sys, a, b, order, max_abs_det);
  const auto fine = segment_sum(sys, a, b, 2 * order, max_abs_det);
  if (!coarse || !fine) return std::nullopt;
  if (std::abs(*fine - *coarse) <= kPanelTolerance) return fine;
  if (depth >= kMaxPanelDepth) return std::nullopt;
  const cplx m = 0.5 * (a + b);
  const auto left = adaptive_segment(sys, a, m, order, depth + 1, max_abs_det);
  if (!left) return std::nullopt;
  const auto right = adaptive_segment(sys, m, b, order, depth + 1, max_abs_det);
  if (!right) return std::nullopt;
  return *left + *right;
}

std::optional<ContourSample> contour_integral(const DelaySystem& sys, const Region& r, int order) {
  const cplx corners[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max}, {r.re_min, r.im_max}};
  ContourSample out;
  cplx sum = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e];
    const cplx b = corners[(e + 1) % 4];
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / kPanelLength)));
    for (int p = 0; p < panels; ++p) {
      const cplx pa = a + (b - a) * (static_cast<double>(p) / panels);
      const cplx pb = a + (b - a) * (static_cast<double>(p + 1) / panels);
      const auto s = adaptive_segment(sys, pa, pb, order, 0, out.max_abs_det);
      if (!s) return std::nullopt;
      sum += *s;
    }
  }
  out.winding = sum / (2.0 * kPi * kI);
  if (!std::isfinite(out.winding.real()) || !std::isfinite(out.winding.imag())) return std::nullopt;
  return out;
}

struct Count {
  int count = 0;
  double boundary_scale = 0.0;
};

// Accepts once two successive node doublings round to the same integer,
// both within the integrality tolerance.
std::optional<Count> try_count(const DelaySystem& sys, const Region& r) {
  std::optional<long> previous;
  for (int order = kMinOrder; order <= kMaxOrder; order *= 2) {
    const auto s = contour_integral(sys, r, order);
    if (!s) return std::nullopt;
    const double nearest = std::round(s->winding.real());
    const bool integral = std::abs(s->winding - cplx(nearest, 0.0)) < kIntegralityTol;
    if (integral && previous && *previous == static_cast<long>(nearest)) {
      if (nearest < 0) return std::nullopt;
      return Count{static_cast<int>(nearest), s->max_abs_det};
    }
    previous = integral ? std::optional<long>(static_cast<long>(nearest)) : std::nullopt;
  }
  return std::nullopt;
}

Region expanded(const Region& r, double by) {
  return {r.re_min - by, r.re_max + by, r.im_min - by, r.im_max + by};
}

class Finder {
 public:
  Finder(const DelaySystem& sys, double tol, double threshold, double region_size)
      : sys_(sys),
        tol_(tol),
        threshold_(threshold),
        min_side_(1e-9 * std::max(1.0, region_size)),
        cluster_side_(1e-5 * std::max(1.0, region_size)),
        stuck_side_(1e-3 * std::max(1.0, region_size)) {}

  void search(const Region& r, int count) {
    if (count == 0) return;
    const double side = std::max(r.width(), r.height());
    if (count == 1) {
      if (auto z = newton(center(r), 1); z && r.contains(*z, slack(r))) {
        push(*z, 1);
        return;
      }
      if (side <= min_side_) throw NoConvergence("Newton failed inside a rectangle holding one root");
      split(r, count);
      return;
    }
    if (side <= cluster_side_) {
      cluster(r, count);
      return;
    }
    split(r, count);
  }

  std::vector<Root> take() { return std::move(roots_); }

 private:
  static cplx center(const Region& r) { return {0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)}; }
  double slack(const Region& r) const { return std::max(tol_, 1e-9 * std::max(r.width(), r.height())); }

  void cluster(const Region& r, int count) {
    auto z = newton(center(r), count);
    if (!z) throw NoConvergence("modified Newton failed for a root cluster");
    push(*z, count);
  }

  void split(const Region& r, int count) {
    static constexpr double kFractions[] = {0.5, 0.5137, 0.4781, 0.5419, 0.4523};
    const bool vertical_cut = r.width() >= r.height();
    for (double frac : kFractions) {
      Region a = r;
      Region b = r;
      if (vertical_cut) {
        const double x = r.re_min + frac * r.width();
        a.re_max = x;
        b.re_min = x;
      } else {
        const double y = r.im_min + frac * r.height();
        a.im_max = y;
        b.im_min = y;
      }
      const auto ca = try_count(sys_, a);
      if (!ca) continue;
      const auto cb = try_count(sys_, b);
      if (!cb || ca->count + cb->count != count) continue;
      search(a, ca->count);
      search(b, cb->count);
      return;
    }
    if (std::max(r.width(), r.height()) <= stuck_side_) {
      cluster(r, count);
      return;
    }
    throw BoundaryRoot("could not place a subdivision line away from the roots");
  }

  // z <- z - m / logderiv; m is the multiplicity.
  std::optional<cplx> newton(cplx z, int m) const {
    for (int it = 0; it < kNewtonIterations; ++it) {
      CharDet cd;
      try {
        cd = char_det(sys_, z);
      } catch (const SingularAtPoint&) {
        return z;
      }
      if (cd.logderiv == 0.0 || !std::isfinite(std::abs(cd.logderiv))) return std::nullopt;
      const cplx step = static_cast<double>(m) / cd.logderiv;
      const bool small_det = std::abs(cd.det) <= threshold_;
      z -= step;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      if (small_det && (m > 1 || std::abs(step) <= tol_ * std::max(1.0, std::abs(z)))) return z;
    }
    if (std::abs(char_det_value(sys_, z)) <= threshold_) return z;
    return std::nullopt;
  }

  void push(cplx z, int m) { roots_.push_back({z, m, std::abs(char_det_value(sys_, z))}); }

  const DelaySystem& sys_;
  double tol_;
  double threshold_;
  double min_side_;
  double cluster_side_;
  double stuck_side_;
  std::vector<Root> roots_;
};

bool root_less(const Root& a, const Root& b) {
  if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
  return a.z.imag() < b.z.imag();
}

}  // namespace

int count_roots(const DelaySystem& sys, const Region& region) {
  region.validate();
  const auto c = try_count(sys, region);
  if (!c) throw BoundaryRoot("argument-principle integral did not settle on an integer; jitter the region");
  return c->count;
}

RootSet find_roots(const DelaySystem& sys, const Region& region, double tol) {
  region.validate();
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  const double size = std::max(region.width(), region.height());
  for (int attempt = 0; attempt <= kJitterAttempts; ++attempt) {
    const Region r = expanded(region, attempt * kJitterFraction * size);
    const auto c = try_count(sys, r);
    if (!c) continue;
    Finder finder(sys, tol, 1e-8 * c->boundary_scale, size);
    finder.search(r, c->count);
    auto found = finder.take();
    std::sort(found.begin(), found.end(), root_less);

    RootSet out;
    out.region = r;
    out.total_count = c->count;
    out.boundary_scale = c->boundary_scale;
    int total = 0;
    for (const auto& root : found) {
      const bool duplicate = !out.roots.empty() && std::abs(out.roots.back().z - root.z) <= 10.0 * tol;
      if (duplicate) continue;
      out.roots.push_back(root);
      total += root.multiplicity;
    }
    if (total != out.total_count) {
      throw NoConvergence("located multiplicity " + std::to_string(total) + " but the contour counts " +
                          std::to_string(out.total_count));
    }
    return out;
  }
  throw BoundaryRoot("root on or near the region boundary after " + std::to_string(kJitterAttempts) + " jitters");
}

AxisSpectrum sigma_i(const DelaySystem& sys, double xi_max, double axis_tol) {
  if (!(xi_max > 0.0)) throw ValidationError("xi_max must be positive");
  if (!(axis_tol > 0.0) || !(axis_tol < sys.delta())) throw ValidationError("axis_tol must lie in (0, delta)");
  AxisSpectrum out;
  out.xi_max = xi_max;
  out.axis_tol = axis_tol;
  double w = std::min(0.5 * sys.delta(), 0.25);
  if (w <= axis_tol) w = 0.5 * (axis_tol + sys.delta());
  out.strip_half_width = w;

  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * xi_max)));
  std::vector<Root> all;
  for (int p = 0; p < panels; ++p) {
    const Region panel{-w, w, -xi_max + 2.0 * xi_max * p / panels, -xi_max + 2.0 * xi_max * (p + 1) / panels};
    for (const auto& root : find_roots(sys, panel).roots) all.push_back(root);
  }
  std::sort(all.begin(), all.end(), root_less);
  std::vector<cplx> unique;
  for (const auto& root : all) {
    if (std::abs(root.z.imag()) > xi_max) continue;
    bool seen = false;
    for (const auto& u : unique) seen = seen || std::abs(u - root.z) <= 1e-7;
    if (!seen) unique.push_back(root.z);
  }
  for (const auto& z : unique) {
    const double re = std::abs(z.real());
    if (re <= 0.5 * axis_tol) {
      out.points.push_back(z.imag());
    } else if (re <= axis_tol) {
      out.ambiguous.push_back(z);
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace apdelay
