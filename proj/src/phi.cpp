#include "monoapprox/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace monoapprox {

namespace {

std::vector<double> segment_slopes(
    const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> slopes;
  slopes.reserve(pts.size() > 0 ? pts.size() - 1 : 0);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    slopes.push_back((pts[i + 1].second - pts[i].second) /
                     (pts[i + 1].first - pts[i].first));
  }
  return slopes;
}

// Extension beyond the last breakpoint keeps y <= x: slope is clamped to 1,
// and to 1/2 when the last breakpoint sits on the diagonal (which validation
// only permits at (1,1)).
double extension_slope_for(const std::vector<std::pair<double, double>>& pts,
                           const std::vector<double>& slopes) {
  double s = slopes.empty() ? 0.0 : slopes.back();
  s = std::min(s, 1.0);
  if (!pts.empty() && pts.back().second == pts.back().first && s >= 1.0) {
    s = 0.5;
  }
  return std::max(s, 0.0);
}

PhiSpec::PiecewiseLinear make_pwl_node(
    std::vector<std::pair<double, double>> points) {
  PhiSpec::PiecewiseLinear node;
  node.points = std::move(points);
  node.slopes = segment_slopes(node.points);
  node.extension_slope = extension_slope_for(node.points, node.slopes);
  return node;
}

void validate_pwl(const PhiSpec::PiecewiseLinear& node) {
  const auto& pts = node.points;
  if (pts.size() < 2) {
    raise(ErrorKind::InvalidParameter,
          "piecewise-linear spec needs at least two breakpoints");
  }
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      raise(ErrorKind::InvalidParameter, "non-finite breakpoint");
    }
  }
  if (pts.front().first != 0.0 || pts.front().second != 0.0) {
    raise(ErrorKind::InvalidParameter, "first breakpoint must be (0,0)");
  }
  bool has_one = false;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& [x, y] = pts[i];
    if (i > 0 && !(pts[i - 1].first < x)) {
      raise(ErrorKind::InvalidParameter,
            "breakpoint x-values must be strictly increasing");
    }
    if (i > 0 && !(pts[i - 1].second <= y)) {
      raise(ErrorKind::InvalidParameter,
            "breakpoint y-values must be non-decreasing");
    }
    if (!(y <= x)) {
      raise(ErrorKind::InvalidParameter, "breakpoint above the diagonal at x=" +
                                             std::to_string(x));
    }
    if (x == 1.0) {
      if (y != 1.0) {
        raise(ErrorKind::InvalidParameter, "breakpoint at x=1 must be (1,1)");
      }
      has_one = true;
    } else if (x != 0.0 && y == x) {
      raise(ErrorKind::InvalidParameter,
            "diagonal breakpoint off {0,1} at x=" + std::to_string(x));
    }
  }
  if (!has_one) {
    raise(ErrorKind::InvalidParameter, "breakpoint (1,1) is required");
  }
  // A segment joining two diagonal breakpoints would make phi the identity
  // on it; with the checks above this can only be (0,0)-(1,1) adjacent.
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].second == pts[i].first && pts[i + 1].second == pts[i + 1].first) {
      raise(ErrorKind::InvalidParameter,
            "segment from (" + std::to_string(pts[i].first) + "," +
                std::to_string(pts[i].second) + ") lies on the diagonal");
    }
  }
}

double eval_pwl(const PhiSpec::PiecewiseLinear& node, double x) {
  const auto& pts = node.points;
  const auto& last = pts.back();
  if (x >= last.first) {
    if (x == last.first) return last.second;
    return last.second + node.extension_slope * (x - last.first);
  }
  // Locate the segment [pts[i], pts[i+1]) containing x; exact breakpoint
  // hits return the stored y so that (0,0) and (1,1) are fixed exactly.
  size_t lo = 0, hi = pts.size() - 1;
  while (lo + 1 < hi) {
    const size_t mid = (lo + hi) / 2;
    if (pts[mid].first <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (x == pts[lo].first) return pts[lo].second;
  return pts[lo].second + node.slopes[lo] * (x - pts[lo].first);
}

}  // namespace

PhiSpec PhiSpec::alpha(double a) {
  if (!(a > 0.0) || !(a <= 1.0)) {
    raise(ErrorKind::InvalidParameter,
          "alpha exponent must lie in (0,1], got " + std::to_string(a));
  }
  return PhiSpec(Alpha{a});
}

PhiSpec PhiSpec::beta() { return PhiSpec(Beta{}); }
PhiSpec PhiSpec::gamma() { return PhiSpec(Gamma{}); }
PhiSpec PhiSpec::chi() { return PhiSpec(Chi{}); }

PhiSpec PhiSpec::piecewise_linear(
    std::vector<std::pair<double, double>> points) {
  PiecewiseLinear node = make_pwl_node(std::move(points));
  validate_pwl(node);
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::piecewise_linear_unchecked(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    raise(ErrorKind::InvalidParameter, "breakpoint list is empty");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& p, const auto& q) {
                             return p.first == q.first;
                           }),
               points.end());
  return PhiSpec(make_pwl_node(std::move(points)));
}

std::string PhiSpec::name() const {
  struct Visitor {
    std::string operator()(const Alpha& n) const {
      return "alpha(" + std::to_string(n.a) + ")";
    }
    std::string operator()(const Beta&) const { return "beta"; }
    std::string operator()(const Gamma&) const { return "gamma"; }
    std::string operator()(const Chi&) const { return "chi"; }
    std::string operator()(const PiecewiseLinear&) const { return "pwl"; }
  };
  return std::visit(Visitor{}, node_);
}

double eval_phi(const PhiSpec& spec, double x) {
  if (!(x >= 0.0)) {
    raise(ErrorKind::NegativeInput, "x = " + std::to_string(x));
  }
  struct Visitor {
    double x;
    double operator()(const PhiSpec::Alpha& n) const {
      if (x == 0.0) return 0.0;  // continuous extension of x*sech(a*ln x)
      const double num = 2.0 * std::pow(x, 1.0 + n.a);
      return num / (1.0 + std::pow(x, 2.0 * n.a));
    }
    double operator()(const PhiSpec::Beta&) const {
      const double num = x * (1.0 + 2.0 * x + 5.0 * x * x);
      const double d = 1.0 + x;
      return num / (d * d * d);
    }
    // (2x/(1+x))^2, evaluated as (2 - 2/(1+x))^2: each floating-point step
    // is monotone in x, and 0 and 1 map to themselves exactly.
    double operator()(const PhiSpec::Gamma&) const {
      const double t = 2.0 - 2.0 / (1.0 + x);
      return t * t;
    }
    // 2x^2/(1+x^2), evaluated as 2 - 2/(1+x^2) for the same reasons.
    double operator()(const PhiSpec::Chi&) const {
      return 2.0 - 2.0 / (1.0 + x * x);
    }
    double operator()(const PhiSpec::PiecewiseLinear& n) const {
      return eval_pwl(n, x);
    }
  };
  return std::visit(Visitor{x}, spec.node());
}

double iterate_phi(const PhiSpec& spec, double x, long long n) {
  if (n < 0) raise(ErrorKind::InvalidParameter, "iterate count must be >= 0");
  double v = x;
  for (long long i = 0; i < n; ++i) v = eval_phi(spec, v);
  return v;
}

IterateUntilResult iterate_vector_until(const PhiSpec& spec,
                                        const GridFunction& start,
                                        double hi_cap,
                                        const std::vector<int>& low_indices,
                                        double low_cap, long long max_iter) {
  if (!(hi_cap > 1.0)) {
    raise(ErrorKind::InvalidParameter, "hi_cap must exceed 1");
  }
  if (!(low_cap > 0.0)) {
    raise(ErrorKind::InvalidParameter, "low_cap must be positive");
  }
  if (max_iter < 0) {
    raise(ErrorKind::InvalidParameter, "max_iter must be >= 0");
  }
  for (int i : low_indices) {
    if (i < 0 || i >= start.size()) {
      raise(ErrorKind::InvalidParameter,
            "low index " + std::to_string(i) + " out of range");
    }
  }
  for (int i = 0; i < start.size(); ++i) {
    if (!(start[i] >= 0.0)) {
      raise(ErrorKind::NegativeInput,
            "entry " + std::to_string(i) + " is negative");
    }
  }

  GridFunction w = start;
  const auto satisfied = [&]() {
    for (int i = 0; i < w.size(); ++i) {
      if (!(w[i] <= hi_cap)) return false;
    }
    for (int i : low_indices) {
      if (!(w[i] < low_cap)) return false;
    }
    return true;
  };
  for (long long n = 0;; ++n) {
    if (satisfied()) return IterateUntilResult{n, std::move(w)};
    if (n >= max_iter) {
      raise(ErrorKind::IterationCapExceeded,
            "no iterate within cap " + std::to_string(max_iter));
    }
    for (double& v : w.values) v = eval_phi(spec, v);
  }
}

PhiPropertyReport verify_phi_properties(const PhiSpec& spec,
                                        const std::vector<double>& grid) {
  PhiPropertyReport report;
  report.min_gap_near_zero = std::numeric_limits<double>::infinity();
  report.min_gap_near_one = std::numeric_limits<double>::infinity();
  double prev_x = 0.0, prev_phi = 0.0;
  bool have_prev = false;
  for (double x : grid) {
    const double px = eval_phi(spec, x);
    if (px > x + 1e-12) {
      report.bound_violations.push_back({x, px});
    }
    if (have_prev && prev_x <= x && px < prev_phi) {
      report.monotonicity_violations.emplace_back(prev_x, x);
    }
    if (x != 0.0 && std::fabs(x) <= 0.1) {
      report.min_gap_near_zero = std::min(report.min_gap_near_zero, x - px);
    }
    if (x != 1.0 && std::fabs(x - 1.0) <= 0.1) {
      report.min_gap_near_one = std::min(report.min_gap_near_one, x - px);
    }
    prev_x = x;
    prev_phi = px;
    have_prev = true;
  }
  return report;
}

}  // namespace monoapprox
