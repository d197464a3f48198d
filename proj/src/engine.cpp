#include "monoapprox/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "monoapprox/errors.hpp"

namespace monoapprox {

PhiSpec default_engine_phi() { return PhiSpec::gamma(); }

namespace {

void check_point_index(int i, int size, const char* what) {
  if (i < 0 || i >= size) {
    raise(ErrorKind::InvalidParameter, std::string(what) + " index " + std::to_string(i) +
                                           " out of range [0," + std::to_string(size) + ")");
  }
}

void check_family_size(const FinitePreorder& order, const FunctionFamily& family) {
  if (family.point_count() != order.size()) {
    raise(ErrorKind::SizeMismatch,
          "family is over " + std::to_string(family.point_count()) + " points, space has " +
              std::to_string(order.size()));
  }
}

double max_over(const GridFunction& f, const std::vector<int>& idx) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i : idx) m = std::max(m, f[i]);
  return m;
}

double min_over(const GridFunction& f, const std::vector<int>& idx) {
  double m = std::numeric_limits<double>::infinity();
  for (int i : idx) m = std::min(m, f[i]);
  return m;
}

double max_all(const GridFunction& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : f.values) m = std::max(m, v);
  return m;
}

double min_all(const GridFunction& f) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : f.values) m = std::min(m, v);
  return m;
}

void step_phi(const PhiSpec& phi, GridFunction& w) {
  for (double& v : w.values) v = eval_phi(phi, v);
}

[[noreturn]] void raise_cap(const char* stage, long long max_iter) {
  raise(ErrorKind::IterationCapExceeded,
        std::string(stage) + " found no iterate within cap " + std::to_string(max_iter));
}

// One cover step of the two-set separation: a function that stays below
// delta on all of a_set, exceeds 1 at b (and possibly at further points of
// the b side), and stays below 1+delta everywhere.
Separation build_cover_piece(const FinitePreorder& order, const FunctionFamily& family,
                             const PhiSpec& phi, const std::vector<int>& a_set, int b,
                             double delta, long long max_iter) {
  const int k = static_cast<int>(a_set.size());

  std::vector<Separation> parts;
  parts.reserve(a_set.size());
  long long iters = 0;
  for (int a : a_set) {
    parts.push_back(separate_points(order, family, phi, a, b, 0.5, max_iter));
    iters += parts.back().iterations;
  }

  // Average the point separators. For k >= 2 we squash each part until the
  // average over the a side drops below 1 - 1/(4k). The slack of 1/(4k) is
  // what keeps the later division by alpha strictly below 1: the average can
  // approach (k-1)/k when parts sit at their fixed point 1, which still
  // clears the threshold, while values merely near 1 decay too slowly to
  // wait for.
  GridFunction mixed;
  ConeExpr mixed_trace = parts.front().trace;
  long long n_steps = 0;
  if (k == 1) {
    mixed = parts.front().function;
  } else {
    const double kd = static_cast<double>(k);
    const double headroom = 1.0 - 1.0 / (4.0 * kd);
    std::vector<GridFunction> w;
    w.reserve(parts.size());
    for (const Separation& p : parts) w.push_back(p.function);
    while (true) {
      double worst = -std::numeric_limits<double>::infinity();
      for (int a : a_set) {
        double s = w[0][a];
        for (int i = 1; i < k; ++i) s += w[i][a];
        worst = std::max(worst, s / kd);
      }
      if (worst < headroom) break;
      if (n_steps >= max_iter) raise_cap("averaging stage", max_iter);
      for (GridFunction& wi : w) step_phi(phi, wi);
      ++n_steps;
    }
    iters += n_steps;

    mixed.values.assign(static_cast<size_t>(order.size()), 0.0);
    for (int x = 0; x < order.size(); ++x) {
      double s = w[0][x];
      for (int i = 1; i < k; ++i) s += w[i][x];
      mixed[x] = s / kd;
    }
    std::vector<ConeExpr> children;
    children.reserve(parts.size());
    for (Separation& p : parts) {
      children.push_back(ConeExpr::apply_phi(n_steps, std::move(p.trace)));
    }
    mixed_trace = ConeExpr::scale(1.0, kd, ConeExpr::sum(std::move(children)));
  }

  if (mixed[b] != 1.0) {
    raise(ErrorKind::InternalInvariantBreach, "separator value at the upper point drifted from 1");
  }
  const double amax = max_over(mixed, a_set);
  if (!(amax < 1.0)) {
    raise(ErrorKind::InternalInvariantBreach, "averaged separator reached 1 on the lower set");
  }
  double alpha = (amax + 1.0) / 2.0;
  if (alpha >= 1.0) alpha = std::nextafter(1.0, 0.0);
  if (alpha <= amax) {
    raise(ErrorKind::InternalInvariantBreach, "no room between the lower-set maximum and 1");
  }

  GridFunction v = mixed;
  for (double& e : v.values) e = e / alpha;
  long long m_steps = 0;
  while (true) {
    const bool ok =
        max_over(v, a_set) < delta && max_all(v) < 1.0 + delta && v[b] > 1.0;
    if (ok) break;
    if (m_steps >= max_iter) raise_cap("set separation stage", max_iter);
    step_phi(phi, v);
    ++m_steps;
  }
  iters += m_steps;

  ConeExpr trace =
      ConeExpr::apply_phi(m_steps, ConeExpr::scale(1.0, alpha, std::move(mixed_trace)));
  return Separation{std::move(v), std::move(trace), iters};
}

}  // namespace

Separation separate_points(const FinitePreorder& order, const FunctionFamily& family,
                           const PhiSpec& phi, int a, int b, double eps,
                           long long max_iter) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    raise(ErrorKind::InvalidParameter, "eps must lie in (0,1)");
  }
  check_family_size(order, family);
  check_point_index(a, order.size(), "point");
  check_point_index(b, order.size(), "point");
  if (order.leq(b, a)) {
    raise(ErrorKind::PairwiseOrderViolation,
          "(" + std::to_string(a) + "," + std::to_string(b) + "): second point lies below the first");
  }

  // Among generators that increase from a to b, the one with the smallest
  // value ratio needs the fewest squashing steps.
  int best = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < family.count(); ++gi) {
    const GridFunction& g = family[gi];
    if (g[a] < g[b]) {
      const double r = g[a] / g[b];
      if (r < best_ratio) {
        best_ratio = r;
        best = gi;
      }
    }
  }
  if (best < 0) {
    raise(ErrorKind::NotSeparable, "no generator increases from point " + std::to_string(a) +
                                       " to point " + std::to_string(b));
  }

  const GridFunction& g = family[best];
  const double gb = g[b];
  GridFunction h = g;
  for (double& v : h.values) v = v / gb;  // h[b] == 1 exactly

  IterateUntilResult found = iterate_vector_until(phi, h, 1.0 + eps, {a}, eps, max_iter);
  ConeExpr trace =
      ConeExpr::apply_phi(found.steps, ConeExpr::scale(1.0, gb, ConeExpr::gen(best)));
  return Separation{std::move(found.values), std::move(trace), found.steps};
}

Separation separate_sets(const FinitePreorder& order, const FunctionFamily& family,
                         const PhiSpec& phi, const std::vector<int>& a_set,
                         const std::vector<int>& b_set, double delta,
                         long long max_iter) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    raise(ErrorKind::InvalidParameter, "delta must lie in (0,1)");
  }
  if (a_set.empty() || b_set.empty()) {
    raise(ErrorKind::InvalidParameter, "both index sets must be non-empty");
  }
  check_family_size(order, family);
  for (int a : a_set) check_point_index(a, order.size(), "lower-set");
  for (int b : b_set) check_point_index(b, order.size(), "upper-set");
  // Reflexivity makes this check also reject overlapping sets.
  for (int a : a_set) {
    for (int b : b_set) {
      if (order.leq(b, a)) {
        raise(ErrorKind::PairwiseOrderViolation,
              "(" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }

  // Greedy cover of the b side: each piece exceeds 1 at its seed point and
  // usually at many others; repeat from the lowest uncovered index.
  const int bn = static_cast<int>(b_set.size());
  std::vector<char> covered(b_set.size(), 0);
  std::vector<Separation> pieces;
  long long iters = 0;
  while (true) {
    int next = -1;
    for (int i = 0; i < bn; ++i) {
      if (!covered[static_cast<size_t>(i)]) {
        next = i;
        break;
      }
    }
    if (next < 0) break;
    Separation piece =
        build_cover_piece(order, family, phi, a_set, b_set[static_cast<size_t>(next)], delta,
                          max_iter);
    if (!(piece.function[b_set[static_cast<size_t>(next)]] > 1.0)) {
      raise(ErrorKind::InternalInvariantBreach, "cover piece does not exceed 1 at its seed");
    }
    for (int i = 0; i < bn; ++i) {
      if (piece.function[b_set[static_cast<size_t>(i)]] > 1.0) covered[static_cast<size_t>(i)] = 1;
    }
    iters += piece.iterations;
    pieces.push_back(std::move(piece));
  }

  // Squash each piece until their sum is below delta on the a side while
  // still exceeding 1 on all of the b side.
  const int l = static_cast<int>(pieces.size());
  std::vector<GridFunction> w;
  w.reserve(pieces.size());
  for (Separation& p : pieces) w.push_back(std::move(p.function));

  GridFunction h;
  long long r_steps = 0;
  while (true) {
    h.values.assign(static_cast<size_t>(order.size()), 0.0);
    for (int x = 0; x < order.size(); ++x) {
      double s = w[0][x];
      for (int i = 1; i < l; ++i) s += w[i][x];
      h[x] = s;
    }
    if (max_over(h, a_set) < delta && min_over(h, b_set) > 1.0) break;
    if (r_steps >= max_iter) raise_cap("cover summation stage", max_iter);
    for (GridFunction& wi : w) step_phi(phi, wi);
    ++r_steps;
  }
  iters += r_steps;

  // Final squash brings the whole function below 1+delta.
  long long s_steps = 0;
  while (true) {
    const bool ok = max_all(h) < 1.0 + delta && min_over(h, b_set) > 1.0 &&
                    max_over(h, a_set) < delta;
    if (ok) break;
    if (s_steps >= max_iter) raise_cap("final squashing stage", max_iter);
    step_phi(phi, h);
    ++s_steps;
  }
  iters += s_steps;

  std::vector<ConeExpr> children;
  children.reserve(pieces.size());
  for (Separation& p : pieces) {
    children.push_back(ConeExpr::apply_phi(r_steps, std::move(p.trace)));
  }
  ConeExpr trace = ConeExpr::apply_phi(s_steps, ConeExpr::sum(std::move(children)));
  return Separation{std::move(h), std::move(trace), iters};
}

Separation approximate_constant(const FinitePreorder& order, const FunctionFamily& family,
                                const PhiSpec& phi, double level, double eps,
                                long long max_iter) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    raise(ErrorKind::InvalidParameter, "eps must be positive and finite");
  }
  if (!(level >= 0.0) || !std::isfinite(level)) {
    raise(ErrorKind::InvalidParameter, "level must be a non-negative real");
  }
  check_family_size(order, family);
  for (int gi = 0; gi < family.count(); ++gi) {
    for (int x = 0; x < order.size(); ++x) {
      if (!(family[gi][x] >= 0.0)) {
        raise(ErrorKind::GeneratorNegative, "generator " + std::to_string(gi) + " at point " +
                                                std::to_string(x));
      }
    }
  }

  if (level == 0.0) {
    // Scale the first generator down until everything is below eps.
    const GridFunction& g0 = family[0];
    const double top = max_all(g0);
    double j = 1.0;
    if (top > 0.0 && !(top < eps)) {
      const double guess = std::ceil(top / eps);
      if (!(guess < 9.0e15)) {
        raise(ErrorKind::InvalidParameter, "eps too small to realize by scaling");
      }
      j = std::max(1.0, guess);
    }
    int settle = 0;
    while (true) {
      bool ok = true;
      for (double v : g0.values) {
        if (!(v / j < eps)) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      j += 1.0;
      if (++settle > 64) {
        raise(ErrorKind::InternalInvariantBreach, "scaling search failed to settle");
      }
    }
    GridFunction v = g0;
    for (double& e : v.values) e = e / j;
    return Separation{std::move(v), ConeExpr::scale(1.0, j, ConeExpr::gen(0)), 0};
  }

  if (!common_zero_set(family).empty()) {
    raise(ErrorKind::ConstantNotApproximable,
          "positive constant with a non-empty common zero set");
  }

  // Sum of all generators is strictly positive; divide by its minimum so
  // the lowest entry sits exactly at the fixed point 1, then squash until
  // the scaled values fall below level+eps.
  GridFunction g = family[0];
  for (int gi = 1; gi < family.count(); ++gi) {
    for (int x = 0; x < order.size(); ++x) g[x] += family[gi][x];
  }
  const double low = min_all(g);
  if (!(low > 0.0)) {
    raise(ErrorKind::InternalInvariantBreach,
          "empty common zero set but the generator sum vanishes somewhere");
  }
  GridFunction wv = g;
  for (double& e : wv.values) e = e / low;

  const double hi = level + eps;
  if (!std::isfinite(hi)) {
    raise(ErrorKind::InvalidParameter, "level+eps overflows");
  }
  long long n_steps = 0;
  while (true) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double e : wv.values) worst = std::max(worst, e * level);
    if (worst < hi) break;
    if (n_steps >= max_iter) raise_cap("constant approximation stage", max_iter);
    step_phi(phi, wv);
    ++n_steps;
  }

  GridFunction out = wv;
  for (double& e : out.values) e = e * level;

  std::vector<ConeExpr> gens;
  gens.reserve(static_cast<size_t>(family.count()));
  for (int gi = 0; gi < family.count(); ++gi) gens.push_back(ConeExpr::gen(gi));
  ConeExpr trace = ConeExpr::scale(
      level, 1.0,
      ConeExpr::apply_phi(n_steps, ConeExpr::scale(1.0, low, ConeExpr::sum(std::move(gens)))));
  return Separation{std::move(out), std::move(trace), n_steps};
}

LevelSets level_sets(const GridFunction& f, double m, int n) {
  if (n < 2) raise(ErrorKind::InvalidParameter, "n must be at least 2");
  if (f.size() < 1) raise(ErrorKind::InvalidParameter, "empty function");
  if (!std::isfinite(m)) raise(ErrorKind::InvalidParameter, "m must be finite");
  const double tol = 1e-12;
  for (int x = 0; x < f.size(); ++x) {
    if (!(f[x] >= m - tol) || !(f[x] <= m + 1.0 + tol)) {
      raise(ErrorKind::RangeViolation, "value " + std::to_string(f[x]) + " at point " +
                                           std::to_string(x) + " outside [m, m+1]");
    }
  }
  if (!(m + 1.0 / (2.0 * n) > m)) {
    raise(ErrorKind::RangeViolation,
          "interval [m, m+1] is below floating-point resolution at this offset");
  }

  LevelSets out;
  out.a_sets.resize(static_cast<size_t>(n));
  out.b_sets.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double lo_thr = m + static_cast<double>(i) / static_cast<double>(n);
    const double hi_thr = m + static_cast<double>(i + 1) / static_cast<double>(n);
    if (!(lo_thr < hi_thr)) {
      raise(ErrorKind::InternalInvariantBreach, "level thresholds collapsed");
    }
    for (int x = 0; x < f.size(); ++x) {
      if (f[x] <= lo_thr) out.a_sets[static_cast<size_t>(i)].push_back(x);
      if (f[x] >= hi_thr) out.b_sets[static_cast<size_t>(i)].push_back(x);
    }
  }
  return out;
}

ApproxResult approximate(const FinitePreorder& order, const FunctionFamily& family,
                         const PhiSpec& phi, const GridFunction& target, int n,
                         long long max_iter) {
  if (n < 2) raise(ErrorKind::InvalidParameter, "n must be at least 2");
  const int size = order.size();
  if (size < 1) raise(ErrorKind::InvalidParameter, "empty space");
  if (target.size() != size) {
    raise(ErrorKind::SizeMismatch, "target has " + std::to_string(target.size()) +
                                       " entries, space has " + std::to_string(size));
  }
  check_family_size(order, family);
  for (int x = 0; x < size; ++x) {
    if (!(target[x] >= 0.0)) {
      raise(ErrorKind::TargetNegative,
            "target value at point " + std::to_string(x) + " is not a non-negative real");
    }
  }
  if (!is_isotone(order, target)) {
    raise(ErrorKind::TargetNotIsotone, "target decreases along the order");
  }
  for (int gi = 0; gi < family.count(); ++gi) {
    for (int x = 0; x < size; ++x) {
      if (!(family[gi][x] >= 0.0)) {
        raise(ErrorKind::GeneratorNegative, "generator " + std::to_string(gi) + " at point " +
                                                std::to_string(x));
      }
    }
  }
  if (!generates(order, family)) {
    raise(ErrorKind::NotGenerating, "family induces a different preorder");
  }
  for (int x : common_zero_set(family)) {
    if (target[x] != 0.0) {
      raise(ErrorKind::TargetNonzeroOnNS,
            "target must vanish at point " + std::to_string(x));
    }
  }

  const double bound = 3.0 / static_cast<double>(n);
  const double lo = min_all(target);
  const double hi = max_all(target);

  if (lo == hi) {
    Separation s =
        approximate_constant(order, family, phi, lo, 1.0 / static_cast<double>(n), max_iter);
    const double err = sup_norm_distance(target, s.function);
    if (!(err < bound)) {
      raise(ErrorKind::InternalInvariantBreach, "certified bound violated on a constant target");
    }
    return ApproxResult{std::move(s.function), std::move(s.trace), err, bound, s.iterations};
  }

  // Work with target/(hi-lo), whose values span an interval of length 1.
  const double range = hi - lo;
  GridFunction ft = target;
  for (double& v : ft.values) v = v / range;
  const double mt = lo / range;

  LevelSets ls = level_sets(ft, mt, n);
  const double delta = 1.0 / static_cast<double>(n);

  long long iters = 0;
  std::vector<Separation> parts;
  parts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& a_i = ls.a_sets[static_cast<size_t>(i)];
    const auto& b_i = ls.b_sets[static_cast<size_t>(i)];
    if (a_i.empty()) {
      raise(ErrorKind::InternalInvariantBreach, "lower level set unexpectedly empty");
    }
    if (b_i.empty()) {
      // Nothing sits in the top buckets past i, so a near-zero function is a
      // valid (and cheap) stand-in for this slot.
      parts.push_back(approximate_constant(order, family, phi, 0.0, delta, max_iter));
    } else {
      parts.push_back(separate_sets(order, family, phi, a_i, b_i, delta, max_iter));
    }
    iters += parts.back().iterations;
  }

  Separation base = approximate_constant(order, family, phi, mt, delta, max_iter);
  iters += base.iterations;

  // Assemble exactly as the trace will replay it: sum the slot functions
  // left to right, divide by n, add the base, then scale back by the range.
  GridFunction acc = parts.front().function;
  for (int i = 1; i < n; ++i) {
    for (int x = 0; x < size; ++x) acc[x] += parts[static_cast<size_t>(i)].function[x];
  }
  const double nd = static_cast<double>(n);
  for (double& v : acc.values) v = v / nd;
  GridFunction scaled = base.function;
  for (int x = 0; x < size; ++x) scaled[x] += acc[x];
  GridFunction approx = scaled;
  for (double& v : approx.values) v = v * range;

  std::vector<ConeExpr> slot_traces;
  slot_traces.reserve(parts.size());
  for (Separation& p : parts) slot_traces.push_back(std::move(p.trace));
  ConeExpr slots = ConeExpr::scale(1.0, nd, ConeExpr::sum(std::move(slot_traces)));
  std::vector<ConeExpr> top;
  top.push_back(std::move(base.trace));
  top.push_back(std::move(slots));
  ConeExpr trace = ConeExpr::scale(range, 1.0, ConeExpr::sum(std::move(top)));

  const double err = sup_norm_distance(target, approx) / range;
  if (!(err < bound)) {
    raise(ErrorKind::InternalInvariantBreach, "certified bound violated");
  }
  return ApproxResult{std::move(approx), std::move(trace), err, bound, iters};
}

}  // namespace monoapprox
