#pragma once

#include <vector>

#include "monoapprox/order.hpp"
#include "monoapprox/phi.hpp"
#include "monoapprox/trace.hpp"

namespace monoapprox {

// Output of the two-point / two-set separation steps and of the constant
// approximation: the constructed function together with the trace that
// certifies it lies in the cone closure of the family, and the total number
// of iteration steps the internal searches settled on.
struct Separation {
  GridFunction function;
  ConeExpr trace;
  long long iterations = 0;
};

// Nested level sets of a target: a_sets[i] collects the points where the
// (normalized) target is at most m + i/n, b_sets[i] the points where it is
// at least m + (i+1)/n.
struct LevelSets {
  std::vector<std::vector<int>> a_sets;
  std::vector<std::vector<int>> b_sets;
};

struct ApproxResult {
  GridFunction approximant;
  ConeExpr trace;
  double sup_error = 0.0;
  double bound = 0.0;  // 3/n
  long long iterations_used = 0;
};

// The engine's conventional squashing map. Each evaluation step of this
// variant is a single correctly rounded monotone operation, so iterating it
// preserves isotonicity exactly in floating point.
PhiSpec default_engine_phi();

// Builds f in the cone closure of `family` with 0 <= f <= 1+eps everywhere,
// f(a) < eps and f(b) = 1 exactly. Requires that b is not below a and that
// some generator increases from a to b (NotSeparable otherwise).
Separation separate_points(const FinitePreorder& order, const FunctionFamily& family,
                           const PhiSpec& phi, int a, int b, double eps,
                           long long max_iter = kDefaultIterationCap);

// Builds f in the cone closure with f < delta on a_set, f > 1 on b_set and
// f < 1+delta everywhere. Requires that no point of b_set sits below a point
// of a_set (PairwiseOrderViolation names the offending pair).
Separation separate_sets(const FinitePreorder& order, const FunctionFamily& family,
                         const PhiSpec& phi, const std::vector<int>& a_set,
                         const std::vector<int>& b_set, double delta,
                         long long max_iter = kDefaultIterationCap);

// Approximates the constant `level` from above: level <= result < level+eps
// everywhere. A positive level requires an empty common zero set.
Separation approximate_constant(const FinitePreorder& order, const FunctionFamily& family,
                                const PhiSpec& phi, double level, double eps,
                                long long max_iter = kDefaultIterationCap);

// Splits [m, m+1] into the n nested pairs described on LevelSets. The values
// of f must lie within [m, m+1] up to 1e-12.
LevelSets level_sets(const GridFunction& f, double m, int n);

// Full pipeline: approximates a non-negative isotone target vanishing on the
// family's common zero set, with certified sup_error < 3/n (measured on the
// normalized scale for non-constant targets).
ApproxResult approximate(const FinitePreorder& order, const FunctionFamily& family,
                         const PhiSpec& phi, const GridFunction& target, int n,
                         long long max_iter = kDefaultIterationCap);

}  // namespace monoapprox
