#pragma once

#include <functional>
#include <vector>

namespace monoapprox {

// The rational Bernstein-type operator on [0, b]: a convex combination of
// samples of f taken at the nodes b*k/(n+1-k), with node arguments clamped
// to b (the operator never needs f beyond its interval).
struct BernsteinOperator {
  int n = 1;
  double b = 1.0;
  std::vector<double> samples;  // n+1 entries, non-negative, non-decreasing
};

// node[k] = b*k/(n+1-k) for k = 0..n; strictly increasing, node[n] = n*b.
std::vector<double> nodes(int n, double b);

// Samples f at the clamped nodes and validates the sample vector.
BernsteinOperator build_operator(const std::function<double(double)>& f, int n, double b);

// Builds directly from n+1 already-sampled values (same validation).
BernsteinOperator operator_from_samples(int n, double b, std::vector<double> samples);

// Binomial pmf weights w_k = C(n,k) b^(n-k) x^k / (b+x)^n, computed by the
// multiplicative recurrence (log-gamma fallback for very large n); never by
// forming raw binomial coefficients or b^n powers.
std::vector<double> weights(int n, double b, double x);

// Dot product of weights(n, b, x) with the samples. eval(op, 0) returns
// samples[0] exactly.
double eval(const BernsteinOperator& op, double x);

// Max of |eval(op, x) - f(x)| over a uniform grid of [0, b].
double sup_error(const BernsteinOperator& op, const std::function<double(double)>& f,
                 int grid_size);

// Min over consecutive uniform-grid points of eval(x_{i+1}) - eval(x_i);
// non-negative up to rounding when the samples are non-decreasing.
double monotonicity_gap(const BernsteinOperator& op, int grid_size);

// Deterministic node-shift bound 2b/n.
double shift_bound(int n, double b);

// Chebyshev tail bound 1/(4 n eta^2).
double tail_bound(long long n, double eta);

struct ErrorBoundInputs {
  double delta = 0.0;     // modulus-of-continuity argument, > 0
  double eps_half = 0.0;  // f's modulus at delta must stay below this, > 0
  double sup_f = 0.0;     // sup |f| on [0, b], >= 0
  int n = 1;
};

// eps_half + 2*sup_f*tail_bound(n, eta) with eta = min(1/4, delta/(64 b)).
// Raises BoundNotApplicable while 2b/n is still >= delta/2.
double total_error_bound(const ErrorBoundInputs& inputs, double b);

}  // namespace monoapprox
