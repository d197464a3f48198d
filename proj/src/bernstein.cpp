#include "monoapprox/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "monoapprox/errors.hpp"

namespace monoapprox {

namespace {

void check_n_b(int n, double b) {
  if (n < 1) raise(ErrorKind::InvalidParameter, "n must be at least 1");
  if (!(b > 0.0) || !std::isfinite(b)) {
    raise(ErrorKind::InvalidParameter, "b must be a positive real");
  }
}

void check_x(double x, double b) {
  if (!(x >= 0.0) || !(x <= b)) {
    raise(ErrorKind::XOutOfRange,
          "x = " + std::to_string(x) + " outside [0, " + std::to_string(b) + "]");
  }
}

void validate_samples(const std::vector<double>& samples) {
  for (size_t k = 0; k < samples.size(); ++k) {
    if (!(samples[k] >= 0.0)) {
      raise(ErrorKind::NegativeSample,
            "sample " + std::to_string(k) + " is not a non-negative real");
    }
    if (k > 0 && samples[k] < samples[k - 1]) {
      raise(ErrorKind::NotMonotoneSamples,
            "samples decrease between " + std::to_string(k - 1) + " and " + std::to_string(k));
    }
  }
}

// Beyond this the plain recurrence is replaced by log-gamma evaluation.
constexpr int kRecurrenceLimit = 1000;

}  // namespace

std::vector<double> nodes(int n, double b) {
  check_n_b(n, b);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    out[static_cast<size_t>(k)] =
        b * static_cast<double>(k) / static_cast<double>(n + 1 - k);
  }
  return out;
}

BernsteinOperator build_operator(const std::function<double(double)>& f, int n, double b) {
  std::vector<double> node = nodes(n, b);
  std::vector<double> samples(node.size());
  for (size_t k = 0; k < node.size(); ++k) samples[k] = f(std::min(node[k], b));
  validate_samples(samples);
  return BernsteinOperator{n, b, std::move(samples)};
}

BernsteinOperator operator_from_samples(int n, double b, std::vector<double> samples) {
  check_n_b(n, b);
  if (samples.size() != static_cast<size_t>(n) + 1) {
    raise(ErrorKind::SizeMismatch, "need " + std::to_string(n + 1) + " samples, got " +
                                       std::to_string(samples.size()));
  }
  validate_samples(samples);
  return BernsteinOperator{n, b, std::move(samples)};
}

std::vector<double> weights(int n, double b, double x) {
  check_n_b(n, b);
  check_x(x, b);
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);

  if (n <= kRecurrenceLimit) {
    // w_0 = (b/(b+x))^n stays normal because p = x/(b+x) <= 1/2 on [0,b];
    // then climb the pmf. The odds ratio p/(1-p) collapses to x/b exactly.
    const double ratio = x / b;
    w[0] = std::pow(b / (b + x), n);
    for (int k = 0; k < n; ++k) {
      w[static_cast<size_t>(k) + 1] = w[static_cast<size_t>(k)] * ratio *
                                      (static_cast<double>(n - k) / static_cast<double>(k + 1));
    }
    return w;
  }

  if (x == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double log_p = std::log(x / (b + x));
  const double log_q = std::log(b / (b + x));
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  for (int k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_w = lg_n1 - std::lgamma(kd + 1.0) -
                         std::lgamma(static_cast<double>(n - k) + 1.0) + kd * log_p +
                         static_cast<double>(n - k) * log_q;
    w[static_cast<size_t>(k)] = std::exp(log_w);
  }
  return w;
}

double eval(const BernsteinOperator& op, double x) {
  const std::vector<double> w = weights(op.n, op.b, x);
  double sum = 0.0;
  for (size_t k = 0; k < w.size(); ++k) sum += w[k] * op.samples[k];
  return sum;
}

namespace {

std::vector<double> uniform_grid(double b, int grid_size) {
  if (grid_size < 2) raise(ErrorKind::InvalidParameter, "grid needs at least 2 points");
  std::vector<double> xs(static_cast<size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    xs[static_cast<size_t>(i)] =
        b * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  xs.back() = b;
  return xs;
}

}  // namespace

double sup_error(const BernsteinOperator& op, const std::function<double(double)>& f,
                 int grid_size) {
  double worst = 0.0;
  for (double x : uniform_grid(op.b, grid_size)) {
    worst = std::max(worst, std::abs(eval(op, x) - f(x)));
  }
  return worst;
}

double monotonicity_gap(const BernsteinOperator& op, int grid_size) {
  const std::vector<double> xs = uniform_grid(op.b, grid_size);
  double gap = std::numeric_limits<double>::infinity();
  double prev = eval(op, xs[0]);
  for (size_t i = 1; i < xs.size(); ++i) {
    const double cur = eval(op, xs[i]);
    gap = std::min(gap, cur - prev);
    prev = cur;
  }
  return gap;
}

double shift_bound(int n, double b) {
  check_n_b(n, b);
  return 2.0 * b / static_cast<double>(n);
}

double tail_bound(long long n, double eta) {
  if (n < 1) raise(ErrorKind::InvalidParameter, "n must be at least 1");
  if (!(eta > 0.0)) raise(ErrorKind::InvalidParameter, "eta must be positive");
  return 1.0 / (4.0 * static_cast<double>(n) * eta * eta);
}

double total_error_bound(const ErrorBoundInputs& inputs, double b) {
  check_n_b(inputs.n, b);
  if (!(inputs.delta > 0.0)) raise(ErrorKind::InvalidParameter, "delta must be positive");
  if (!(inputs.eps_half > 0.0)) raise(ErrorKind::InvalidParameter, "eps_half must be positive");
  if (!(inputs.sup_f >= 0.0)) raise(ErrorKind::InvalidParameter, "sup_f must be non-negative");

  if (!(shift_bound(inputs.n, b) < inputs.delta / 2.0)) {
    raise(ErrorKind::BoundNotApplicable,
          "2b/n = " + std::to_string(shift_bound(inputs.n, b)) + " has not dropped below delta/2 = " +
              std::to_string(inputs.delta / 2.0));
  }
  const double cap = 32.0 * b;
  const double eta = std::min(0.25, inputs.delta / (2.0 * cap));
  return inputs.eps_half + 2.0 * inputs.sup_f * tail_bound(inputs.n, eta);
}

}  // namespace monoapprox
