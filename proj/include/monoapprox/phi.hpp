#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monoapprox/order.hpp"

namespace monoapprox {

// Hard cap on iterate searches; convergence near the fixed point at 1 has no
// uniform rate, so every search must carry a bound.
inline constexpr long long kDefaultIterationCap = 1'000'000;

// A squashing function: a non-decreasing continuous self-map of [0, inf)
// with phi(x) <= x, equality exactly at 0 and 1.  Iterates converge
// pointwise to the characteristic function of [1, inf).
class PhiSpec {
 public:
  struct Alpha {
    double a;  // in (0, 1]
  };
  struct Beta {};
  struct Gamma {};
  struct Chi {};
  struct PiecewiseLinear {
    // Breakpoints sorted by x; segment slopes and the clamped extension
    // slope beyond the last breakpoint are precomputed at construction.
    std::vector<std::pair<double, double>> points;
    std::vector<double> slopes;
    double extension_slope = 0.0;
  };

  using Node = std::variant<Alpha, Beta, Gamma, Chi, PiecewiseLinear>;

  static PhiSpec alpha(double a);
  static PhiSpec beta();
  static PhiSpec gamma();
  static PhiSpec chi();
  static PhiSpec piecewise_linear(std::vector<std::pair<double, double>> points);

  // Skips the construction checks so that verify_phi_properties can be used
  // to diagnose a candidate breakpoint list.
  static PhiSpec piecewise_linear_unchecked(
      std::vector<std::pair<double, double>> points);

  const Node& node() const { return node_; }
  std::string name() const;

 private:
  explicit PhiSpec(Node node) : node_(std::move(node)) {}
  Node node_;
};

double eval_phi(const PhiSpec& spec, double x);
double iterate_phi(const PhiSpec& spec, double x, long long n);

struct IterateUntilResult {
  long long steps = 0;
  GridFunction values;
};

// Applies phi entrywise until max(w) <= hi_cap and w[i] < low_cap for every
// i in low_indices, returning the least such iterate count.  Entries equal
// to 1 stay exactly 1; entries >= 1 never drop below 1.
IterateUntilResult iterate_vector_until(const PhiSpec& spec,
                                        const GridFunction& start,
                                        double hi_cap,
                                        const std::vector<int>& low_indices,
                                        double low_cap, long long max_iter);

struct PhiPropertyReport {
  struct BoundViolation {
    double x;
    double phi_x;
  };
  // Samples where phi(x) > x + 1e-12.
  std::vector<BoundViolation> bound_violations;
  // Consecutive sample pairs where phi decreases.
  std::vector<std::pair<double, double>> monotonicity_violations;
  // Smallest measured x - phi(x) among samples near the fixed points
  // (within 0.1 of 0 resp. 1, the fixed points themselves excluded).
  double min_gap_near_zero = 0.0;
  double min_gap_near_one = 0.0;

  bool ok() const {
    return bound_violations.empty() && monotonicity_violations.empty();
  }
};

// Report-only diagnostic over a sample grid; never throws on violations.
PhiPropertyReport verify_phi_properties(const PhiSpec& spec,
                                        const std::vector<double>& grid);

}  // namespace monoapprox
