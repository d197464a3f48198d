#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monoapprox/order.hpp"

namespace monoapprox {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// DegreeMatched additionally requires deg(num) = deg(den) and keeps that
// property through every operation below; Free drops the requirement.
enum class RatMode { DegreeMatched, Free };

class NonNegRationalFn;

// A sparse multivariate polynomial whose stored coefficients are exact
// positive rationals (the zero polynomial stores nothing). Non-negativity is
// a construction invariant, which is what makes the degree laws exact: sums
// and products of such polynomials cannot cancel.
class NonNegPoly {
 public:
  using TermMap = std::map<std::vector<unsigned>, Rational>;

  static NonNegPoly zero(int dim);
  static NonNegPoly constant(int dim, const Rational& value);
  static NonNegPoly monomial(int dim, std::vector<unsigned> exponents,
                             const Rational& coefficient);
  // Validates lengths and signs, merges duplicate exponents, drops zeros.
  static NonNegPoly from_terms(
      int dim, const std::vector<std::pair<std::vector<unsigned>, Rational>>& terms);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;
  // Largest exponent sum; empty for the zero polynomial.
  std::optional<long long> total_degree() const;

  bool operator==(const NonNegPoly&) const = default;

 private:
  NonNegPoly(int dim, TermMap terms) : dim_(dim), terms_(std::move(terms)) {}

  int dim_ = 1;
  TermMap terms_;

  friend NonNegPoly poly_add(const NonNegPoly&, const NonNegPoly&);
  friend NonNegPoly poly_mul(const NonNegPoly&, const NonNegPoly&);
  friend NonNegPoly poly_scale(const Rational&, const NonNegPoly&);
  friend class NonNegRationalFn;
  friend NonNegRationalFn make_rational(NonNegPoly, NonNegPoly, RatMode);
};

NonNegPoly poly_add(const NonNegPoly& p, const NonNegPoly& q);
NonNegPoly poly_mul(const NonNegPoly& p, const NonNegPoly& q);
NonNegPoly poly_scale(const Rational& factor, const NonNegPoly& p);  // factor >= 0

// num/den with non-negative coefficients and a strictly positive constant
// term in the denominator, so the function is defined (and the denominator
// positive) on all of [0,inf)^d.
class NonNegRationalFn {
 public:
  const NonNegPoly& num() const { return num_; }
  const NonNegPoly& den() const { return den_; }
  RatMode mode() const { return mode_; }
  int dim() const { return den_.dim(); }

  bool operator==(const NonNegRationalFn&) const = default;

 private:
  NonNegRationalFn(NonNegPoly num, NonNegPoly den, RatMode mode)
      : num_(std::move(num)), den_(std::move(den)), mode_(mode) {}

  NonNegPoly num_;
  NonNegPoly den_;
  RatMode mode_;

  friend NonNegRationalFn make_rational(NonNegPoly, NonNegPoly, RatMode);
};

// Validates the invariants and canonicalizes by dividing both polynomials by
// their joint integer content (keeping the coefficient-sign certificate).
NonNegRationalFn make_rational(NonNegPoly num, NonNegPoly den, RatMode mode);

NonNegRationalFn rat_add(const NonNegRationalFn& f, const NonNegRationalFn& g);
NonNegRationalFn rat_mul(const NonNegRationalFn& f, const NonNegRationalFn& g);
NonNegRationalFn rat_scale(const Rational& factor, const NonNegRationalFn& f);  // factor > 0

// The squashing maps as exact rational-function transforms:
// chi: 2p^2 / (p^2 + q^2), gamma: 4p^2 / (p + q)^2.
NonNegRationalFn chi_rat(const NonNegRationalFn& f);
NonNegRationalFn gamma_rat(const NonNegRationalFn& f);

// (z_k + c) / (z_k + c + 1): isotone in coordinate k (1-based), constant in
// the others, with values in (0,1) on [0,inf)^d.
NonNegRationalFn coordinate_separator(int dim, int coordinate, const Rational& c);

double rat_eval(const NonNegRationalFn& f, const std::vector<double>& point);
GridFunction restrict_to_grid(const NonNegRationalFn& f,
                              const std::vector<std::vector<double>>& points);

struct ClosureSuiteResult {
  long long trials = 0;
  long long checks = 0;
  long long failures = 0;
  long long failed_trials = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

// Randomized exact-arithmetic audit: degree-matched random rational
// functions pushed through rat_add, rat_mul, chi, and gamma must keep every
// invariant, and random polynomials must obey the no-cancellation degree
// laws. Zero tolerance; any failure is reported with its description.
ClosureSuiteResult run_closure_suite(unsigned long long seed, int trials, int max_dim,
                                     int max_degree);

}  // namespace monoapprox
