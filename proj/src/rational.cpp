#include "monoapprox/rational.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "monoapprox/errors.hpp"

namespace monoapprox {

namespace {

void check_dim(int dim) {
  if (dim < 1) raise(ErrorKind::InvalidParameter, "dimension must be at least 1");
}

void check_same_dim(int a, int b) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

long long exponent_sum(const std::vector<unsigned>& exps) {
  long long s = 0;
  for (unsigned e : exps) s += e;
  return s;
}

}  // namespace

NonNegPoly NonNegPoly::zero(int dim) {
  check_dim(dim);
  return NonNegPoly(dim, {});
}

NonNegPoly NonNegPoly::constant(int dim, const Rational& value) {
  check_dim(dim);
  if (value < 0) raise(ErrorKind::InvalidParameter, "coefficient must be non-negative");
  TermMap terms;
  if (value != 0) terms.emplace(std::vector<unsigned>(static_cast<size_t>(dim), 0u), value);
  return NonNegPoly(dim, std::move(terms));
}

NonNegPoly NonNegPoly::monomial(int dim, std::vector<unsigned> exponents,
                                const Rational& coefficient) {
  return from_terms(dim, {{std::move(exponents), coefficient}});
}

NonNegPoly NonNegPoly::from_terms(
    int dim, const std::vector<std::pair<std::vector<unsigned>, Rational>>& terms) {
  check_dim(dim);
  TermMap merged;
  for (const auto& [exps, coef] : terms) {
    if (static_cast<int>(exps.size()) != dim) {
      raise(ErrorKind::DimensionMismatch,
            "exponent vector of length " + std::to_string(exps.size()) + " in dimension " +
                std::to_string(dim));
    }
    if (coef < 0) raise(ErrorKind::InvalidParameter, "coefficient must be non-negative");
    if (coef == 0) continue;
    merged[exps] += coef;
  }
  return NonNegPoly(dim, std::move(merged));
}

Rational NonNegPoly::constant_term() const {
  const std::vector<unsigned> zero_exp(static_cast<size_t>(dim_), 0u);
  auto it = terms_.find(zero_exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long long> NonNegPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  long long best = 0;
  for (const auto& [exps, coef] : terms_) best = std::max(best, exponent_sum(exps));
  return best;
}

NonNegPoly poly_add(const NonNegPoly& p, const NonNegPoly& q) {
  check_same_dim(p.dim_, q.dim_);
  NonNegPoly::TermMap out = p.terms_;
  for (const auto& [exps, coef] : q.terms_) out[exps] += coef;
  return NonNegPoly(p.dim_, std::move(out));
}

NonNegPoly poly_mul(const NonNegPoly& p, const NonNegPoly& q) {
  check_same_dim(p.dim_, q.dim_);
  NonNegPoly::TermMap out;
  for (const auto& [pe, pc] : p.terms_) {
    for (const auto& [qe, qc] : q.terms_) {
      std::vector<unsigned> exps(pe.size());
      for (size_t i = 0; i < pe.size(); ++i) exps[i] = pe[i] + qe[i];
      out[std::move(exps)] += pc * qc;
    }
  }
  return NonNegPoly(p.dim_, std::move(out));
}

NonNegPoly poly_scale(const Rational& factor, const NonNegPoly& p) {
  if (factor < 0) raise(ErrorKind::NegativeScale, "scale factor must be non-negative");
  if (factor == 0) return NonNegPoly(p.dim_, {});
  NonNegPoly::TermMap out = p.terms_;
  for (auto& [exps, coef] : out) coef *= factor;
  return NonNegPoly(p.dim_, std::move(out));
}

NonNegRationalFn make_rational(NonNegPoly num, NonNegPoly den, RatMode mode) {
  check_same_dim(num.dim_, den.dim_);
  if (den.is_zero()) {
    raise(ErrorKind::InvalidParameter, "denominator is identically zero");
  }
  if (!(den.constant_term() > 0)) {
    raise(ErrorKind::InvalidParameter,
          "denominator needs a strictly positive constant term");
  }
  if (mode == RatMode::DegreeMatched) {
    const auto dn = num.total_degree();
    const auto dd = den.total_degree();
    if (!dn.has_value()) {
      raise(ErrorKind::DegreeMismatch, "zero numerator cannot be degree-matched");
    }
    if (*dn != *dd) {
      raise(ErrorKind::DegreeMismatch, "deg(num) = " + std::to_string(*dn) +
                                           " but deg(den) = " + std::to_string(*dd));
    }
  }

  // Joint integer content: after dividing both polynomials by
  // gcd(numerators)/lcm(denominators), every coefficient is an integer and
  // their overall gcd is 1. Dividing num and den by the same positive factor
  // leaves the function itself unchanged.
  BigInt g = 0;
  BigInt l = 1;
  const auto absorb = [&](const NonNegPoly::TermMap& terms) {
    for (const auto& [exps, coef] : terms) {
      g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(coef));
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(coef));
    }
  };
  absorb(num.terms_);
  absorb(den.terms_);
  const Rational content(g, l);
  if (content != 1) {
    for (auto& [exps, coef] : num.terms_) coef /= content;
    for (auto& [exps, coef] : den.terms_) coef /= content;
  }
  return NonNegRationalFn(std::move(num), std::move(den), mode);
}

namespace {

void check_same_mode(const NonNegRationalFn& f, const NonNegRationalFn& g) {
  if (f.mode() != g.mode()) {
    raise(ErrorKind::ModeMismatch, "operands disagree on degree matching");
  }
}

}  // namespace

NonNegRationalFn rat_add(const NonNegRationalFn& f, const NonNegRationalFn& g) {
  check_same_dim(f.dim(), g.dim());
  check_same_mode(f, g);
  NonNegPoly num =
      poly_add(poly_mul(f.num(), g.den()), poly_mul(f.den(), g.num()));
  NonNegPoly den = poly_mul(f.den(), g.den());
  return make_rational(std::move(num), std::move(den), f.mode());
}

NonNegRationalFn rat_mul(const NonNegRationalFn& f, const NonNegRationalFn& g) {
  check_same_dim(f.dim(), g.dim());
  check_same_mode(f, g);
  return make_rational(poly_mul(f.num(), g.num()), poly_mul(f.den(), g.den()), f.mode());
}

NonNegRationalFn rat_scale(const Rational& factor, const NonNegRationalFn& f) {
  if (!(factor > 0)) raise(ErrorKind::NonPositiveScale, "scale factor must be positive");
  return make_rational(poly_scale(factor, f.num()), f.den(), f.mode());
}

NonNegRationalFn chi_rat(const NonNegRationalFn& f) {
  NonNegPoly p2 = poly_mul(f.num(), f.num());
  NonNegPoly q2 = poly_mul(f.den(), f.den());
  NonNegPoly den = poly_add(p2, q2);
  NonNegPoly num = poly_scale(2, p2);
  // A zero numerator is only possible in Free mode; chi fixes 0 so the
  // output degenerates to 0/(q^2), which stays valid there.
  return make_rational(std::move(num), std::move(den), f.mode());
}

NonNegRationalFn gamma_rat(const NonNegRationalFn& f) {
  NonNegPoly p2 = poly_mul(f.num(), f.num());
  NonNegPoly s = poly_add(f.num(), f.den());
  NonNegPoly den = poly_mul(s, s);
  return make_rational(poly_scale(4, p2), std::move(den), f.mode());
}

NonNegRationalFn coordinate_separator(int dim, int coordinate, const Rational& c) {
  check_dim(dim);
  if (coordinate < 1 || coordinate > dim) {
    raise(ErrorKind::InvalidCoordinate, "coordinate " + std::to_string(coordinate) +
                                            " outside 1.." + std::to_string(dim));
  }
  if (!(c > 0)) raise(ErrorKind::InvalidParameter, "offset must be positive");
  std::vector<unsigned> e(static_cast<size_t>(dim), 0u);
  e[static_cast<size_t>(coordinate - 1)] = 1u;
  NonNegPoly num = NonNegPoly::from_terms(dim, {{e, Rational(1)}});
  num = poly_add(num, NonNegPoly::constant(dim, c));
  NonNegPoly den = NonNegPoly::from_terms(dim, {{e, Rational(1)}});
  den = poly_add(den, NonNegPoly::constant(dim, c + 1));
  return make_rational(std::move(num), std::move(den), RatMode::DegreeMatched);
}

namespace {

double ipow(double x, unsigned e) {
  double out = 1.0;
  for (unsigned i = 0; i < e; ++i) out *= x;
  return out;
}

double poly_eval(const NonNegPoly& p, const std::vector<double>& point) {
  double sum = 0.0;
  for (const auto& [exps, coef] : p.terms()) {
    double term = coef.convert_to<double>();
    for (size_t i = 0; i < exps.size(); ++i) term *= ipow(point[i], exps[i]);
    sum += term;
  }
  return sum;
}

}  // namespace

double rat_eval(const NonNegRationalFn& f, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != f.dim()) {
    raise(ErrorKind::DimensionMismatch, "point of dimension " + std::to_string(point.size()) +
                                            " for a function of dimension " +
                                            std::to_string(f.dim()));
  }
  for (size_t i = 0; i < point.size(); ++i) {
    if (!(point[i] >= 0.0)) {
      raise(ErrorKind::NegativeCoordinate,
            "coordinate " + std::to_string(i + 1) + " is not a non-negative real");
    }
  }
  const double den = poly_eval(f.den(), point);
  if (!(den > 0.0)) {
    raise(ErrorKind::InternalInvariantBreach, "denominator evaluated non-positive");
  }
  return poly_eval(f.num(), point) / den;
}

GridFunction restrict_to_grid(const NonNegRationalFn& f,
                              const std::vector<std::vector<double>>& points) {
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(rat_eval(f, p));
  return GridFunction(std::move(values));
}

namespace {

Rational random_positive_rational(std::mt19937_64& rng) {
  const long long num = 1 + static_cast<long long>(rng() % 20);
  const long long den = 1 + static_cast<long long>(rng() % 10);
  return Rational(num, den);
}

// A random polynomial of exactly the requested total degree: one pinned top
// term plus a few lower ones.
NonNegPoly random_poly_of_degree(std::mt19937_64& rng, int dim, int degree) {
  std::vector<std::pair<std::vector<unsigned>, Rational>> terms;
  std::vector<unsigned> top(static_cast<size_t>(dim), 0u);
  for (int r = 0; r < degree; ++r) top[rng() % static_cast<unsigned>(dim)] += 1;
  terms.emplace_back(top, random_positive_rational(rng));
  const int extra = static_cast<int>(rng() % 4);
  for (int t = 0; t < extra; ++t) {
    std::vector<unsigned> e(static_cast<size_t>(dim), 0u);
    const int s = static_cast<int>(rng() % static_cast<unsigned>(degree + 1));
    for (int r = 0; r < s; ++r) e[rng() % static_cast<unsigned>(dim)] += 1;
    terms.emplace_back(std::move(e), random_positive_rational(rng));
  }
  return NonNegPoly::from_terms(dim, terms);
}

NonNegRationalFn random_matched_rational(std::mt19937_64& rng, int dim, int max_degree) {
  const int degree = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree));
  NonNegPoly num = random_poly_of_degree(rng, dim, degree);
  NonNegPoly den = poly_add(random_poly_of_degree(rng, dim, degree),
                            NonNegPoly::constant(dim, random_positive_rational(rng)));
  return make_rational(std::move(num), std::move(den), RatMode::DegreeMatched);
}

struct SuiteRecorder {
  ClosureSuiteResult* out;

  void expect(bool ok, const std::string& what) {
    out->checks += 1;
    if (!ok) {
      out->failures += 1;
      if (out->first_failure.empty()) out->first_failure = what;
    }
  }
};

void check_rational_invariants(SuiteRecorder& rec, const NonNegRationalFn& f,
                               const std::string& label) {
  rec.expect(!f.den().is_zero(), label + ": denominator vanished");
  rec.expect(f.den().constant_term() > 0, label + ": denominator lost its constant term");
  for (const NonNegPoly* poly : {&f.num(), &f.den()}) {
    for (const auto& [exps, coef] : poly->terms()) {
      rec.expect(coef > 0, label + ": stored coefficient not strictly positive");
      rec.expect(static_cast<int>(exps.size()) == f.dim(), label + ": exponent length drifted");
    }
  }
  const auto dn = f.num().total_degree();
  const auto dd = f.den().total_degree();
  rec.expect(dn.has_value() && dd.has_value() && *dn == *dd,
             label + ": degrees of numerator and denominator differ");
}

}  // namespace

ClosureSuiteResult run_closure_suite(unsigned long long seed, int trials, int max_dim,
                                     int max_degree) {
  if (trials < 1) raise(ErrorKind::InvalidParameter, "trial count must be positive");
  if (max_dim < 1) raise(ErrorKind::InvalidParameter, "dimension bound must be positive");
  if (max_degree < 1) raise(ErrorKind::InvalidParameter, "degree bound must be positive");

  ClosureSuiteResult result;
  result.trials = trials;
  SuiteRecorder rec{&result};
  std::mt19937_64 rng(seed);

  for (int t = 0; t < trials; ++t) {
    const long long failures_before = result.failures;
    const int dim = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_dim));
    const std::string tag = "trial " + std::to_string(t);

    const NonNegRationalFn f = random_matched_rational(rng, dim, max_degree);
    const NonNegRationalFn g = random_matched_rational(rng, dim, max_degree);
    check_rational_invariants(rec, rat_add(f, g), tag + " add");
    check_rational_invariants(rec, rat_mul(f, g), tag + " mul");
    check_rational_invariants(rec, chi_rat(f), tag + " chi");
    check_rational_invariants(rec, gamma_rat(f), tag + " gamma");

    // No-cancellation degree laws on raw polynomials.
    const int d1 = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree));
    const int d2 = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree));
    const NonNegPoly p = random_poly_of_degree(rng, dim, d1);
    const NonNegPoly q = random_poly_of_degree(rng, dim, d2);
    rec.expect(poly_add(p, q).total_degree() == std::max<long long>(d1, d2),
               tag + ": additive degree law failed");
    rec.expect(poly_mul(p, q).total_degree() == static_cast<long long>(d1) + d2,
               tag + ": multiplicative degree law failed");
    if (result.failures > failures_before) result.failed_trials += 1;
  }
  return result;
}

}  // namespace monoapprox
