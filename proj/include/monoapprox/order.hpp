#pragma once

#include <cstdint>
#include <vector>

#include "monoapprox/errors.hpp"

namespace monoapprox {

// A real-valued function on a finite indexed point set.
struct GridFunction {
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<double> v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
  double& operator[](int i) { return values[static_cast<size_t>(i)]; }

  bool operator==(const GridFunction&) const = default;
};

// Validating constructor: every entry must be a finite real number.
GridFunction grid_function(std::vector<double> values);

// A reflexive transitive relation on {0, ..., size-1}, stored densely.
class FinitePreorder {
 public:
  int size() const { return size_; }

  bool leq(int x, int y) const {
    return leq_[static_cast<size_t>(x) * static_cast<size_t>(size_) +
                static_cast<size_t>(y)] != 0;
  }

  // Accepts the relation only if it is reflexive and transitive; the error
  // carries the first violating element or triple.
  static FinitePreorder validate(const std::vector<std::vector<int>>& relation);

  // Smallest preorder containing the relation (Warshall closure).
  static FinitePreorder closure(const std::vector<std::vector<int>>& relation);

  static FinitePreorder discrete(int n);  // identity relation
  static FinitePreorder full(int n);      // everything related

  bool antisymmetric() const;

  bool operator==(const FinitePreorder&) const = default;

 private:
  FinitePreorder(int n, std::vector<std::uint8_t> leq)
      : size_(n), leq_(std::move(leq)) {}

  int size_ = 0;
  std::vector<std::uint8_t> leq_;

  friend FinitePreorder order_from_family(int size,
                                          const class FunctionFamily& family);
  friend FinitePreorder product_order_grid(
      const std::vector<std::vector<double>>& points);
};

// A finite set of non-negative generator functions over a common point set.
class FunctionFamily {
 public:
  const std::vector<GridFunction>& generators() const { return generators_; }
  int count() const { return static_cast<int>(generators_.size()); }
  int point_count() const { return generators_.front().size(); }
  const GridFunction& operator[](int i) const {
    return generators_[static_cast<size_t>(i)];
  }

 private:
  explicit FunctionFamily(std::vector<GridFunction> gens)
      : generators_(std::move(gens)) {}
  std::vector<GridFunction> generators_;

  friend FunctionFamily make_family(std::vector<GridFunction> generators);
};

// Validates: at least one generator, all of equal length, all entries finite.
FunctionFamily make_family(std::vector<GridFunction> generators);

// f(x) <= f(y) whenever x <= y.
bool is_isotone(const FinitePreorder& order, const GridFunction& f);

// The preorder induced by a family: x <= y iff g(x) <= g(y) for every g.
FinitePreorder order_from_family(int size, const FunctionFamily& family);

// Indices at which every generator vanishes exactly.
std::vector<int> common_zero_set(const FunctionFamily& family);

// Whether the induced preorder of the family coincides with `order`.
bool generates(const FinitePreorder& order, const FunctionFamily& family);

// Componentwise order on a list of coordinate tuples of equal dimension.
FinitePreorder product_order_grid(const std::vector<std::vector<double>>& points);

GridFunction add(const GridFunction& f, const GridFunction& g);
GridFunction mul(const GridFunction& f, const GridFunction& g);
GridFunction scale(double factor, const GridFunction& f);  // factor > 0
double sup_norm_distance(const GridFunction& f, const GridFunction& g);

}  // namespace monoapprox
