#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "monoapprox/order.hpp"
#include "monoapprox/phi.hpp"

namespace monoapprox {

// A construction trace certifying that a function belongs to the closed cone
// spanned by the generators: leaves name generators, inner nodes are sums,
// positive scalings, and iterated applications of phi.
//
// Scale factors are kept as num/den pairs so that replaying a trace repeats
// the producing arithmetic exactly (the engine scales by division where the
// result must be an exact fixed point of phi).
class ConeExpr {
 public:
  struct Gen {
    int index;
    bool operator==(const Gen&) const = default;
  };
  struct Sum {
    std::vector<ConeExpr> children;  // at least one, evaluated left to right
    bool operator==(const Sum&) const = default;
  };
  struct Scale {
    double num;  // factor num/den > 0
    double den;
    std::vector<ConeExpr> child;  // exactly one
    bool operator==(const Scale&) const = default;
  };
  struct Phi {
    long long iterations;  // >= 1
    std::vector<ConeExpr> child;  // exactly one
    bool operator==(const Phi&) const = default;
  };

  using Node = std::variant<Gen, Sum, Scale, Phi>;

  static ConeExpr gen(int index);
  static ConeExpr sum(std::vector<ConeExpr> children);
  // Positive scaling by num/den; nodes with num == den == 1 are elided.
  static ConeExpr scale(double num, double den, ConeExpr child);
  // n applications of phi; n == 0 returns the child unchanged.
  static ConeExpr apply_phi(long long iterations, ConeExpr child);

  const Node& node() const { return node_; }

  // Replays the construction against the family (phi applications use
  // `spec`), yielding the certified function.
  GridFunction evaluate(const FunctionFamily& family, const PhiSpec& spec) const;

  long long node_count() const;

  bool operator==(const ConeExpr&) const = default;

 private:
  explicit ConeExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

}  // namespace monoapprox
