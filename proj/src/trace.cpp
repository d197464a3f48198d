#include "monoapprox/trace.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "monoapprox/errors.hpp"

namespace monoapprox {

ConeExpr ConeExpr::gen(int index) {
  if (index < 0) raise(ErrorKind::InvalidParameter, "generator index must be non-negative");
  return ConeExpr(Gen{index});
}

ConeExpr ConeExpr::sum(std::vector<ConeExpr> children) {
  if (children.empty()) raise(ErrorKind::InvalidParameter, "sum needs at least one term");
  if (children.size() == 1) return std::move(children.front());
  return ConeExpr(Sum{std::move(children)});
}

ConeExpr ConeExpr::scale(double num, double den, ConeExpr child) {
  if (!std::isfinite(num) || !std::isfinite(den) || num <= 0.0 || den <= 0.0) {
    raise(ErrorKind::NonPositiveScale, "scale factor must be a positive finite ratio");
  }
  if (num == 1.0 && den == 1.0) return child;
  return ConeExpr(Scale{num, den, {std::move(child)}});
}

ConeExpr ConeExpr::apply_phi(long long iterations, ConeExpr child) {
  if (iterations < 0) raise(ErrorKind::InvalidParameter, "iteration count must be non-negative");
  if (iterations == 0) return child;
  // Merge nested applications so traces stay shallow.
  if (const auto* inner = std::get_if<Phi>(&child.node_)) {
    long long total = iterations + inner->iterations;
    return ConeExpr(Phi{total, std::move(inner->child)});
  }
  return ConeExpr(Phi{iterations, {std::move(child)}});
}

namespace {

GridFunction evaluate_node(const ConeExpr& expr, const FunctionFamily& family,
                           const PhiSpec& spec) {
  const auto& node = expr.node();
  if (const auto* g = std::get_if<ConeExpr::Gen>(&node)) {
    if (g->index >= family.count()) {
      raise(ErrorKind::InvalidParameter,
            "trace references generator " + std::to_string(g->index) + " but family has " +
                std::to_string(family.count()));
    }
    return family[g->index];
  }
  if (const auto* s = std::get_if<ConeExpr::Sum>(&node)) {
    GridFunction acc = evaluate_node(s->children.front(), family, spec);
    for (std::size_t i = 1; i < s->children.size(); ++i) {
      GridFunction term = evaluate_node(s->children[i], family, spec);
      for (int k = 0; k < acc.size(); ++k) acc[k] += term[k];
    }
    return acc;
  }
  if (const auto* s = std::get_if<ConeExpr::Scale>(&node)) {
    GridFunction v = evaluate_node(s->child.front(), family, spec);
    // Mirror the producing arithmetic: pure divisions stay divisions so that
    // values meant to be exact fixed points of phi replay to the same bits.
    if (s->den == 1.0) {
      for (int k = 0; k < v.size(); ++k) v[k] = v[k] * s->num;
    } else if (s->num == 1.0) {
      for (int k = 0; k < v.size(); ++k) v[k] = v[k] / s->den;
    } else {
      for (int k = 0; k < v.size(); ++k) v[k] = (v[k] * s->num) / s->den;
    }
    return v;
  }
  const auto& p = std::get<ConeExpr::Phi>(node);
  GridFunction v = evaluate_node(p.child.front(), family, spec);
  for (long long n = 0; n < p.iterations; ++n) {
    for (int k = 0; k < v.size(); ++k) v[k] = eval_phi(spec, v[k]);
  }
  return v;
}

long long count_nodes(const ConeExpr& expr) {
  const auto& node = expr.node();
  if (std::holds_alternative<ConeExpr::Gen>(node)) return 1;
  if (const auto* s = std::get_if<ConeExpr::Sum>(&node)) {
    long long total = 1;
    for (const auto& c : s->children) total += count_nodes(c);
    return total;
  }
  if (const auto* s = std::get_if<ConeExpr::Scale>(&node)) {
    return 1 + count_nodes(s->child.front());
  }
  return 1 + count_nodes(std::get<ConeExpr::Phi>(node).child.front());
}

}  // namespace

GridFunction ConeExpr::evaluate(const FunctionFamily& family, const PhiSpec& spec) const {
  return evaluate_node(*this, family, spec);
}

long long ConeExpr::node_count() const { return count_nodes(*this); }

}  // namespace monoapprox
