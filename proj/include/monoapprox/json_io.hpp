#pragma once

#include "json.hpp"

#include "monoapprox/engine.hpp"
#include "monoapprox/order.hpp"
#include "monoapprox/rational.hpp"
#include "monoapprox/trace.hpp"

namespace monoapprox {

// JSON readers and writers for the on-disk formats used by the command line
// tool and the test suite. Structural problems in the input (wrong types,
// missing keys, ragged matrices) raise ErrorKind::Schema; semantic problems
// (a relation that is not transitive, a decreasing target) surface under
// their own error kinds from the constructors they feed.

// Space files: either an explicit relation
//   {"size": 3, "leq": [[1,1,0],[0,1,0],[0,0,1]]}
// with 0/1 or boolean entries, or a point cloud with a named order
//   {"points": [[0,0],[1,0],[1,2]], "order": "product"}
// where "order" is "product" (componentwise) or "discrete" (equality only).
FinitePreorder space_from_json(const nlohmann::json& j);

// Family files: {"generators": [[g0(x0),...,g0(xN-1)], ...]}.
FunctionFamily family_from_json(const nlohmann::json& j);

// Target files: {"values": [f(x0),...,f(xN-1)]} or a bare array.
GridFunction target_from_json(const nlohmann::json& j);

// Cone expression traces. Nodes are tagged by "op":
//   {"op":"gen",   "index": i}
//   {"op":"sum",   "children": [...]}
//   {"op":"scale", "num": a, "den": b, "child": {...}}
//   {"op":"phi",   "iterations": n, "child": {...}}
nlohmann::json trace_to_json(const ConeExpr& expr);
ConeExpr trace_from_json(const nlohmann::json& j);

// Approximation results:
//   {"approximant":[...], "bound":..., "iterations_used":...,
//    "sup_error":..., "trace":{...}}
nlohmann::json approx_result_to_json(const ApproxResult& result);

// Polynomials with non-negative coefficients:
//   {"dim": 2, "terms": [{"exp":[1,0], "coef":"3/2"}, ...]}
// Coefficients are exact rationals rendered as "numerator/denominator".
nlohmann::json poly_to_json(const NonNegPoly& poly);
NonNegPoly poly_from_json(const nlohmann::json& j);

// Rational functions: {"num": <poly>, "den": <poly>, "mode": "matched"|"free"}.
nlohmann::json rational_to_json(const NonNegRationalFn& fn);
NonNegRationalFn rational_from_json(const nlohmann::json& j);

}  // namespace monoapprox
