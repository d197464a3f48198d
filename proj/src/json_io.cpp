#include "monoapprox/json_io.hpp"

#include <string>
#include <vector>

#include "monoapprox/errors.hpp"

namespace monoapprox {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& detail) {
    raise(ErrorKind::Schema, detail);
}

const json& require_key(const json& j, const char* key, const char* where) {
    if (!j.is_object()) {
        schema(std::string(where) + " must be a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        schema(std::string(where) + " is missing the \"" + key + "\" key");
    }
    return *it;
}

long long require_integer(const json& j, const char* what) {
    if (!j.is_number_integer()) {
        schema(std::string(what) + " must be an integer");
    }
    return j.get<long long>();
}

double require_number(const json& j, const char* what) {
    if (!j.is_number()) {
        schema(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array()) {
        schema(std::string(what) + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& entry : j) {
        out.push_back(require_number(entry, what));
    }
    return out;
}

int relation_entry(const json& j) {
    if (j.is_boolean()) {
        return j.get<bool>() ? 1 : 0;
    }
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        if (v == 0 || v == 1) {
            return static_cast<int>(v);
        }
    }
    schema("relation entries must be booleans or 0/1");
}

}  // namespace

FinitePreorder space_from_json(const json& j) {
    if (!j.is_object()) {
        schema("space must be a JSON object");
    }
    if (j.contains("leq")) {
        long long size = require_integer(require_key(j, "size", "space"), "space size");
        if (size < 1) {
            schema("space size must be at least 1");
        }
        const json& rows = j.at("leq");
        if (!rows.is_array() || static_cast<long long>(rows.size()) != size) {
            schema("leq must be a size x size matrix");
        }
        std::vector<std::vector<int>> matrix;
        matrix.reserve(rows.size());
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<long long>(row.size()) != size) {
                schema("leq must be a size x size matrix");
            }
            std::vector<int> r;
            r.reserve(row.size());
            for (const auto& entry : row) {
                r.push_back(relation_entry(entry));
            }
            matrix.push_back(std::move(r));
        }
        return FinitePreorder::validate(matrix);
    }
    if (j.contains("points")) {
        const json& pts = j.at("points");
        if (!pts.is_array() || pts.empty()) {
            schema("points must be a non-empty array of coordinate arrays");
        }
        std::vector<std::vector<double>> points;
        points.reserve(pts.size());
        for (const auto& p : pts) {
            points.push_back(number_array(p, "point coordinates"));
        }
        std::string order = "product";
        if (j.contains("order")) {
            const json& o = j.at("order");
            if (!o.is_string()) {
                schema("order must be \"product\" or \"discrete\"");
            }
            order = o.get<std::string>();
        }
        if (order == "product") {
            return product_order_grid(points);
        }
        if (order == "discrete") {
            return FinitePreorder::discrete(static_cast<int>(points.size()));
        }
        schema("order must be \"product\" or \"discrete\"");
    }
    schema("space needs either a leq matrix or a points list");
}

FunctionFamily family_from_json(const json& j) {
    const json& gens = require_key(j, "generators", "family");
    if (!gens.is_array() || gens.empty()) {
        schema("generators must be a non-empty array of value arrays");
    }
    std::vector<GridFunction> functions;
    functions.reserve(gens.size());
    for (const auto& g : gens) {
        functions.push_back(grid_function(number_array(g, "generator values")));
    }
    return make_family(std::move(functions));
}

GridFunction target_from_json(const json& j) {
    if (j.is_array()) {
        return grid_function(number_array(j, "target values"));
    }
    return grid_function(number_array(require_key(j, "values", "target"), "target values"));
}

json trace_to_json(const ConeExpr& expr) {
    struct Emit {
        json operator()(const ConeExpr::Gen& g) const {
            return json{{"op", "gen"}, {"index", g.index}};
        }
        json operator()(const ConeExpr::Sum& s) const {
            json children = json::array();
            for (const auto& child : s.children) {
                children.push_back(trace_to_json(child));
            }
            return json{{"op", "sum"}, {"children", std::move(children)}};
        }
        json operator()(const ConeExpr::Scale& s) const {
            return json{{"op", "scale"},
                        {"num", s.num},
                        {"den", s.den},
                        {"child", trace_to_json(s.child.front())}};
        }
        json operator()(const ConeExpr::Phi& p) const {
            return json{{"op", "phi"},
                        {"iterations", p.iterations},
                        {"child", trace_to_json(p.child.front())}};
        }
    };
    return std::visit(Emit{}, expr.node());
}

ConeExpr trace_from_json(const json& j) {
    const json& op = require_key(j, "op", "trace node");
    if (!op.is_string()) {
        schema("trace op must be a string");
    }
    const std::string kind = op.get<std::string>();
    if (kind == "gen") {
        long long index = require_integer(require_key(j, "index", "gen node"), "gen index");
        return ConeExpr::gen(static_cast<int>(index));
    }
    if (kind == "sum") {
        const json& children = require_key(j, "children", "sum node");
        if (!children.is_array() || children.empty()) {
            schema("sum children must be a non-empty array");
        }
        std::vector<ConeExpr> parsed;
        parsed.reserve(children.size());
        for (const auto& child : children) {
            parsed.push_back(trace_from_json(child));
        }
        return ConeExpr::sum(std::move(parsed));
    }
    if (kind == "scale") {
        double num = require_number(require_key(j, "num", "scale node"), "scale num");
        double den = require_number(require_key(j, "den", "scale node"), "scale den");
        return ConeExpr::scale(num, den, trace_from_json(require_key(j, "child", "scale node")));
    }
    if (kind == "phi") {
        long long iterations =
            require_integer(require_key(j, "iterations", "phi node"), "phi iterations");
        return ConeExpr::apply_phi(iterations, trace_from_json(require_key(j, "child", "phi node")));
    }
    schema("trace op must be one of gen, sum, scale, phi");
}

json approx_result_to_json(const ApproxResult& result) {
    return json{{"approximant", result.approximant.values},
                {"bound", result.bound},
                {"iterations_used", result.iterations_used},
                {"sup_error", result.sup_error},
                {"trace", trace_to_json(result.trace)}};
}

namespace {

std::string rational_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

Rational rational_from_string(const std::string& text) {
    try {
        Rational value(text);
        return value;
    } catch (const std::exception&) {
        schema("coefficient \"" + text + "\" is not a rational number");
    }
}

}  // namespace

json poly_to_json(const NonNegPoly& poly) {
    json terms = json::array();
    for (const auto& [exps, coef] : poly.terms()) {
        terms.push_back(json{{"coef", rational_string(coef)}, {"exp", exps}});
    }
    return json{{"dim", poly.dim()}, {"terms", std::move(terms)}};
}

NonNegPoly poly_from_json(const json& j) {
    long long dim = require_integer(require_key(j, "dim", "polynomial"), "polynomial dim");
    if (dim < 1) {
        schema("polynomial dim must be at least 1");
    }
    const json& terms = require_key(j, "terms", "polynomial");
    if (!terms.is_array()) {
        schema("polynomial terms must be an array");
    }
    std::vector<std::pair<std::vector<unsigned>, Rational>> parsed;
    parsed.reserve(terms.size());
    for (const auto& term : terms) {
        const json& exp = require_key(term, "exp", "polynomial term");
        if (!exp.is_array() || static_cast<long long>(exp.size()) != dim) {
            schema("term exponents must be an array of length dim");
        }
        std::vector<unsigned> exps;
        exps.reserve(exp.size());
        for (const auto& e : exp) {
            long long v = require_integer(e, "term exponent");
            if (v < 0) {
                schema("term exponents must be non-negative");
            }
            exps.push_back(static_cast<unsigned>(v));
        }
        const json& coef = require_key(term, "coef", "polynomial term");
        if (!coef.is_string()) {
            schema("term coef must be a string like \"3/2\"");
        }
        Rational value = rational_from_string(coef.get<std::string>());
        if (value < 0) {
            schema("term coefficients must be non-negative");
        }
        parsed.emplace_back(std::move(exps), std::move(value));
    }
    return NonNegPoly::from_terms(static_cast<int>(dim), parsed);
}

json rational_to_json(const NonNegRationalFn& fn) {
    return json{{"den", poly_to_json(fn.den())},
                {"mode", fn.mode() == RatMode::DegreeMatched ? "matched" : "free"},
                {"num", poly_to_json(fn.num())}};
}

NonNegRationalFn rational_from_json(const json& j) {
    NonNegPoly num = poly_from_json(require_key(j, "num", "rational"));
    NonNegPoly den = poly_from_json(require_key(j, "den", "rational"));
    const json& mode = require_key(j, "mode", "rational");
    if (!mode.is_string()) {
        schema("rational mode must be \"matched\" or \"free\"");
    }
    const std::string m = mode.get<std::string>();
    if (m == "matched") {
        return make_rational(std::move(num), std::move(den), RatMode::DegreeMatched);
    }
    if (m == "free") {
        return make_rational(std::move(num), std::move(den), RatMode::Free);
    }
    schema("rational mode must be \"matched\" or \"free\"");
}

}  // namespace monoapprox
