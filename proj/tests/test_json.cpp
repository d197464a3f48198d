#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "monoapprox/engine.hpp"
#include "monoapprox/errors.hpp"
#include "monoapprox/json_io.hpp"
#include "testutil.hpp"

using namespace monoapprox;
using nlohmann::json;

namespace {

bool raises(ErrorKind kind, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("space files with explicit relations") {
    auto j = json::parse(R"({"size": 3, "leq": [[1,1,1],[0,1,1],[0,0,1]]})");
    auto order = space_from_json(j);
    CHECK(order.size() == 3);
    CHECK(order.leq(0, 2));
    CHECK_FALSE(order.leq(2, 0));
    // boolean entries work too
    auto jb = json::parse(R"({"size": 2, "leq": [[true,false],[false,true]]})");
    CHECK(space_from_json(jb) == FinitePreorder::discrete(2));
}

TEST_CASE("space files with point clouds") {
    auto j = json::parse(
        R"({"points": [[0,0],[1,0],[0,1],[1,1]], "order": "product"})");
    auto order = space_from_json(j);
    CHECK(order.leq(0, 3));
    CHECK_FALSE(order.leq(1, 2));
    auto jd = json::parse(R"({"points": [[0],[1]], "order": "discrete"})");
    CHECK(space_from_json(jd) == FinitePreorder::discrete(2));
    // product is the default order
    auto jp = json::parse(R"({"points": [[0],[1]]})");
    CHECK(space_from_json(jp).leq(0, 1));
}

TEST_CASE("space schema violations") {
    CHECK(raises(ErrorKind::Schema, [] { space_from_json(json::parse("[]")); }));
    CHECK(raises(ErrorKind::Schema, [] { space_from_json(json::parse("{}")); }));
    CHECK(raises(ErrorKind::Schema, [] {
        space_from_json(json::parse(R"({"size": 2, "leq": [[1,0]]})"));
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        space_from_json(json::parse(R"({"size": 2, "leq": [[1,0],[0,2]]})"));
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        space_from_json(json::parse(R"({"points": [[0]], "order": "chain"})"));
    }));
    // semantic failures keep their own kinds
    CHECK(raises(ErrorKind::NotReflexive, [] {
        space_from_json(json::parse(R"({"size": 2, "leq": [[0,1],[0,1]]})"));
    }));
    CHECK(raises(ErrorKind::NotTransitive, [] {
        space_from_json(
            json::parse(R"({"size": 3, "leq": [[1,1,0],[0,1,1],[0,0,1]]})"));
    }));
}

TEST_CASE("family and target files") {
    auto fam = family_from_json(
        json::parse(R"({"generators": [[0, 1, 2], [1, 0.5, 0.25]]})"));
    CHECK(fam.count() == 2);
    CHECK(fam[1][2] == 0.25);
    CHECK(raises(ErrorKind::Schema,
                 [] { family_from_json(json::parse(R"({"generators": []})")); }));
    CHECK(raises(ErrorKind::Schema,
                 [] { family_from_json(json::parse(R"({"gens": [[1]]})")); }));

    auto t1 = target_from_json(json::parse("[0, 0.5, 1]"));
    CHECK(t1.size() == 3);
    auto t2 = target_from_json(json::parse(R"({"values": [0, 0.5, 1]})"));
    CHECK(t2.values == t1.values);
    CHECK(raises(ErrorKind::Schema,
                 [] { target_from_json(json::parse(R"({"value": 3})")); }));
}

TEST_CASE("trace nodes round trip") {
    auto expr = ConeExpr::apply_phi(
        7, ConeExpr::scale(1.0, 3.0,
                           ConeExpr::sum({ConeExpr::gen(0),
                                          ConeExpr::apply_phi(2, ConeExpr::gen(1))})));
    auto j = trace_to_json(expr);
    CHECK(j.at("op") == "phi");
    CHECK(j.at("iterations") == 7);
    auto back = trace_from_json(j);
    CHECK(back == expr);
    // serialized twice gives identical bytes
    CHECK(trace_to_json(back).dump() == j.dump());
}

TEST_CASE("trace schema violations") {
    CHECK(raises(ErrorKind::Schema,
                 [] { trace_from_json(json::parse(R"({"op": "neg"})")); }));
    CHECK(raises(ErrorKind::Schema,
                 [] { trace_from_json(json::parse(R"({"index": 0})")); }));
    CHECK(raises(ErrorKind::Schema,
                 [] { trace_from_json(json::parse(R"({"op": "sum", "children": []})")); }));
    CHECK(raises(ErrorKind::Schema, [] {
        trace_from_json(json::parse(R"({"op": "scale", "num": 1, "child": {"op":"gen","index":0}})"));
    }));
    // structurally fine but semantically invalid parameters keep their kinds
    CHECK(raises(ErrorKind::InvalidParameter,
                 [] { trace_from_json(json::parse(R"({"op": "gen", "index": -1})")); }));
    CHECK(raises(ErrorKind::NonPositiveScale, [] {
        trace_from_json(json::parse(
            R"({"op": "scale", "num": 0, "den": 1, "child": {"op":"gen","index":0}})"));
    }));
}

TEST_CASE("approximation results serialize with their traces") {
    std::mt19937_64 rng(33);
    auto c = testutil::random_engine_case(rng);
    auto phi = default_engine_phi();
    auto res = approximate(c.order, c.family, phi, c.target, 4);
    auto j = approx_result_to_json(res);
    CHECK(j.at("bound") == 0.75);
    CHECK(j.at("sup_error").get<double>() == res.sup_error);
    REQUIRE(j.at("approximant").is_array());
    CHECK(static_cast<int>(j.at("approximant").size()) == res.approximant.size());
    // values survive the JSON round trip bit for bit
    for (int x = 0; x < res.approximant.size(); ++x) {
        CHECK(j.at("approximant")[static_cast<size_t>(x)].get<double>() ==
              res.approximant[x]);
    }
    auto back = trace_from_json(j.at("trace"));
    CHECK(back == res.trace);
    auto replina = back.evaluate(c.family, phi);
    CHECK(replina.values == res.approximant.values);
}

TEST_CASE("polynomials round trip with exact coefficients") {
    auto p = NonNegPoly::from_terms(
        2, {{{2, 0}, Rational(3, 2)}, {{1, 1}, 7}, {{0, 0}, Rational(1, 3)}});
    auto j = poly_to_json(p);
    CHECK(j.at("dim") == 2);
    auto back = poly_from_json(j);
    CHECK(back == p);
    CHECK(poly_to_json(back).dump() == j.dump());
    // huge coefficients survive exactly
    Rational big = Rational(BigInt("123456789012345678901234567890"),
                            BigInt("9876543210987654321"));
    auto q = NonNegPoly::from_terms(1, {{{4}, big}});
    CHECK(poly_from_json(poly_to_json(q)) == q);
}

TEST_CASE("polynomial schema violations") {
    CHECK(raises(ErrorKind::Schema, [] {
        poly_from_json(json::parse(R"({"dim": 0, "terms": []})"));
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        poly_from_json(json::parse(R"({"dim": 2, "terms": [{"exp": [1], "coef": "1/1"}]})"));
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        poly_from_json(json::parse(R"({"dim": 1, "terms": [{"exp": [1], "coef": "-1/2"}]})"));
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        poly_from_json(json::parse(R"({"dim": 1, "terms": [{"exp": [1], "coef": "a/b"}]})"));
    }));
}

TEST_CASE("rational functions round trip") {
    auto f = make_rational(
        NonNegPoly::from_terms(1, {{{0}, 1}, {{1}, 1}}),
        NonNegPoly::from_terms(1, {{{0}, 2}, {{1}, 1}}), RatMode::DegreeMatched);
    auto j = rational_to_json(f);
    CHECK(j.at("mode") == "matched");
    auto back = rational_from_json(j);
    CHECK(back == f);
    CHECK(rational_to_json(back).dump() == j.dump());

    auto free_fn = chi_rat(f);
    auto jf = rational_to_json(chi_rat(f));
    CHECK(rational_from_json(jf) == free_fn);

    CHECK(raises(ErrorKind::Schema, [&] {
        auto bad = j;
        bad["mode"] = "loose";
        rational_from_json(bad);
    }));
}
