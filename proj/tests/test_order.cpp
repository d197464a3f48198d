#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "monoapprox/errors.hpp"
#include "monoapprox/order.hpp"
#include "testutil.hpp"

using namespace monoapprox;

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

TEST_CASE("grid_function rejects non finite values") {
    CHECK(raises(ErrorKind::Schema, [] {
        grid_function({0.0, std::numeric_limits<double>::infinity()});
    }));
    CHECK(raises(ErrorKind::Schema, [] {
        grid_function({std::numeric_limits<double>::quiet_NaN()});
    }));
    GridFunction f = grid_function({1.0, 2.0});
    CHECK(f.size() == 2);
    CHECK(f[1] == 2.0);
}

TEST_CASE("validate accepts preorders and names the broken axiom") {
    auto chain = FinitePreorder::validate({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}});
    CHECK(chain.size() == 3);
    CHECK(chain.leq(0, 2));
    CHECK_FALSE(chain.leq(2, 0));
    CHECK(chain.antisymmetric());

    CHECK(raises(ErrorKind::NotReflexive,
                 [] { FinitePreorder::validate({{0, 1}, {0, 1}}); }));
    CHECK(raises(ErrorKind::NotTransitive, [] {
        FinitePreorder::validate({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    }));
    CHECK(raises(ErrorKind::Schema,
                 [] { FinitePreorder::validate({{1, 1}, {0}}); }));
    CHECK(raises(ErrorKind::Schema, [] { FinitePreorder::validate({}); }));
}

TEST_CASE("closure reaches along composed arrows") {
    auto order = FinitePreorder::closure({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    CHECK(order.leq(0, 2));
    CHECK_FALSE(order.leq(2, 0));
    // closure of an already transitive relation changes nothing
    auto again = FinitePreorder::closure({{1, 1, 1}, {0, 1, 1}, {0, 0, 1}});
    CHECK(order == again);
}

TEST_CASE("discrete and full orders") {
    auto d = FinitePreorder::discrete(3);
    CHECK(d.antisymmetric());
    CHECK_FALSE(d.leq(0, 1));
    auto f = FinitePreorder::full(2);
    CHECK(f.leq(0, 1));
    CHECK(f.leq(1, 0));
    CHECK_FALSE(f.antisymmetric());
    CHECK(raises(ErrorKind::InvalidParameter, [] { FinitePreorder::discrete(0); }));
}

TEST_CASE("is_isotone checks every related pair exactly") {
    auto chain = FinitePreorder::validate({{1, 1}, {0, 1}});
    CHECK(is_isotone(chain, grid_function({1.0, 1.0})));
    CHECK(is_isotone(chain, grid_function({0.0, 5.0})));
    // any drop below an upper point fails, no tolerance
    const double eps = std::nextafter(1.0, 2.0) - 1.0;
    CHECK_FALSE(is_isotone(chain, grid_function({1.0 + eps, 1.0})));
}

TEST_CASE("order_from_family matches the pointwise definition") {
    std::mt19937_64 rng(811);
    for (int trial = 0; trial < 50; ++trial) {
        const int size = 2 + static_cast<int>(rng() % 14);
        const int gens = 1 + static_cast<int>(rng() % 4);
        std::vector<GridFunction> fs;
        for (int g = 0; g < gens; ++g) {
            std::vector<double> v(static_cast<size_t>(size));
            for (double& x : v) x = static_cast<double>(rng() % 9) / 4.0;
            fs.push_back(grid_function(std::move(v)));
        }
        auto family = make_family(std::move(fs));
        auto order = order_from_family(size, family);
        for (int x = 0; x < size; ++x) {
            for (int y = 0; y < size; ++y) {
                bool expected = true;
                for (int g = 0; g < gens; ++g) {
                    if (!(family[g][x] <= family[g][y])) expected = false;
                }
                CHECK(order.leq(x, y) == expected);
            }
        }
        CHECK(generates(order, family));
        // every generator must be isotone for the order it induces
        for (int g = 0; g < gens; ++g) {
            CHECK(is_isotone(order, family[g]));
        }
    }
}

TEST_CASE("common_zero_set keeps only exact zeros") {
    auto family = make_family({grid_function({0.0, 1e-300, 0.0, 2.0}),
                               grid_function({0.0, 0.0, 1.0, 0.0})});
    auto ns = common_zero_set(family);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == 0);
}

TEST_CASE("generates distinguishes the induced preorder") {
    auto family = make_family({grid_function({1.0, 1.0})});
    // the one constant generator relates both points in both directions
    CHECK(generates(FinitePreorder::full(2), family));
    CHECK_FALSE(generates(FinitePreorder::discrete(2), family));
}

TEST_CASE("product_order_grid orders points componentwise") {
    auto order = product_order_grid({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    CHECK(order.leq(0, 3));
    CHECK(order.leq(1, 3));
    CHECK_FALSE(order.leq(1, 2));
    CHECK_FALSE(order.leq(2, 1));
    CHECK(order.antisymmetric());
    CHECK(raises(ErrorKind::DimensionMismatch,
                 [] { product_order_grid({{0.0}, {0.0, 1.0}}); }));
    // duplicate points are order equivalent, so antisymmetry fails
    CHECK_FALSE(product_order_grid({{2.0}, {2.0}}).antisymmetric());
}

TEST_CASE("pointwise algebra and norms") {
    auto f = grid_function({1.0, 2.0});
    auto g = grid_function({0.5, 3.0});
    CHECK(add(f, g).values == std::vector<double>{1.5, 5.0});
    CHECK(mul(f, g).values == std::vector<double>{0.5, 6.0});
    CHECK(scale(2.0, f).values == std::vector<double>{2.0, 4.0});
    CHECK(sup_norm_distance(f, g) == 1.0);
    CHECK(raises(ErrorKind::NonPositiveScale, [&] { scale(0.0, f); }));
    CHECK(raises(ErrorKind::SizeMismatch,
                 [&] { add(f, grid_function({1.0, 2.0, 3.0})); }));
}

TEST_CASE("products of isotone non negative functions stay isotone") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        auto triple = testutil::random_isotone_pair(rng);
        REQUIRE(is_isotone(triple.order, triple.f));
        REQUIRE(is_isotone(triple.order, triple.g));
        CHECK(is_isotone(triple.order, mul(triple.f, triple.g)));
        CHECK(is_isotone(triple.order, add(triple.f, triple.g)));
    }
}
