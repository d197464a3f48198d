#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "monoapprox/bernstein.hpp"
#include "monoapprox/errors.hpp"

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

TEST_CASE("nodes climb the compressed grid") {
    auto xs = nodes(4, 1.0);
    REQUIRE(xs.size() == 5);
    CHECK(xs[0] == 0.0);
    CHECK(xs[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(xs[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(xs[3] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(xs[4] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(raises(ErrorKind::InvalidParameter, [] { nodes(0, 1.0); }));
    CHECK(raises(ErrorKind::InvalidParameter, [] { nodes(4, 0.0); }));
}

TEST_CASE("frozen evaluations for the identity") {
    // oracle values from an independent implementation, n=4, b=1
    auto op = build_operator([](double t) { return t; }, 4, 1.0);
    const std::pair<double, double> table[] = {
        {0.0, 0.0},
        {0.25, 0.23199999999999998},
        {0.5, 0.4074074074074074},
        {0.75, 0.5335276967930029},
        {1.0, 0.625},
    };
    for (const auto& [x, expect] : table) {
        CHECK(eval(op, x) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("frozen evaluations for the square root") {
    // oracle values from an independent implementation, n=6, b=2
    auto op = build_operator([](double t) { return std::sqrt(t); }, 6, 2.0);
    const std::pair<double, double> table[] = {
        {0.0, 0.0},
        {0.5, 0.5711539517920539},
        {1.0, 0.8569417654324802},
        {1.7, 1.0739110189626129},
        {2.0, 1.1326266450027556},
    };
    for (const auto& [x, expect] : table) {
        CHECK(eval(op, x) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("the first operator maps the identity to x over one plus x") {
    auto op = build_operator([](double t) { return t; }, 1, 1.0);
    CHECK(eval(op, 1.0) == 0.5);  // largest gap, exactly one half at the endpoint
    CHECK(sup_error(op, [](double t) { return t; }, 1000) == 0.5);
}

TEST_CASE("weights are a probability vector") {
    for (int n : {1, 7, 40, 512}) {
        for (double x : {0.0, 0.3, 0.75, 1.0}) {
            auto w = weights(n, 1.0, x);
            REQUIRE(static_cast<int>(w.size()) == n + 1);
            double sum = 0.0;
            for (double v : w) {
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(std::fabs(sum - 1.0) <= 1e-12);
        }
    }
    CHECK(raises(ErrorKind::XOutOfRange, [] { weights(4, 1.0, -0.5); }));
}

TEST_CASE("log space weights agree with the recurrence") {
    // same n evaluated both ways must agree closely; 1200 forces the
    // lgamma path while the recurrence is still exact enough to compare
    const int n = 1200;
    const double b = 1.0;
    // keep x small so the reference recurrence itself stays in normal range
    for (double x : {0.05, 0.1, 0.15}) {
        auto direct = weights(n, b, x);
        // recompute by the small-n recurrence
        std::vector<double> rec(static_cast<size_t>(n) + 1);
        rec[0] = std::pow(b / (b + x), n);
        for (int k = 0; k < n; ++k) {
            rec[static_cast<size_t>(k) + 1] = rec[static_cast<size_t>(k)] * (x / b) *
                                              (static_cast<double>(n - k) /
                                               (static_cast<double>(k) + 1.0));
        }
        for (int k = 0; k <= n; k += 23) {
            // skip the far tails, where the recurrence itself underflows
            if (rec[static_cast<size_t>(k)] < 1e-200) continue;
            CHECK(direct[static_cast<size_t>(k)] ==
                  doctest::Approx(rec[static_cast<size_t>(k)]).epsilon(1e-9));
        }
    }
    // the log-space path still normalizes where the recurrence would underflow
    for (double x : {0.6, 1.0}) {
        auto w = weights(n, b, x);
        double sum = 0.0;
        for (double v : w) sum += v;
        CHECK(std::fabs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("constants are reproduced to rounding") {
    auto op = build_operator([](double) { return 2.75; }, 31, 3.0);
    for (double x : {0.0, 0.5, 1.9, 3.0}) {
        CHECK(std::fabs(eval(op, x) - 2.75) <= 1e-12);
    }
}

TEST_CASE("monotone data gives monotone operators") {
    std::mt19937_64 rng(515151);
    for (int trial = 0; trial < 10; ++trial) {
        // random monotone piecewise linear target on [0, 1]
        const int pieces = 3 + static_cast<int>(rng() % 4);
        std::vector<double> ys(static_cast<size_t>(pieces) + 1, 0.0);
        for (size_t i = 1; i < ys.size(); ++i) {
            ys[i] = ys[i - 1] + static_cast<double>(rng() % 9) / 8.0;
        }
        auto f = [&ys, pieces](double t) {
            const double s = t * pieces;
            const int seg = std::min(pieces - 1, static_cast<int>(s));
            const double frac = s - seg;
            return ys[static_cast<size_t>(seg)] +
                   frac * (ys[static_cast<size_t>(seg) + 1] - ys[static_cast<size_t>(seg)]);
        };
        for (int n : {5, 25, 125}) {
            auto op = build_operator(f, n, 1.0);
            CHECK(monotonicity_gap(op, 500) >= -1e-10);
        }
    }
}

TEST_CASE("identity error shrinks with n") {
    auto f = [](double t) { return t; };
    double prev = 1e9;
    for (int n : {25, 50, 100, 200}) {
        auto op = build_operator(f, n, 1.0);
        const double err = sup_error(op, f, 2000);
        CHECK(err <= prev);
        prev = err;
    }
    CHECK(prev < 0.1);
}

TEST_CASE("sample validation") {
    CHECK(raises(ErrorKind::NegativeSample,
                 [] { operator_from_samples(1, 1.0, {-0.1, 1.0}); }));
    CHECK(raises(ErrorKind::NotMonotoneSamples,
                 [] { operator_from_samples(2, 1.0, {0.0, 0.5, 0.4}); }));
    CHECK(raises(ErrorKind::SizeMismatch,
                 [] { operator_from_samples(2, 1.0, {0.0, 0.5}); }));
    auto op = operator_from_samples(1, 1.0, {0.0, 1.0});
    CHECK(eval(op, 1.0) == 0.5);
}

TEST_CASE("closed form bounds") {
    CHECK(shift_bound(10, 1.0) == 0.2);
    CHECK(shift_bound(400, 2.0) == 0.01);
    CHECK(tail_bound(100, 0.25) == 1.0 / (4.0 * 100.0 * 0.0625));
    CHECK(raises(ErrorKind::InvalidParameter, [] { tail_bound(0, 0.25); }));
    CHECK(raises(ErrorKind::InvalidParameter, [] { tail_bound(100, 0.0); }));
}

TEST_CASE("total error bound applies once the shift is small") {
    ErrorBoundInputs in;
    in.delta = 0.5;
    in.eps_half = 0.05;
    in.sup_f = 2.0;
    in.n = 16;  // shift 2/16 = 0.125 < delta/2
    const double b = total_error_bound(in, 1.0);
    const double eta = std::min(0.25, in.delta / (2.0 * 32.0));
    CHECK(b == in.eps_half + 2.0 * in.sup_f * tail_bound(16, eta));
    // too small an n leaves the shift too large for the argument
    in.n = 4;
    CHECK(raises(ErrorKind::BoundNotApplicable, [&] { total_error_bound(in, 1.0); }));
}

TEST_CASE("exact binomial tail sits under the variance bound, frozen case") {
    // n=10, p=1/2, eta=1/4: exact tail mass is 7/64, the bound is 2/5
    const double exact = 7.0 / 64.0;
    CHECK(exact <= tail_bound(10, 0.25));
}
