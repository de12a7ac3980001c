#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helios/baselines.hpp"
#include "helios/rng.hpp"

using namespace helios;

namespace {

std::vector<TraceSample> sample_fn(int n, double lo, double hi, double (*re)(double),
                                   double (*im)(double)) {
    std::vector<TraceSample> nodes(n);
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        nodes[i] = {x, {re(x), im(x)}};
    }
    return nodes;
}

double runge(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

} // namespace

TEST_CASE("all interpolants reproduce the nodes exactly") {
    const auto nodes = sample_fn(8, -1.0, 1.0, [](double x) { return std::sin(3 * x); },
                                 [](double x) { return std::cos(2 * x); });
    for (auto kind : {InterpolantKind::PiecewiseLinear, InterpolantKind::PiecewiseQuadratic,
                      InterpolantKind::GlobalPolynomial})
        for (const auto& node : nodes) {
            const Complex v = interpolate(kind, nodes, node.angle);
            CHECK(std::abs(v - node.value) < 1e-12);
        }
}

TEST_CASE("degree exactness") {
    const CounterRng rng(17, 0);
    auto query = [&](int i) { return rng.uniform(i, -1.0, 1.0); };

    SUBCASE("piecewise linear is exact on affine data") {
        const auto nodes = sample_fn(6, -1.0, 1.0, [](double x) { return 2 * x - 1; },
                                     [](double x) { return -0.5 * x; });
        for (int i = 0; i < 100; ++i) {
            const double x = query(i);
            const Complex v = interpolate(InterpolantKind::PiecewiseLinear, nodes, x);
            CHECK(std::fabs(v.real() - (2 * x - 1)) < 1e-12);
            CHECK(std::fabs(v.imag() + 0.5 * x) < 1e-12);
        }
    }

    SUBCASE("piecewise quadratic is exact on quadratics") {
        const auto nodes = sample_fn(7, -1.0, 1.0, [](double x) { return x * x - 0.3 * x; },
                                     [](double x) { return 2 * x * x + 1; });
        for (int i = 0; i < 100; ++i) {
            const double x = query(i);
            const Complex v = interpolate(InterpolantKind::PiecewiseQuadratic, nodes, x);
            CHECK(std::fabs(v.real() - (x * x - 0.3 * x)) < 1e-11);
            CHECK(std::fabs(v.imag() - (2 * x * x + 1)) < 1e-11);
        }
    }

    SUBCASE("global polynomial is exact on degree n-1 polynomials") {
        auto p = [](double x) { return ((x - 0.2) * x + 1.5) * x * x - 0.7; }; // degree 4
        const auto nodes = sample_fn(5, -1.0, 1.0, [](double x) { return ((x - 0.2) * x + 1.5) * x * x - 0.7; },
                                     [](double) { return 0.0; });
        for (int i = 0; i < 100; ++i) {
            const double x = query(i);
            const Complex v = interpolate(InterpolantKind::GlobalPolynomial, nodes, x);
            CHECK(std::fabs(v.real() - p(x)) < 1e-10);
        }
    }
}

TEST_CASE("global polynomial on equispaced Runge nodes oscillates near the ends") {
    const auto nodes = sample_fn(11, -1.0, 1.0, runge, [](double) { return 0.0; });
    double worst_poly = 0.0, worst_pl = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = -1.0 + 2.0 * i / 2000.0;
        worst_poly = std::max(worst_poly,
                              std::fabs(interpolate(InterpolantKind::GlobalPolynomial, nodes, x).real() -
                                        runge(x)));
        worst_pl = std::max(worst_pl,
                            std::fabs(interpolate(InterpolantKind::PiecewiseLinear, nodes, x).real() -
                                      runge(x)));
    }
    CHECK(worst_poly > 1.5);            // classic equispaced blow-up
    CHECK(worst_poly > 5.0 * worst_pl); // far worse than piecewise linear
}

TEST_CASE("piecewise linear output stays within the convex hull of node values") {
    const CounterRng rng(31, 0);
    std::vector<TraceSample> nodes(9);
    double vmin = 1e300, vmax = -1e300;
    for (int i = 0; i < 9; ++i) {
        const double v = rng.uniform(i, -2.0, 2.0);
        nodes[i] = {-1.0 + 0.25 * i, {v, 0.0}};
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    for (int i = 0; i <= 500; ++i) {
        const double x = -1.0 + 2.0 * i / 500.0;
        const double v = interpolate(InterpolantKind::PiecewiseLinear, nodes, x).real();
        CHECK(v >= vmin - 1e-12);
        CHECK(v <= vmax + 1e-12);
    }
}

TEST_CASE("validation: node count, ordering, extrapolation") {
    const auto nodes = sample_fn(4, 0.0, 1.0, [](double x) { return x; }, [](double) { return 0.0; });
    for (auto kind : {InterpolantKind::PiecewiseLinear, InterpolantKind::PiecewiseQuadratic,
                      InterpolantKind::GlobalPolynomial}) {
        CHECK_THROWS_AS(interpolate(kind, nodes, -0.01), std::domain_error);
        CHECK_THROWS_AS(interpolate(kind, nodes, 1.01), std::domain_error);
        CHECK_THROWS_AS(interpolate(kind, {}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(interpolate(kind, {{0.0, {1.0, 0.0}}}, 0.0), std::invalid_argument);
    }
    CHECK_THROWS_AS(
        interpolate(InterpolantKind::PiecewiseQuadratic, {{0.0, {0.0, 0.0}}, {1.0, {1.0, 0.0}}}, 0.5),
        std::invalid_argument);
    auto unsorted = nodes;
    std::swap(unsorted[1], unsorted[2]);
    CHECK_THROWS_AS(interpolate(InterpolantKind::PiecewiseLinear, unsorted, 0.5),
                    std::invalid_argument);
    auto dup = nodes;
    dup[1].angle = dup[0].angle;
    CHECK_THROWS_AS(interpolate(InterpolantKind::PiecewiseLinear, dup, 0.5), std::invalid_argument);
}

TEST_CASE("dense_trace maps every query angle") {
    const auto nodes = sample_fn(5, -1.0, 1.0, [](double x) { return x * x; },
                                 [](double x) { return -x; });
    const std::vector<double> queries{-1.0, -0.33, 0.0, 0.5, 1.0};
    const auto dense = dense_trace(InterpolantKind::PiecewiseQuadratic, nodes, queries);
    REQUIRE(dense.size() == queries.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
        CHECK(dense[i].angle == queries[i]);
        CHECK(std::abs(dense[i].value -
                       interpolate(InterpolantKind::PiecewiseQuadratic, nodes, queries[i])) == 0.0);
    }
}
