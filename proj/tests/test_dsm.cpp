#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helios/dsm.hpp"
#include "helios/rng.hpp"

using namespace helios;

namespace {

const double kPi = 3.14159265358979323846;

TracesPerK example_2_1_traces(double sigma, std::uint64_t seed) {
    const SourceConfig config{{{{1.0, 0.0}, 5.0}}};
    const Aperture ap{7.0, kPi / 2.0, 51};
    return {{4.0, measure(config, ap, 4.0, NoiseModel{sigma, seed})}};
}

} // namespace

TEST_CASE("indicator degenerate and single-sensor cases") {
    const Aperture ap{7.0, kPi / 2.0, 51};
    TracesPerK zeros{{4.0, {{0.0, {0.0, 0.0}}, {0.3, {0.0, 0.0}}}}};
    CHECK(indicator_at(zeros, ap, {0.5, 0.5}) == 0.0);

    TracesPerK single{{4.0, {{0.2, {0.37, -1.2}}}}};
    CHECK(indicator_at(single, ap, {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(indicator_at(TracesPerK{}, ap, {0.0, 0.0}), std::invalid_argument);
    TracesPerK empty_trace{{4.0, {}}};
    CHECK_THROWS_AS(indicator_at(empty_trace, ap, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(indicator_at(single, ap, {7.0, 0.0}), std::domain_error);
}

TEST_CASE("noiseless single source: indicator peaks at the source") {
    const auto traces = example_2_1_traces(0.0, 0);
    const Aperture ap{7.0, kPi / 2.0, 51};
    const double at_source = indicator_at(traces, ap, {1.0, 0.0});
    const SamplingGrid grid;
    for (int iy = 0; iy < grid.ny(); iy += 2)
        for (int ix = 0; ix < grid.nx(); ix += 2) {
            const Point2 z = grid.node(ix, iy);
            if (distance(z, {1.0, 0.0}) > 0.5)
                CHECK(indicator_at(traces, ap, z) < at_source);
        }
}

TEST_CASE("indicator field: bounds, symmetry, argmax") {
    const Aperture ap{7.0, kPi / 2.0, 51};

    SUBCASE("values within [0,1] on the full grid") {
        const auto field = indicator_field(example_2_1_traces(0.05, 7), ap, SamplingGrid{});
        REQUIRE(field.values.size() == 101u * 101u);
        for (double v : field.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    SUBCASE("source at origin gives a y-reflection-symmetric field") {
        const SourceConfig config{{{{0.0, 0.0}, 5.0}}};
        TracesPerK traces{{4.0, measure(config, ap, 4.0, NoiseModel{})}};
        const auto field = indicator_field(traces, ap, SamplingGrid{});
        const int nx = field.grid.nx(), ny = field.grid.ny();
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ix += 5)
                CHECK(std::fabs(field.at(ix, iy) - field.at(ix, ny - 1 - iy)) < 1e-12);
    }

    SUBCASE("argmax node is (1.00, 0.00) for all three apertures") {
        for (int n : {2, 3, 4}) {
            const Aperture apn{7.0, kPi / n, 51};
            const SourceConfig config{{{{1.0, 0.0}, 5.0}}};
            TracesPerK traces{{4.0, measure(config, apn, 4.0, NoiseModel{0.05, 11})}};
            const auto field = indicator_field(traces, apn, SamplingGrid{});
            const auto peaks = find_peaks(field, 1);
            REQUIRE(peaks.size() == 1);
            CHECK(peaks[0].x == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(peaks[0].y == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("indicator scale invariance under complex rescaling of traces") {
    const Aperture ap{7.0, kPi / 2.0, 51};
    auto traces = example_2_1_traces(0.05, 3);
    const Complex c{-2.3, 1.7};
    auto scaled = traces;
    for (auto& s : scaled[4.0]) s.value *= c;
    const CounterRng rng(5, 2);
    for (int i = 0; i < 50; ++i) {
        const Point2 z{rng.uniform(2 * i, -2.0, 2.0), rng.uniform(2 * i + 1, -2.0, 2.0)};
        CHECK(std::fabs(indicator_at(traces, ap, z) - indicator_at(scaled, ap, z)) < 1e-12);
    }
}

TEST_CASE("indicator bounded in [0,1] for random traces (property)") {
    const Aperture ap{6.5, kPi / 2.0, 10};
    const CounterRng rng(99, 4);
    std::uint64_t ctr = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        TracesPerK traces;
        for (double k : {4.0, 5.0}) {
            std::vector<TraceSample> trace(10);
            for (int m = 0; m < 10; ++m)
                trace[m] = {-kPi / 2.0 + kPi * m / 9.0,
                            {rng.uniform(ctr++, -3.0, 3.0), rng.uniform(ctr++, -3.0, 3.0)}};
            traces[k] = trace;
        }
        const Point2 z{rng.uniform(ctr++, -2.0, 2.0), rng.uniform(ctr++, -2.0, 2.0)};
        const double v = indicator_at(traces, ap, z);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("peak stability under tiny noise") {
    const Aperture ap{7.0, kPi / 2.0, 51};
    const auto clean = find_peaks(indicator_field(example_2_1_traces(0.0, 0), ap, SamplingGrid{}), 1);
    const auto perturbed =
        find_peaks(indicator_field(example_2_1_traces(1e-6, 12345), ap, SamplingGrid{}), 1);
    REQUIRE(clean.size() == 1);
    REQUIRE(perturbed.size() == 1);
    CHECK(std::fabs(clean[0].x - perturbed[0].x) <= 0.04 + 1e-12);
    CHECK(std::fabs(clean[0].y - perturbed[0].y) <= 0.04 + 1e-12);
}

TEST_CASE("find_peaks edge cases") {
    SamplingGrid grid{0.0, 1.0, 0.0, 1.0, 0.1};
    IndicatorField field{grid, std::vector<double>(11 * 11, 0.5)};
    CHECK(find_peaks(field, 3).empty()); // constant plateau: no strict maxima

    field.values[5 * 11 + 7] = 0.9; // single interior spike
    const auto peaks = find_peaks(field, 5);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].x == doctest::Approx(0.7));
    CHECK(peaks[0].y == doctest::Approx(0.5));

    IndicatorField tiny{SamplingGrid{0.0, 0.1, 0.0, 0.1, 0.1}, std::vector<double>(4, 0.0)};
    CHECK_THROWS_AS(find_peaks(tiny, 1), std::invalid_argument);
    CHECK_THROWS_AS(find_peaks(field, 0), std::invalid_argument);
}

TEST_CASE("mae: assignment metric") {
    CHECK(mae({{3.0, 4.0}}, {{0.0, 0.0}}) == doctest::Approx(5.0));
    CHECK(mae({{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}) == doctest::Approx(0.0));
    // permutation invariance of both arguments
    std::vector<Point2> a{{0.1, 0.2}, {1.5, -0.7}, {-1.0, 0.4}};
    std::vector<Point2> b{{0.15, 0.1}, {1.4, -0.6}, {-1.1, 0.5}};
    const double base = mae(a, b);
    std::swap(a[0], a[2]);
    CHECK(mae(a, b) == doctest::Approx(base));
    std::swap(b[1], b[2]);
    CHECK(mae(a, b) == doctest::Approx(base));
    CHECK(mae(a, a) == doctest::Approx(0.0));
    CHECK_THROWS_AS(mae({{0.0, 0.0}}, {}), std::invalid_argument);
}

TEST_CASE("indicator CSV export shape") {
    SamplingGrid grid{0.0, 0.1, 0.0, 0.1, 0.1};
    IndicatorField field{grid, {0.1, 0.2, 0.3, 0.4}};
    std::ostringstream os;
    write_indicator_csv(field, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,y,value");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 4);
}
