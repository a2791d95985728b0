#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rainsense/errors.hpp"
#include "rainsense/rainfield.hpp"

using namespace rainsense;
using Catch::Approx;

namespace {
const GaussianField kEventField(10.0, {6.0, -6.0}, 5.0);
}

TEST_CASE("Gaussian field closed form", "[rainfield]") {
    CHECK(kEventField.rate_at({6.0, -6.0}) == 10.0);
    CHECK(kEventField.rate_at({11.0, -6.0}) == Approx(10.0 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(kEventField.rate_at({11.0, -6.0}) == Approx(6.0653).margin(1e-4));
    // 10 * exp(-72/50)
    CHECK(kEventField.rate_at({0.0, 0.0}) == Approx(2.3693).margin(1e-4));
    CHECK(kEventField.rate_at({0.0, 0.0}) == Approx(oracle::gaussian(0.0, 0.0)).epsilon(1e-15));
}

TEST_CASE("Gaussian field rejects bad parameters", "[rainfield]") {
    CHECK_THROWS_AS(GaussianField(10.0, {}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(GaussianField(10.0, {}, -1.0), InvalidArgument);
    CHECK_THROWS_AS(GaussianField(-1.0, {}, 5.0), InvalidArgument);
    CHECK_THROWS_AS(ConstantField(-0.5), InvalidArgument);
}

TEST_CASE("Gaussian field is radially symmetric and decays monotonically", "[rainfield]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> radius(0.0, 15.0), angle(0.0, 2.0 * kPi);
    for (int i = 0; i < 500; ++i) {
        const double r = radius(rng), a = angle(rng), b = angle(rng);
        const double va = kEventField.rate_at({6.0 + r * std::cos(a), -6.0 + r * std::sin(a)});
        const double vb = kEventField.rate_at({6.0 + r * std::cos(b), -6.0 + r * std::sin(b)});
        REQUIRE(va == Approx(vb).epsilon(1e-12));
        const double farther = kEventField.rate_at({6.0 + (r + 0.5) * std::cos(a), -6.0 + (r + 0.5) * std::sin(a)});
        REQUIRE(farther < va);
    }
}

TEST_CASE("Gaussian sum adds its cells", "[rainfield]") {
    const GaussianSumField two({kEventField, GaussianField(4.0, {2.0, -2.0}, 1.0)});
    const LocalPoint p{3.0, -4.0};
    CHECK(two.rate_at(p) == Approx(kEventField.rate_at(p) + oracle::gaussian(3.0, -4.0, 4.0, 2.0, -2.0, 1.0)));
}

TEST_CASE("rasterize samples box centers", "[rainfield]") {
    SECTION("constant field") {
        const RainGrid g = rasterize(ConstantField(3.5), {7, 5, 0.3, {1.0, 2.0}});
        for (double v : g.values()) CHECK(v == 3.5);
    }
    SECTION("paper grid, box holding the event center") {
        const RainGrid g = rasterize(kEventField, GridSpec{});
        CHECK(g.values().size() == 14400);
        // Box (59, 59) has its center at (5.95, -5.95): 10 * exp(-0.005 / 50).
        CHECK(g.at(59, 59) == Approx(9.99900005).epsilon(1e-9));
        CHECK(g.at(59, 59) == g.max_value());
        CHECK(g.at(0, 0) == Approx(oracle::gaussian(0.05, -0.05)).epsilon(1e-15));
    }
    SECTION("single 12 km box sits on the event center") {
        const RainGrid g = rasterize(kEventField, {1, 1, 12.0, {}});
        CHECK(g.at(0, 0) == 10.0);
    }
    SECTION("row 0 is northernmost") {
        const GridSpec spec{4, 3, 1.0, {}};
        CHECK(spec.box_center(0, 0).y_km == -0.5);
        CHECK(spec.box_center(2, 3).y_km == -2.5);
        CHECK(spec.box_center(2, 3).x_km == 3.5);
    }
    CHECK_THROWS_AS(rasterize(kEventField, {0, 1, 1.0, {}}), InvalidArgument);
}

TEST_CASE("line average: trivial cases", "[rainfield]") {
    CHECK(line_average(ConstantField(4.2), {0, 0}, {3, -4}) == Approx(4.2).epsilon(1e-14));
    CHECK(line_average(kEventField, {6, -6}, {6, -6}) == 10.0);
    CHECK_THROWS_AS(line_average(kEventField, {0, 0}, {1, 0}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(line_average(kEventField, {0, 0}, {0, 0}, -1.0), InvalidArgument);
}

TEST_CASE("line average matches Simpson quadrature", "[rainfield]") {
    const double expected =
        oracle::simpson([](double t) { return 10.0 * std::exp(-t * t / 50.0); }, 0.0, 5.0, 100000) / 5.0;
    const double got = line_average(kEventField, {6, -6}, {11, -6}, 0.01);
    CHECK(got == Approx(expected).epsilon(5e-5));
    CHECK(got == Approx(expected).epsilon(1e-6));
}

TEST_CASE("line average is bounded by the field along the segment", "[rainfield]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(0.0, 12.0), y(-12.0, 0.0);
    for (int i = 0; i < 200; ++i) {
        const LocalPoint a{x(rng), y(rng)}, b{x(rng), y(rng)};
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k <= 2000; ++k) {
            const double t = k / 2000.0;
            const double v = kEventField.rate_at({a.x_km + t * (b.x_km - a.x_km), a.y_km + t * (b.y_km - a.y_km)});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double avg = line_average(kEventField, a, b);
        REQUIRE(avg >= lo - 1e-12);
        REQUIRE(avg <= hi + 1e-12);
    }
}

TEST_CASE("halving the quadrature step barely moves the line average", "[rainfield]") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> x(0.0, 12.0), y(-12.0, 0.0);
    for (int i = 0; i < 50; ++i) {
        const LocalPoint a{x(rng), y(rng)}, b{x(rng), y(rng)};
        const double coarse = line_average(kEventField, a, b, 0.01);
        const double fine = line_average(kEventField, a, b, 0.005);
        REQUIRE(std::abs(fine - coarse) < 1e-6 * std::abs(fine));
    }
}
