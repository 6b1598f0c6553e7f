#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gen.hpp"
#include "roadfield/analysis.hpp"
#include "roadfield/errors.hpp"

using namespace roadfield;

TEST_CASE("front_position on a step") {
    const Grid g = Grid::make(-5.0, 5.0, 1.0, 11, 3);
    std::vector<double> profile(11);
    for (std::size_t i = 0; i < 11; ++i) profile[i] = g.x(i) < 0.0 ? 1.0 : 0.0;
    CHECK(front_position(profile, g, 0.5) == doctest::Approx(-0.5));

    std::vector<double> zero(11, 0.0);
    CHECK_THROWS_AS(front_position(zero, g, 0.5), NoCrossingError);
    CHECK_THROWS_AS(front_position(std::vector<double>(4, 1.0), g, 0.5), GridMismatchError);
}

TEST_CASE("front_position commutes with grid translation (property)") {
    testgen::Gen gen(51);
    for (int k = 0; k < 200; ++k) {
        const Grid g = Grid::make(-10.0, 10.0, 1.0, 201, 3);
        const double x0 = gen.uniform(-8.0, 8.0);
        const double width = gen.uniform(0.3, 2.0);
        std::vector<double> profile(g.nx);
        for (std::size_t i = 0; i < g.nx; ++i) profile[i] = 0.5 * std::erfc((g.x(i) - x0) / width);
        const double shift = gen.uniform(-3.0, 3.0);
        const Grid moved = Grid::make(-10.0 + shift, 10.0 + shift, 1.0, 201, 3);
        const double a = front_position(profile, g, 0.5);
        CHECK(front_position(profile, moved, 0.5) == doctest::Approx(a + shift).epsilon(1e-12));
        CHECK(std::abs(a - x0) <= 0.1 * 0.1 / width);
    }
}

TEST_CASE("fit_speed") {
    FrontSeries exact;
    for (int k = 0; k <= 40; ++k) exact.samples.push_back({0.5 * k, 3.0 * 0.5 * k + 1.0});
    const auto e = fit_speed(exact);
    CHECK(e.speed == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.residual_rms <= 1e-12);
    CHECK(e.fit_window.first == 10.0);
    CHECK(e.fit_window.second == 20.0);

    // ±dx/2 dither around 2t: error O(dx/t_span).
    const double dx = 0.25;
    FrontSeries noisy;
    for (int k = 0; k <= 200; ++k) {
        const double t = 0.5 * k;
        noisy.samples.push_back({t, 2.0 * t + (k % 2 ? 0.5 : -0.5) * dx});
    }
    const auto n = fit_speed(noisy);
    CHECK(std::abs(n.speed - 2.0) <= dx / (n.fit_window.second - n.fit_window.first));

    FrontSeries few;
    for (int k = 0; k < 12; ++k) few.samples.push_back({double(k), double(k)});
    CHECK_THROWS_AS(fit_speed(few), TooFewSamplesError);
    CHECK_THROWS_AS(fit_speed(FrontSeries{}), TooFewSamplesError);
    CHECK_THROWS_AS(fit_speed(exact, 0.0), DomainError);
}

TEST_CASE("is_ordered") {
    const Grid g = Grid::make(0.0, 1.0, 1.0, 4, 3);
    FieldState a = FieldState::constant(g, 0.3, 0.4);
    CHECK(is_ordered(a, a));
    CHECK(is_ordered(FieldState::constant(g, 0.0, 0.0), a));
    FieldState b = a;
    b.at(2, 1) = 0.1;
    CHECK_FALSE(is_ordered(a, b));
    CHECK(is_ordered(b, a));
    CHECK_THROWS_AS(is_ordered(a, FieldState(5, 3)), GridMismatchError);
}

TEST_CASE("steady_error") {
    const ModelParams p(1, 1, 2, 1, 1);
    const Grid g = Grid::from_spacing(-10.0, 10.0, 10.0, 0.5, 0.5);
    const auto at_eq = steady_error(FieldState::constant(g, 0.5, 1.0), g, p, 5.0);
    CHECK(at_eq.eu == 0.0);
    CHECK(at_eq.ev == 0.0);
    const auto at_zero = steady_error(FieldState::constant(g, 0.0, 0.0), g, p, 5.0);
    CHECK(at_zero.eu == 0.5);
    CHECK(at_zero.ev == 1.0);

    // Only the window counts.
    FieldState s = FieldState::constant(g, 0.5, 1.0);
    s.at(0, 0) = 0.0;
    s.at(20, 15) = 0.0;  // (0, 7.5)
    CHECK(steady_error(s, g, p, 5.0).ev == 0.0);
    s.at(30, 10) = 0.75;  // (5, 5), on the window edge
    CHECK(steady_error(s, g, p, 5.0).ev == 0.25);

    CHECK_THROWS_AS(steady_error(s, g, p, 11.0), DomainError);
}
