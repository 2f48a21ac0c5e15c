#include "doctest.h"

#include "ehd2d/numerics.hpp"

#include <cmath>
#include <numbers>

using namespace ehd2d;

TEST_CASE("Chebyshev nodes") {
    const auto g1 = chebyshev_grid(1, 100.0);
    CHECK(std::abs(g1.nodes_x[0]) < 1e-15);
    CHECK(g1.nodes_a[0] == doctest::Approx(50.0));
    CHECK(g1.nodes_b[0] == doctest::Approx(100.0));
    const auto g2 = chebyshev_grid(2, 100.0);
    CHECK(g2.nodes_x[0] == doctest::Approx(0.7071068).epsilon(1e-7));
    CHECK(g2.nodes_x[1] == doctest::Approx(-0.7071068).epsilon(1e-7));
    CHECK(g2.nodes_a[0] == doctest::Approx(85.35534).epsilon(1e-7));
    CHECK(g2.nodes_a[1] == doctest::Approx(14.64466).epsilon(1e-7));
    CHECK_THROWS_AS(chebyshev_grid(0, 100.0), std::domain_error);
}

TEST_CASE("Chebyshev integration of the radial density") {
    const auto g = chebyshev_grid(100, 100.0);
    const double mass = chebyshev_integrate_radius(g, [](double r) { return 2.0 * r / 1e4; });
    CHECK(std::abs(mass - 1.0) <= 1e-3);
    const double diam = chebyshev_integrate_diameter(g, [](double r) { return std::exp(-r / 50.0); });
    const double exact = 50.0 * (1.0 - std::exp(-4.0));
    CHECK(std::abs(diam - exact) <= 1e-4 * exact);
}

TEST_CASE("semi-infinite integration") {
    CHECK(std::abs(integrate_semi_infinite([](double x) { return std::exp(-x); }) - 1.0) <= 1e-8);
    CHECK(std::abs(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }) -
                   std::numbers::pi / 2.0) <= 1e-8);
    const double c = 0.0016;
    const double lower = 1034.3;
    const double closed = (std::numbers::pi / 2.0 - std::atan(std::sqrt(c) * lower)) / std::sqrt(c);
    CHECK(closed == doctest::Approx(0.604155783807763).epsilon(1e-12));
    const double numeric =
        integrate_semi_infinite([&](double x) { return 1.0 / (1.0 + c * (lower + x) * (lower + x)); }, 1e-10);
    CHECK(std::abs(numeric - closed) <= 1e-8);
    // slow x^(-3/2) tail
    const double slow = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + std::pow(x, 1.5)); }, 1e-9);
    CHECK(std::abs(slow - (2.0 * std::numbers::pi / 3.0) / std::sin(2.0 * std::numbers::pi / 3.0)) <= 1e-8);
}

TEST_CASE("semi-infinite integration reports divergence") {
    bool thrown = false;
    try {
        integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x); });
    } catch (const NumericalError& e) {
        thrown = true;
        CHECK(e.partial_estimate() > 0.0);
    }
    CHECK(thrown);
}

TEST_CASE("fixed point solver") {
    auto r = solve_fixed_point([](double) { return 0.5; });
    CHECK(std::abs(r.value - 0.5) <= 1e-9);
    r = solve_fixed_point([](double x) { return x; });
    CHECK(r.value == 0.5);
    CHECK(r.residual == 0.0);
    r = solve_fixed_point([](double x) { return (1.0 + x) / 3.0; });
    CHECK(std::abs(r.value - 0.5) <= 1e-9);
    CHECK(r.residual <= 1e-9);

    // decreasing map: damping stops the undamped two-cycle
    r = solve_fixed_point([](double x) { return 1.0 - x; });
    CHECK(std::abs(r.value - 0.5) <= 1e-9);
    r = solve_fixed_point([](double x) { return 0.9 * (1.0 - x * x); });
    CHECK(std::abs(r.value - 0.9 * (1.0 - r.value * r.value)) <= 1e-9);

    FixedPointOptions tight;
    tight.max_iter = 1;
    tight.tol = 0.0;
    CHECK_THROWS_AS(solve_fixed_point([](double x) { return x < 0.5 ? 0.9 : 0.1; }, tight), ConvergenceError);
}
