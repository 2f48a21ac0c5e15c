#include "doctest.h"

#include "ehd2d/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace ehd2d;

TEST_CASE("dBm conversions") {
    CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_mw(44.0) == doctest::Approx(25118.8643150958).epsilon(1e-13));
    CHECK(dbm_to_mw(-90.0) == doctest::Approx(1e-9).epsilon(1e-13));
    for (double dbm = -120.0; dbm <= 60.0; dbm += 7.5) {
        CHECK(mw_to_dbm(dbm_to_mw(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mw_to_dbm(0.0), std::domain_error);
    CHECK_THROWS_AS(mw_to_dbm(-1.0), std::domain_error);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(linear_to_db(db_to_linear(-5.0)) == doctest::Approx(-5.0));
}

TEST_CASE("xi constant") {
    CHECK(std::abs(xi(4.0) - std::numbers::pi / 2.0) <= 1e-12);
    // gamma product against the reflection form and an mpmath value
    CHECK(xi(3.0) == doctest::Approx(2.41839915231229).epsilon(1e-13));
    CHECK(xi(5.0) == doctest::Approx(1.32130639967765).epsilon(1e-13));
    for (double a = 2.1; a < 9.0; a += 0.37) {
        CHECK(xi(a) == doctest::Approx(xi_reflection(a)).epsilon(1e-12));
    }
    CHECK(xi(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(xi(1e9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(xi(2.0), std::domain_error);
    CHECK_THROWS_AS(xi(1.5), std::domain_error);
}

TEST_CASE("path gain") {
    CHECK(path_gain(1.0, 3.3) == 1.0);
    CHECK(path_gain(10.0, 4.0) == doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(path_gain(5.0, 4.0) == doctest::Approx(0.0016).epsilon(1e-15));
    CHECK_THROWS_AS(path_gain(0.0, 4.0), std::domain_error);
}

TEST_CASE("parameter validation") {
    NetworkParams p = default_network();
    CHECK_NOTHROW(p.validate());
    CHECK(p.energy_threshold_mwslots == p.d2d_power_mw);

    auto broken = [&](auto mutate) {
        NetworkParams q = default_network();
        mutate(q);
        return q;
    };
    CHECK_THROWS_AS(broken([](NetworkParams& q) { q.cell_radius_m = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](NetworkParams& q) { q.path_loss_exponent = 2.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](NetworkParams& q) { q.harvest_efficiency = 1.2; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](NetworkParams& q) { q.d2d_density_per_m2 = -0.1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](NetworkParams& q) { q.pair_distance_m = 150.0; }).validate(), std::invalid_argument);
    CHECK_NOTHROW(broken([](NetworkParams& q) { q.harvest_efficiency = 0.0; }).validate());
    CHECK_NOTHROW(broken([](NetworkParams& q) { q.d2d_density_per_m2 = 0.0; }).validate());

    CHECK_NOTHROW(validate_scheme(FtpScheme{1.0}));
    CHECK_THROWS_AS(validate_scheme(FtpScheme{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_scheme(FtpScheme{1.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_scheme(AtpScheme{0.0}), std::invalid_argument);
    CHECK(scheme_name(FtpScheme{}) == "ftp");
    CHECK(scheme_name(AtpScheme{1e-7}) == "atp");
}
