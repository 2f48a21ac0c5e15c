#include "ehd2d/core.hpp"

#include <cmath>
#include <numbers>

namespace ehd2d {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void NetworkParams::validate() const {
    require(std::isfinite(cell_radius_m) && cell_radius_m > 0.0, "cell_radius_m must be > 0");
    require(std::isfinite(d2d_density_per_m2) && d2d_density_per_m2 >= 0.0,
            "d2d_density_per_m2 must be >= 0");
    require(pair_distance_m > 0.0 && pair_distance_m < cell_radius_m,
            "pair_distance_m must lie in (0, cell_radius_m)");
    require(path_loss_exponent > 2.0 && std::isfinite(path_loss_exponent),
            "path_loss_exponent must be > 2");
    require(bs_power_mw > 0.0, "bs_power must be > 0");
    require(cell_user_power_mw > 0.0, "cell_user_power must be > 0");
    require(d2d_power_mw > 0.0, "d2d_power must be > 0");
    require(sense_power_mw > 0.0, "sense_power must be > 0");
    require(noise_power_mw > 0.0, "noise_power must be > 0");
    // eta = 0 is accepted as the degenerate "no harvesting" cell.
    require(harvest_efficiency >= 0.0 && harvest_efficiency <= 1.0,
            "harvest_efficiency must lie in [0, 1]");
    require(sense_window >= 0.0 && sense_window < 1.0, "sense_window must lie in [0, 1)");
    require(energy_threshold_mwslots > 0.0, "energy_threshold must be > 0");
}

NetworkParams default_network() {
    NetworkParams p;
    p.bs_power_mw = dbm_to_mw(44.0);
    p.cell_user_power_mw = dbm_to_mw(10.0);
    p.d2d_power_mw = dbm_to_mw(-10.0);
    p.sense_power_mw = dbm_to_mw(-30.0);
    p.noise_power_mw = dbm_to_mw(-90.0);
    p.energy_threshold_mwslots = p.d2d_power_mw;
    return p;
}

void validate_scheme(const SchemeConfig& scheme) {
    if (const auto* ftp = std::get_if<FtpScheme>(&scheme)) {
        require(ftp->transmit_prob > 0.0 && ftp->transmit_prob <= 1.0,
                "transmit_prob must lie in (0, 1]");
    } else {
        const auto& atp = std::get<AtpScheme>(scheme);
        require(atp.beta_th_mw > 0.0 && std::isfinite(atp.beta_th_mw), "beta_th must be > 0");
    }
}

std::string scheme_name(const SchemeConfig& scheme) {
    return std::holds_alternative<FtpScheme>(scheme) ? "ftp" : "atp";
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
    if (!(mw > 0.0)) throw std::domain_error("mw_to_dbm: power must be > 0");
    return 10.0 * std::log10(mw);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) throw std::domain_error("linear_to_db: value must be > 0");
    return 10.0 * std::log10(linear);
}

double xi(double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("xi: alpha must be > 2");
    if (std::isinf(alpha)) return 1.0;
    return std::tgamma(1.0 - 2.0 / alpha) * std::tgamma(1.0 + 2.0 / alpha);
}

double xi_reflection(double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("xi_reflection: alpha must be > 2");
    if (std::isinf(alpha)) return 1.0;
    const double t = 2.0 * std::numbers::pi / alpha;
    return t / std::sin(t);
}

double path_gain(double distance_m, double alpha) {
    if (!(distance_m > 0.0)) throw std::domain_error("path_gain: distance must be > 0");
    return std::pow(distance_m, -alpha);
}

}  // namespace ehd2d
