#pragma once

#include <stdexcept>
#include <string>
#include <variant>

namespace ehd2d {

/// Physical description of a single cell with an underlaid D2D tier.
///
/// Powers are linear milliwatts, distances are meters and time is measured in
/// sub-slots, so one sub-slot at P mW spends P "mW-slots" of energy.
struct NetworkParams {
    double cell_radius_m = 100.0;
    double d2d_density_per_m2 = 0.01;
    double pair_distance_m = 5.0;
    double path_loss_exponent = 4.0;
    double bs_power_mw = 0.0;
    double cell_user_power_mw = 0.0;
    double d2d_power_mw = 0.0;
    double sense_power_mw = 0.0;
    double noise_power_mw = 0.0;
    double harvest_efficiency = 0.8;
    double sense_window = 0.05;
    double energy_threshold_mwslots = 0.0;

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

/// Reference cell: 44/10/-10/-30/-90 dBm for BS, cellular user, D2D, sensing
/// and noise; R = 100 m, r_d = 5 m, alpha = 4, lambda_d = 0.01, eta = 0.8.
/// The energy threshold defaults to one full-power D2D transmission.
NetworkParams default_network();

struct FtpScheme {
    double transmit_prob = 0.1;
};

struct AtpScheme {
    double beta_th_mw = 0.0;
};

using SchemeConfig = std::variant<FtpScheme, AtpScheme>;

void validate_scheme(const SchemeConfig& scheme);
std::string scheme_name(const SchemeConfig& scheme);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);
double db_to_linear(double db);
double linear_to_db(double linear);

/// Gamma(1 - 2/alpha) * Gamma(1 + 2/alpha); requires alpha > 2.
double xi(double alpha);

/// Same constant through the reflection identity (2 pi / alpha) / sin(2 pi / alpha).
double xi_reflection(double alpha);

/// d^(-alpha). Zero distance is a domain error.
double path_gain(double distance_m, double alpha);

}  // namespace ehd2d
