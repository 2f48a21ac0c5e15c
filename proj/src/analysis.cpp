#include "ehd2d/analysis.hpp"

#include "ehd2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ehd2d {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// Disk average over r ~ 2r/R^2 of min(1, mu r^(-alpha)).
double disk_average_min_ratio(double mu, double radius, double alpha) {
    if (!(mu > 0.0)) return 0.0;
    // mu^(1/alpha) > R  <=>  mu > R^alpha
    if (mu > std::pow(radius, alpha)) return 1.0;
    return alpha * std::pow(mu, 2.0 / alpha) / ((alpha - 2.0) * radius * radius) +
           2.0 * mu / ((2.0 - alpha) * std::pow(radius, alpha));
}

// Shared by both schemes so equal densities give identical numbers.
double bs_outage_impl(const NetworkParams& p, double active_density, double gamma_b,
                      const ChebyshevGrid& grid) {
    if (gamma_b < 0.0) throw std::domain_error("bs_outage: gamma_b must be >= 0");
    const double alpha = p.path_loss_exponent;
    const double interference_coeff = kPi * active_density * xi(alpha) *
                                      std::pow(p.d2d_power_mw, 2.0 / alpha) *
                                      std::pow(p.cell_user_power_mw, -2.0 / alpha) *
                                      std::pow(gamma_b, 2.0 / alpha);
    double sum = 0.0;
    for (int k = 0; k < grid.order; ++k) {
        const double x = grid.nodes_x[k];
        const double a = grid.nodes_a[k];
        const double noise = gamma_b * p.noise_power_mw / (p.cell_user_power_mw * std::pow(a, -alpha));
        sum += a * std::sqrt(1.0 - x * x) * std::exp(-noise) * std::exp(-interference_coeff * a * a);
    }
    return clamp01(1.0 - kPi / (p.cell_radius_m * grid.order) * sum);
}

// Probability the cellular user's interference does not push the D2D link
// below gamma_d, averaged over the cellular-user-to-receiver distance.
double cellular_interference_factor(const NetworkParams& p, double gamma_d,
                                    const ChebyshevGrid& grid) {
    const double alpha = p.path_loss_exponent;
    const double desired = p.d2d_power_mw * std::pow(p.pair_distance_m, -alpha);
    const double R = p.cell_radius_m;
    double sum = 0.0;
    for (int k = 0; k < grid.order; ++k) {
        const double x = grid.nodes_x[k];
        const double b = grid.nodes_b[k];
        const double ratio = gamma_d * p.cell_user_power_mw * std::pow(b, -alpha) / desired;
        sum += std::sqrt(1.0 - x * x) / (1.0 + ratio) * disk_pair_distance_pdf(b, R);
    }
    return R * kPi / grid.order * sum;
}

double d2d_noise_factor(const NetworkParams& p, double gamma_d) {
    const double desired = p.d2d_power_mw * std::pow(p.pair_distance_m, -p.path_loss_exponent);
    return std::exp(-gamma_d * p.noise_power_mw / desired);
}

}  // namespace

// ---------------------------------------------------------------------------

double ftp_operable_prob(const NetworkParams& params, double p_t) {
    if (!(p_t > 0.0 && p_t <= 1.0)) throw std::domain_error("ftp_operable_prob: p_t must lie in (0, 1]");
    const double mu1 = params.harvest_efficiency * params.bs_power_mw / (params.d2d_power_mw * p_t);
    return disk_average_min_ratio(mu1, params.cell_radius_m, params.path_loss_exponent);
}

SchemeDerived ftp_derive(const NetworkParams& params, double p_t) {
    SchemeDerived d;
    d.operable_prob = ftp_operable_prob(params, p_t);
    d.transmit_prob = p_t;
    d.active_density_per_m2 = params.d2d_density_per_m2 * d.operable_prob * p_t;
    return d;
}

double ftp_bs_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_b,
                     const ChebyshevGrid& grid) {
    return bs_outage_impl(params, derived.active_density_per_m2, gamma_b, grid);
}

double ftp_d2d_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_d,
                      const ChebyshevGrid& grid) {
    if (gamma_d < 0.0) throw std::domain_error("ftp_d2d_outage: gamma_d must be >= 0");
    const double alpha = params.path_loss_exponent;
    const double rd = params.pair_distance_m;
    const double d2d_interference = std::exp(-kPi * derived.active_density_per_m2 * rd * rd *
                                             std::pow(gamma_d, 2.0 / alpha) * xi(alpha));
    return clamp01(1.0 - d2d_noise_factor(params, gamma_d) * d2d_interference *
                             cellular_interference_factor(params, gamma_d, grid));
}

double sum_rate_from_outage(double active_density, double cell_radius_m, double weight,
                            const std::function<double(double)>& outage, double rel_tol) {
    if (!(active_density > 0.0)) return 0.0;
    auto integrand = [&outage](double x) {
        const double success = 1.0 - outage(x);
        return success < 1e-9 ? 0.0 : success / (1.0 + x);
    };
    const double integral = integrate_semi_infinite(integrand, rel_tol);
    return weight * active_density * kPi * cell_radius_m * cell_radius_m / std::numbers::ln2 * integral;
}

double ftp_sum_rate(const NetworkParams& params, const SchemeDerived& derived,
                    const ChebyshevGrid& grid, double rel_tol) {
    return sum_rate_from_outage(
        derived.active_density_per_m2, params.cell_radius_m, 0.5,
        [&](double x) { return ftp_d2d_outage(params, derived, x, grid); }, rel_tol);
}

// ---------------------------------------------------------------------------

double atp_protection_radius(const NetworkParams& params, double beta_th_mw) {
    if (!(beta_th_mw > 0.0)) throw std::domain_error("atp_protection_radius: beta_th must be > 0");
    const double alpha = params.path_loss_exponent;
    return std::pow(params.d2d_power_mw / beta_th_mw, 1.0 / alpha) * std::tgamma(1.0 + 1.0 / alpha);
}

double atp_w_constant(const NetworkParams& params, double beta_th_mw) {
    if (!(beta_th_mw > 0.0)) throw std::domain_error("atp_w_constant: beta_th must be > 0");
    const double alpha = params.path_loss_exponent;
    return 2.0 * kPi * std::tgamma(2.0 / alpha) * params.d2d_density_per_m2 /
           (alpha * std::pow(beta_th_mw / params.d2d_power_mw, 2.0 / alpha));
}

double atp_transmit_prob(double w, double pi_o) {
    if (w < 0.0) throw std::domain_error("atp_transmit_prob: W must be >= 0");
    const double x = w * pi_o;
    if (!(x > 0.0)) return 1.0;
    if (x < 1e-8) return 1.0 - 0.5 * x + x * x / 6.0;
    return -std::expm1(-x) / x;
}

double atp_operable_map(const NetworkParams& params, double w, double pi_o) {
    const double ts_half = 0.5 * params.sense_window;
    const double spend = params.sense_power_mw * ts_half +
                         params.d2d_power_mw * (1.0 - ts_half) * atp_transmit_prob(w, pi_o);
    const double mu = params.harvest_efficiency * params.bs_power_mw / spend;
    return disk_average_min_ratio(mu, params.cell_radius_m, params.path_loss_exponent);
}

SchemeDerived atp_solve(const NetworkParams& params, double beta_th_mw,
                        const FixedPointOptions& options) {
    SchemeDerived d;
    d.w_constant = atp_w_constant(params, beta_th_mw);
    d.protection_radius_m = atp_protection_radius(params, beta_th_mw);
    const double w = d.w_constant;
    const auto fp = solve_fixed_point([&](double pi) { return atp_operable_map(params, w, pi); },
                                      options);
    d.operable_prob = fp.value;
    d.fixed_point_residual = fp.residual;
    d.transmit_prob = atp_transmit_prob(w, d.operable_prob);
    d.active_density_per_m2 = params.d2d_density_per_m2 * d.operable_prob * d.transmit_prob;
    return d;
}

double atp_bs_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_b,
                     const ChebyshevGrid& grid) {
    return bs_outage_impl(params, derived.active_density_per_m2, gamma_b, grid);
}

double atp_interference_integral(double alpha, double pair_distance_m, double gamma_d,
                                 double protection_radius_m, double rel_tol) {
    if (gamma_d < 0.0) throw std::domain_error("atp_interference_integral: gamma_d must be >= 0");
    if (gamma_d == 0.0) return 0.0;
    const double c = std::pow(pair_distance_m, -alpha) / gamma_d;
    const double lower = protection_radius_m * protection_radius_m;
    if (alpha == 4.0) {
        const double sc = std::sqrt(c);
        return (0.5 * kPi - std::atan(sc * lower)) / sc;
    }
    // v = c^(-2/alpha) w puts the knee of the integrand at w ~ 1.
    const double scale = std::pow(c, -2.0 / alpha);
    const double w0 = lower / scale;
    const double half_alpha = 0.5 * alpha;
    const double tail = integrate_semi_infinite(
        [&](double x) { return 1.0 / (1.0 + std::pow(w0 + x, half_alpha)); }, rel_tol);
    return scale * tail;
}

double atp_d2d_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_d,
                      const ChebyshevGrid& grid) {
    if (gamma_d < 0.0) throw std::domain_error("atp_d2d_outage: gamma_d must be >= 0");
    const double interference = atp_interference_integral(
        params.path_loss_exponent, params.pair_distance_m, gamma_d, derived.protection_radius_m);
    return clamp01(1.0 - d2d_noise_factor(params, gamma_d) *
                             std::exp(-kPi * derived.active_density_per_m2 * interference) *
                             cellular_interference_factor(params, gamma_d, grid));
}

double atp_sum_rate(const NetworkParams& params, const SchemeDerived& derived,
                    const ChebyshevGrid& grid, double rel_tol) {
    const double weight = 0.5 * (1.0 - 0.5 * params.sense_window);
    return sum_rate_from_outage(
        derived.active_density_per_m2, params.cell_radius_m, weight,
        [&](double x) { return atp_d2d_outage(params, derived, x, grid); }, rel_tol);
}

BetaOptimum grid_argmax(double lo, double hi, double step, const std::function<double(double)>& f) {
    if (!(step > 0.0)) throw std::domain_error("grid_argmax: step must be > 0");
    if (hi < lo) throw std::domain_error("grid_argmax: empty range");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    BetaOptimum best{lo, f(lo)};
    for (long i = 1; i < count; ++i) {
        const double arg = lo + static_cast<double>(i) * step;
        const double value = f(arg);
        if (value > best.sum_rate) best = {arg, value};
    }
    return best;
}

BetaOptimum optimize_beta_th(const NetworkParams& params, double lo_dbm, double hi_dbm,
                             double step_db, const ChebyshevGrid& grid) {
    return grid_argmax(lo_dbm, hi_dbm, step_db, [&](double beta_dbm) {
        const auto derived = atp_solve(params, dbm_to_mw(beta_dbm));
        return atp_sum_rate(params, derived, grid);
    });
}

// ---------------------------------------------------------------------------

SchemeDerived derive(const NetworkParams& params, const SchemeConfig& scheme) {
    if (const auto* ftp = std::get_if<FtpScheme>(&scheme)) return ftp_derive(params, ftp->transmit_prob);
    return atp_solve(params, std::get<AtpScheme>(scheme).beta_th_mw);
}

double bs_outage(const NetworkParams& params, const SchemeConfig& scheme,
                 const SchemeDerived& derived, double gamma_b, const ChebyshevGrid& grid) {
    return std::holds_alternative<FtpScheme>(scheme) ? ftp_bs_outage(params, derived, gamma_b, grid)
                                                     : atp_bs_outage(params, derived, gamma_b, grid);
}

double d2d_outage(const NetworkParams& params, const SchemeConfig& scheme,
                  const SchemeDerived& derived, double gamma_d, const ChebyshevGrid& grid) {
    return std::holds_alternative<FtpScheme>(scheme) ? ftp_d2d_outage(params, derived, gamma_d, grid)
                                                     : atp_d2d_outage(params, derived, gamma_d, grid);
}

double sum_rate(const NetworkParams& params, const SchemeConfig& scheme,
                const SchemeDerived& derived, const ChebyshevGrid& grid, double rel_tol) {
    return std::holds_alternative<FtpScheme>(scheme) ? ftp_sum_rate(params, derived, grid, rel_tol)
                                                     : atp_sum_rate(params, derived, grid, rel_tol);
}

OutageCurve bs_outage_curve(const NetworkParams& params, const SchemeConfig& scheme,
                            const SchemeDerived& derived, const std::vector<double>& thresholds,
                            const ChebyshevGrid& grid) {
    OutageCurve curve{thresholds, {}};
    curve.probabilities.reserve(thresholds.size());
    for (double g : thresholds) curve.probabilities.push_back(bs_outage(params, scheme, derived, g, grid));
    return curve;
}

OutageCurve d2d_outage_curve(const NetworkParams& params, const SchemeConfig& scheme,
                             const SchemeDerived& derived, const std::vector<double>& thresholds,
                             const ChebyshevGrid& grid) {
    OutageCurve curve{thresholds, {}};
    curve.probabilities.reserve(thresholds.size());
    for (double g : thresholds) curve.probabilities.push_back(d2d_outage(params, scheme, derived, g, grid));
    return curve;
}

}  // namespace ehd2d
