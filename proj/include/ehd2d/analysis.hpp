#pragma once

#include "ehd2d/core.hpp"
#include "ehd2d/numerics.hpp"

#include <functional>
#include <vector>

namespace ehd2d {

/// Quantities a scheme derives before any outage can be evaluated.
struct SchemeDerived {
    double operable_prob = 0.0;         // pi_o
    double transmit_prob = 0.0;         // p_t (fixed for FTP, solved for ATP)
    double active_density_per_m2 = 0.0; // lambda_t = lambda_d * pi_o * p_t
    double protection_radius_m = 0.0;   // ATP only
    double w_constant = 0.0;            // ATP only
    double fixed_point_residual = 0.0;  // ATP only
};

struct OutageCurve {
    std::vector<double> thresholds;     // linear SINR
    std::vector<double> probabilities;
};

// ---------------------------------------------------------------------------
// Fixed transmission probability

/// Long-run probability that a transmitter's battery clears the threshold
/// when every operable transmitter fires with probability p_t.
double ftp_operable_prob(const NetworkParams& params, double p_t);

SchemeDerived ftp_derive(const NetworkParams& params, double p_t);

double ftp_bs_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_b,
                     const ChebyshevGrid& grid);

double ftp_d2d_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_d,
                      const ChebyshevGrid& grid);

double ftp_sum_rate(const NetworkParams& params, const SchemeDerived& derived,
                    const ChebyshevGrid& grid, double rel_tol = 1e-6);

// ---------------------------------------------------------------------------
// Adaptive transmission probability

double atp_protection_radius(const NetworkParams& params, double beta_th_mw);
double atp_w_constant(const NetworkParams& params, double beta_th_mw);

/// (1 - exp(-W pi_o)) / (W pi_o), continued by 1 at W pi_o = 0.
double atp_transmit_prob(double w, double pi_o);

/// Right-hand side of the self-consistent operable probability: the disk
/// average of min(1, harvest / spend) given a candidate pi_o.
double atp_operable_map(const NetworkParams& params, double w, double pi_o);

SchemeDerived atp_solve(const NetworkParams& params, double beta_th_mw,
                        const FixedPointOptions& options = {});

double atp_bs_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_b,
                     const ChebyshevGrid& grid);

/// Integral over v in [r_p^2, inf) of 1 / (1 + r_d^(-alpha) v^(alpha/2) / gamma_d).
/// Arctangent closed form at alpha = 4, numeric quadrature otherwise.
double atp_interference_integral(double alpha, double pair_distance_m, double gamma_d,
                                 double protection_radius_m, double rel_tol = 1e-9);

double atp_d2d_outage(const NetworkParams& params, const SchemeDerived& derived, double gamma_d,
                      const ChebyshevGrid& grid);

double atp_sum_rate(const NetworkParams& params, const SchemeDerived& derived,
                    const ChebyshevGrid& grid, double rel_tol = 1e-6);

struct BetaOptimum {
    double beta_th_dbm = 0.0;
    double sum_rate = 0.0;
};

/// Exhaustive sweep of f over lo, lo + step, ..., hi; ties go to the smaller argument.
BetaOptimum grid_argmax(double lo, double hi, double step, const std::function<double(double)>& f);

/// Grid search of the ATP sum-rate over beta_th in [lo_dbm, hi_dbm].
BetaOptimum optimize_beta_th(const NetworkParams& params, double lo_dbm, double hi_dbm,
                             double step_db, const ChebyshevGrid& grid);

// ---------------------------------------------------------------------------
// Scheme-generic helpers

SchemeDerived derive(const NetworkParams& params, const SchemeConfig& scheme);

double bs_outage(const NetworkParams& params, const SchemeConfig& scheme,
                 const SchemeDerived& derived, double gamma_b, const ChebyshevGrid& grid);
double d2d_outage(const NetworkParams& params, const SchemeConfig& scheme,
                  const SchemeDerived& derived, double gamma_d, const ChebyshevGrid& grid);
double sum_rate(const NetworkParams& params, const SchemeConfig& scheme,
                const SchemeDerived& derived, const ChebyshevGrid& grid, double rel_tol = 1e-6);

OutageCurve bs_outage_curve(const NetworkParams& params, const SchemeConfig& scheme,
                            const SchemeDerived& derived, const std::vector<double>& thresholds,
                            const ChebyshevGrid& grid);
OutageCurve d2d_outage_curve(const NetworkParams& params, const SchemeConfig& scheme,
                             const SchemeDerived& derived, const std::vector<double>& thresholds,
                             const ChebyshevGrid& grid);

/// weight * lambda_t * pi R^2 / ln 2 * integral of (1 - P_out(x)) / (1 + x).
/// The integrand is cut to zero once the success probability drops below 1e-9.
double sum_rate_from_outage(double active_density, double cell_radius_m, double weight,
                            const std::function<double(double)>& outage, double rel_tol = 1e-6);

}  // namespace ehd2d
