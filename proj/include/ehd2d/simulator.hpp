#pragma once

#include "ehd2d/core.hpp"
#include "ehd2d/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ehd2d {

/// Where devices live and how their operable state is produced.
enum class FieldMode {
    /// Devices on the cell disk; operability comes from each battery.
    Cell,
    /// Devices on a disk of extended_radius_factor * R, redeployed every
    /// slot, each operable independently with a fixed probability. Only the
    /// BS and pairs whose transmitter lies inside the cell are measured.
    Extended,
};

/// ATP deferral rule applied in ascending backoff order.
enum class SensingRule {
    /// Defer when any operable contender with an earlier backoff is sensed
    /// above beta_th, whether or not that contender ends up transmitting.
    EarlierContender,
    /// Defer only when an already admitted transmitter is sensed above beta_th.
    AdmittedOnly,
};

struct CellRealization {
    PlanarPoint bs_at_origin{};
    PlanarPoint cell_user{};
    std::vector<PlanarPoint> d2d_tx;
    std::vector<PlanarPoint> d2d_rx;
    /// Battery level per transmitter; empty when operability is imposed.
    std::vector<double> battery_mwslots;
    /// Transmitter lies inside the cell disk and contributes to statistics.
    std::vector<std::uint8_t> measured;
    std::uint64_t rng_stream = 0;
};

struct LinkSample {
    std::size_t tx = 0;
    double sinr = 0.0;
    double rate_weight = 0.0;
};

struct SlotOutcome {
    std::vector<std::uint8_t> operable_flags;
    std::vector<std::uint8_t> transmit_flags;
    std::vector<double> backoffs;            // ATP only, 0 for non-operable devices
    std::vector<double> spent_mwslots;
    std::vector<double> harvested_mwslots;   // preceding DL sub-slot, cell mode only
    double sinr_bs = 0.0;
    std::vector<LinkSample> sinr_d2d;        // measured transmitting pairs only
    std::uint64_t sensing_key = 0;           // ATP: seed of the reciprocal sensing gains
};

struct UplinkOptions {
    bool link_metrics = true;
    SensingRule sensing_rule = SensingRule::EarlierContender;
};

/// Deploys a PPP of transmitters on a disk of field_radius_m around the BS,
/// their receivers, and the cellular user (uniform on the cell disk).
/// Batteries start empty.
CellRealization deploy_cell(const NetworkParams& params, double field_radius_m, Rng& rng,
                            std::uint64_t stream = 0);

/// DL sub-slot: every battery gains eta P_b |h|^2 d^(-alpha), |h|^2 ~ Exp(1).
std::vector<double> run_dl_subslot(CellRealization& state, const NetworkParams& params, Rng& rng);

std::vector<std::uint8_t> battery_operable(const CellRealization& state,
                                           const NetworkParams& params);

SlotOutcome run_ul_subslot_ftp(CellRealization& state, const NetworkParams& params, double p_t,
                               std::vector<std::uint8_t> operable, Rng& rng,
                               const UplinkOptions& options = {});
SlotOutcome run_ul_subslot_ftp(CellRealization& state, const NetworkParams& params, double p_t,
                               Rng& rng, const UplinkOptions& options = {});

SlotOutcome run_ul_subslot_atp(CellRealization& state, const NetworkParams& params,
                               double beta_th_mw, std::vector<std::uint8_t> operable, Rng& rng,
                               const UplinkOptions& options = {});
SlotOutcome run_ul_subslot_atp(CellRealization& state, const NetworkParams& params,
                               double beta_th_mw, Rng& rng, const UplinkOptions& options = {});

/// Reciprocal sensing channel gain between devices i and j for one slot,
/// Exp(1)-distributed and bounded by max_sensing_gain().
double sensing_gain(std::uint64_t slot_key, std::size_t i, std::size_t j);
double max_sensing_gain();

/// True when every admitted pair (earlier j, later i) was sensed below beta_th.
bool admitted_set_respects_sensing(const CellRealization& state, const NetworkParams& params,
                                   double beta_th_mw, const SlotOutcome& outcome);

struct SimulationConfig {
    long slots = 10000;   // UL sub-slots per trial, burn-in included
    long burn_in = 500;
    int trials = 10;
    std::uint64_t seed = 1;
    FieldMode field_mode = FieldMode::Cell;
    SensingRule sensing_rule = SensingRule::EarlierContender;
    double extended_radius_factor = 3.0;
    bool redraw_cell_user_per_slot = false;
    bool link_metrics = true;
    std::vector<double> gamma_grid_b;  // linear thresholds
    std::vector<double> gamma_grid_d;
    int threads = 0;  // 0: hardware concurrency
    /// Extended mode: per-device operable probability. Unset means the
    /// analytical operable probability of the scheme.
    std::optional<double> imposed_operable_prob;

    /// Throws std::invalid_argument for inconsistent settings.
    void validate(const NetworkParams& params, const SchemeConfig& scheme) const;
};

/// Raw counters of one trial; merging tallies is plain addition.
struct TrialTally {
    long ul_slots = 0;
    long node_slots = 0;
    long operable = 0;
    long transmitting = 0;
    std::vector<long> bs_outages;
    long d2d_samples = 0;
    std::vector<long> d2d_outages;
    double rate_sum = 0.0;
    double rate_sq_sum = 0.0;

    void merge(const TrialTally& other);
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
};

struct SimulationReport {
    Estimate operable_prob;
    Estimate transmit_prob;  // transmitting given operable
    Estimate active_density_per_m2;
    Estimate sum_rate;
    std::vector<double> gamma_grid_b;
    std::vector<double> gamma_grid_d;
    std::vector<Estimate> bs_outage;
    std::vector<Estimate> d2d_outage;
    long ul_slots = 0;
    long d2d_samples = 0;
    double imposed_operable_prob = -1.0;  // extended mode only
    std::vector<TrialTally> trials;
};

/// Seed of the private stream of one trial.
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index);

/// Runs a single trial on its own stream; estimate_metrics is the merge of these.
TrialTally run_trial(const NetworkParams& params, const SchemeConfig& scheme,
                     const SimulationConfig& sim, int trial_index);

SimulationReport aggregate_trials(const NetworkParams& params, const SimulationConfig& sim,
                                  std::vector<TrialTally> trials);

SimulationReport estimate_metrics(const NetworkParams& params, const SchemeConfig& scheme,
                                  const SimulationConfig& sim);

/// Aggregate power received at the origin from a PPP of always-on
/// transmitters with Rayleigh fading on a disk of the given radius.
double sample_origin_interference(double intensity, double field_radius_m, double tx_power_mw,
                                  double alpha, Rng& rng);

}  // namespace ehd2d
