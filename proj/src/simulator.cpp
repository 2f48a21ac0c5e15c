#include "ehd2d/simulator.hpp"

#include "ehd2d/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace ehd2d {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double exp1(Rng& rng) {
    std::exponential_distribution<double> dist(1.0);
    return dist(rng);
}

bool bernoulli(Rng& rng, double p) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < p;
}

// Uniform bucket grid over the square [-extent, extent]^2 for short-range
// neighbour queries.
class NeighborGrid {
public:
    NeighborGrid(double extent, double reach) : extent_(extent) {
        cell_ = std::max(reach, 2.0 * extent / 64.0);
        dim_ = std::max(1, static_cast<int>(std::ceil(2.0 * extent / cell_)));
        buckets_.resize(static_cast<std::size_t>(dim_) * dim_);
    }

    void insert(std::size_t id, const PlanarPoint& p) { buckets_[index(cell_of(p.x_m), cell_of(p.y_m))].push_back(id); }

    /// Calls f(j) for every stored j within one bucket ring of p; stops as
    /// soon as f returns true and reports whether it did.
    template <class F>
    bool any_near(const PlanarPoint& p, F&& f) const {
        const int cx = cell_of(p.x_m);
        const int cy = cell_of(p.y_m);
        for (int gx = std::max(0, cx - 1); gx <= std::min(dim_ - 1, cx + 1); ++gx) {
            for (int gy = std::max(0, cy - 1); gy <= std::min(dim_ - 1, cy + 1); ++gy) {
                for (std::size_t j : buckets_[index(gx, gy)]) {
                    if (f(j)) return true;
                }
            }
        }
        return false;
    }

private:
    int cell_of(double v) const {
        return std::clamp(static_cast<int>(std::floor((v + extent_) / cell_)), 0, dim_ - 1);
    }
    std::size_t index(int gx, int gy) const { return static_cast<std::size_t>(gx) * dim_ + gy; }

    double extent_;
    double cell_ = 1.0;
    int dim_ = 1;
    std::vector<std::vector<std::size_t>> buckets_;
};

void charge(CellRealization& state, const std::vector<double>& spent) {
    if (state.battery_mwslots.empty()) return;
    for (std::size_t i = 0; i < spent.size(); ++i) {
        state.battery_mwslots[i] -= spent[i];
        if (state.battery_mwslots[i] < -1e-12) {
            throw std::logic_error("battery underflow: operable device could not afford its spend");
        }
    }
}

// SINR at the BS and at every measured transmitting pair.
void measure_links(const CellRealization& state, const NetworkParams& p,
                   const std::vector<std::size_t>& active, const std::vector<double>& weights,
                   Rng& rng, SlotOutcome& out) {
    const double alpha = p.path_loss_exponent;
    double bs_interference = 0.0;
    for (std::size_t j : active) {
        bs_interference += p.d2d_power_mw * exp1(rng) * path_gain(norm(state.d2d_tx[j]), alpha);
    }
    const double bs_signal =
        p.cell_user_power_mw * exp1(rng) * path_gain(norm(state.cell_user), alpha);
    out.sinr_bs = bs_signal / (bs_interference + p.noise_power_mw);

    const double desired_gain = path_gain(p.pair_distance_m, alpha);
    for (std::size_t n = 0; n < active.size(); ++n) {
        const std::size_t i = active[n];
        if (!state.measured[i]) continue;
        const PlanarPoint& rx = state.d2d_rx[i];
        double interference = 0.0;
        for (std::size_t j : active) {
            if (j == i) continue;
            interference += p.d2d_power_mw * exp1(rng) * path_gain(distance(state.d2d_tx[j], rx), alpha);
        }
        interference +=
            p.cell_user_power_mw * exp1(rng) * path_gain(distance(state.cell_user, rx), alpha);
        const double signal = p.d2d_power_mw * exp1(rng) * desired_gain;
        out.sinr_d2d.push_back({i, signal / (interference + p.noise_power_mw), weights[n]});
    }
}

}  // namespace

CellRealization deploy_cell(const NetworkParams& params, double field_radius_m, Rng& rng,
                            std::uint64_t stream) {
    CellRealization state;
    state.rng_stream = stream;
    state.d2d_tx = sample_ppp_disk(params.d2d_density_per_m2, field_radius_m, rng);
    state.d2d_rx.reserve(state.d2d_tx.size());
    state.measured.reserve(state.d2d_tx.size());
    const double r2 = params.cell_radius_m * params.cell_radius_m;
    for (const auto& tx : state.d2d_tx) {
        state.d2d_rx.push_back(place_receiver(tx, params.pair_distance_m, rng));
        state.measured.push_back(tx.x_m * tx.x_m + tx.y_m * tx.y_m <= r2 ? 1 : 0);
    }
    state.battery_mwslots.assign(state.d2d_tx.size(), 0.0);
    state.cell_user = sample_uniform_disk(params.cell_radius_m, rng);
    return state;
}

std::vector<double> run_dl_subslot(CellRealization& state, const NetworkParams& params, Rng& rng) {
    std::vector<double> harvested(state.d2d_tx.size(), 0.0);
    const double scale = params.harvest_efficiency * params.bs_power_mw;
    for (std::size_t i = 0; i < harvested.size(); ++i) {
        harvested[i] = scale * exp1(rng) * path_gain(norm(state.d2d_tx[i]), params.path_loss_exponent);
        if (!state.battery_mwslots.empty()) state.battery_mwslots[i] += harvested[i];
    }
    return harvested;
}

std::vector<std::uint8_t> battery_operable(const CellRealization& state,
                                           const NetworkParams& params) {
    std::vector<std::uint8_t> flags(state.battery_mwslots.size());
    for (std::size_t i = 0; i < flags.size(); ++i) {
        flags[i] = state.battery_mwslots[i] >= params.energy_threshold_mwslots ? 1 : 0;
    }
    return flags;
}

SlotOutcome run_ul_subslot_ftp(CellRealization& state, const NetworkParams& params, double p_t,
                               std::vector<std::uint8_t> operable, Rng& rng,
                               const UplinkOptions& options) {
    const std::size_t n = state.d2d_tx.size();
    SlotOutcome out;
    out.operable_flags = std::move(operable);
    out.transmit_flags.assign(n, 0);
    out.spent_mwslots.assign(n, 0.0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.operable_flags[i] && bernoulli(rng, p_t)) {
            out.transmit_flags[i] = 1;
            out.spent_mwslots[i] = params.d2d_power_mw;
            active.push_back(i);
        }
    }
    charge(state, out.spent_mwslots);
    if (options.link_metrics) {
        const std::vector<double> weights(active.size(), 0.5);
        measure_links(state, params, active, weights, rng, out);
    }
    return out;
}

SlotOutcome run_ul_subslot_ftp(CellRealization& state, const NetworkParams& params, double p_t,
                               Rng& rng, const UplinkOptions& options) {
    return run_ul_subslot_ftp(state, params, p_t, battery_operable(state, params), rng, options);
}

double max_sensing_gain() { return 53.0 * std::numbers::ln2; }

double sensing_gain(std::uint64_t slot_key, std::size_t i, std::size_t j) {
    const std::uint64_t lo = std::min(i, j);
    const std::uint64_t hi = std::max(i, j);
    const std::uint64_t z = splitmix64(slot_key ^ splitmix64((lo << 32) ^ hi));
    // u in (0, 1]
    const double u = static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
    return -std::log(u);
}

SlotOutcome run_ul_subslot_atp(CellRealization& state, const NetworkParams& params,
                               double beta_th_mw, std::vector<std::uint8_t> operable, Rng& rng,
                               const UplinkOptions& options) {
    const std::size_t n = state.d2d_tx.size();
    const double alpha = params.path_loss_exponent;
    const double ts = params.sense_window;
    SlotOutcome out;
    out.operable_flags = std::move(operable);
    out.transmit_flags.assign(n, 0);
    out.spent_mwslots.assign(n, 0.0);
    out.backoffs.assign(n, 0.0);
    out.sensing_key = rng();

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> contenders;
    double extent = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.operable_flags[i]) continue;
        out.backoffs[i] = unit(rng);
        contenders.push_back(i);
        extent = std::max({extent, std::abs(state.d2d_tx[i].x_m), std::abs(state.d2d_tx[i].y_m)});
    }
    // Ties cannot occur with continuous backoffs; index order settles them anyway.
    std::sort(contenders.begin(), contenders.end(), [&](std::size_t a, std::size_t b) {
        return out.backoffs[a] < out.backoffs[b] || (out.backoffs[a] == out.backoffs[b] && a < b);
    });

    // Beyond this range no gain the sensing channel can produce reaches beta_th.
    const double reach = std::pow(params.d2d_power_mw * max_sensing_gain() / beta_th_mw, 1.0 / alpha);
    const std::uint64_t key = out.sensing_key;
    const double reach_sq = reach * reach;
    auto senses = [&](std::size_t i, std::size_t j) {
        const double d2 = distance_sq(state.d2d_tx[i], state.d2d_tx[j]);
        if (d2 > reach_sq) return false;
        const double spread = alpha == 4.0 ? d2 * d2 : std::pow(d2, 0.5 * alpha);
        return sensing_gain(key, i, j) >= beta_th_mw * spread / params.d2d_power_mw;
    };

    NeighborGrid grid(extent + 1.0, reach);
    std::vector<std::size_t> active;
    if (options.sensing_rule == SensingRule::EarlierContender) {
        // Rank in backoff order lets the grid hold every contender at once.
        std::vector<std::size_t> rank(n, 0);
        for (std::size_t r = 0; r < contenders.size(); ++r) {
            rank[contenders[r]] = r;
            grid.insert(contenders[r], state.d2d_tx[contenders[r]]);
        }
        for (std::size_t i : contenders) {
            const bool blocked = grid.any_near(state.d2d_tx[i], [&](std::size_t j) {
                return rank[j] < rank[i] && senses(i, j);
            });
            if (!blocked) active.push_back(i);
        }
    } else {
        for (std::size_t i : contenders) {
            const bool blocked =
                grid.any_near(state.d2d_tx[i], [&](std::size_t j) { return senses(i, j); });
            if (!blocked) {
                active.push_back(i);
                grid.insert(i, state.d2d_tx[i]);
            }
        }
    }

    std::vector<double> weights;
    weights.reserve(active.size());
    for (std::size_t i : contenders) out.spent_mwslots[i] = params.sense_power_mw * out.backoffs[i] * ts;
    for (std::size_t i : active) {
        out.transmit_flags[i] = 1;
        out.spent_mwslots[i] += params.d2d_power_mw * (1.0 - out.backoffs[i] * ts);
        weights.push_back(0.5 * (1.0 - out.backoffs[i] * ts));
    }
    charge(state, out.spent_mwslots);
    if (options.link_metrics) measure_links(state, params, active, weights, rng, out);
    return out;
}

SlotOutcome run_ul_subslot_atp(CellRealization& state, const NetworkParams& params,
                               double beta_th_mw, Rng& rng, const UplinkOptions& options) {
    return run_ul_subslot_atp(state, params, beta_th_mw, battery_operable(state, params), rng, options);
}

bool admitted_set_respects_sensing(const CellRealization& state, const NetworkParams& params,
                                   double beta_th_mw, const SlotOutcome& outcome) {
    std::vector<std::size_t> admitted;
    for (std::size_t i = 0; i < outcome.transmit_flags.size(); ++i) {
        if (outcome.transmit_flags[i]) {
            if (!outcome.operable_flags[i]) return false;
            admitted.push_back(i);
        }
    }
    for (std::size_t i : admitted) {
        for (std::size_t j : admitted) {
            if (i == j || outcome.backoffs[j] > outcome.backoffs[i]) continue;
            if (outcome.backoffs[j] == outcome.backoffs[i] && j > i) continue;
            const double received = params.d2d_power_mw * sensing_gain(outcome.sensing_key, i, j) *
                                    path_gain(distance(state.d2d_tx[i], state.d2d_tx[j]),
                                              params.path_loss_exponent);
            if (received >= beta_th_mw) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

void SimulationConfig::validate(const NetworkParams& params, const SchemeConfig& scheme) const {
    params.validate();
    validate_scheme(scheme);
    if (burn_in < 0 || slots <= burn_in) throw std::invalid_argument("sim: slots must exceed burn_in >= 0");
    if (trials < 1) throw std::invalid_argument("sim: trials must be >= 1");
    if (!(extended_radius_factor >= 1.0)) throw std::invalid_argument("sim: extended_radius_factor must be >= 1");
    for (double g : gamma_grid_b) if (!(g >= 0.0)) throw std::invalid_argument("sim: gamma_b must be >= 0");
    for (double g : gamma_grid_d) if (!(g >= 0.0)) throw std::invalid_argument("sim: gamma_d must be >= 0");
    if (imposed_operable_prob && !(*imposed_operable_prob >= 0.0 && *imposed_operable_prob <= 1.0)) {
        throw std::invalid_argument("sim: imposed_operable_prob must lie in [0, 1]");
    }
    if (field_mode == FieldMode::Cell) {
        // An operable device must always afford the most expensive uplink.
        if (params.energy_threshold_mwslots < params.d2d_power_mw) {
            throw std::invalid_argument("sim: energy_threshold must be >= d2d_power");
        }
        if (std::holds_alternative<AtpScheme>(scheme) &&
            !(params.sense_power_mw * params.sense_window < params.energy_threshold_mwslots)) {
            throw std::invalid_argument("sim: sensing energy must stay below energy_threshold");
        }
    }
}

void TrialTally::merge(const TrialTally& other) {
    ul_slots += other.ul_slots;
    node_slots += other.node_slots;
    operable += other.operable;
    transmitting += other.transmitting;
    if (bs_outages.size() < other.bs_outages.size()) bs_outages.resize(other.bs_outages.size(), 0);
    for (std::size_t k = 0; k < other.bs_outages.size(); ++k) bs_outages[k] += other.bs_outages[k];
    d2d_samples += other.d2d_samples;
    if (d2d_outages.size() < other.d2d_outages.size()) d2d_outages.resize(other.d2d_outages.size(), 0);
    for (std::size_t k = 0; k < other.d2d_outages.size(); ++k) d2d_outages[k] += other.d2d_outages[k];
    rate_sum += other.rate_sum;
    rate_sq_sum += other.rate_sq_sum;
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(0xd2d0000000000000ULL + trial_index));
}

namespace {

double resolve_imposed_prob(const NetworkParams& params, const SchemeConfig& scheme,
                            const SimulationConfig& sim) {
    if (sim.imposed_operable_prob) return *sim.imposed_operable_prob;
    return derive(params, scheme).operable_prob;
}

TrialTally run_trial_impl(const NetworkParams& params, const SchemeConfig& scheme,
                          const SimulationConfig& sim, int trial_index, double imposed_prob) {
    Rng rng(trial_stream_seed(sim.seed, static_cast<std::uint64_t>(trial_index)));
    const bool extended = sim.field_mode == FieldMode::Extended;
    const double field_radius = params.cell_radius_m * (extended ? sim.extended_radius_factor : 1.0);
    const UplinkOptions options{sim.link_metrics, sim.sensing_rule};

    TrialTally tally;
    tally.bs_outages.assign(sim.gamma_grid_b.size(), 0);
    tally.d2d_outages.assign(sim.gamma_grid_d.size(), 0);

    CellRealization state = deploy_cell(params, field_radius, rng, static_cast<std::uint64_t>(trial_index));
    if (extended) state.battery_mwslots.clear();

    for (long slot = 0; slot < sim.slots; ++slot) {
        std::vector<std::uint8_t> operable;
        std::vector<double> harvested;
        if (extended) {
            if (slot > 0) {
                state = deploy_cell(params, field_radius, rng, static_cast<std::uint64_t>(trial_index));
                state.battery_mwslots.clear();
            }
            operable.resize(state.d2d_tx.size());
            for (auto& flag : operable) flag = bernoulli(rng, imposed_prob) ? 1 : 0;
        } else {
            if (sim.redraw_cell_user_per_slot && slot > 0) {
                state.cell_user = sample_uniform_disk(params.cell_radius_m, rng);
            }
            harvested = run_dl_subslot(state, params, rng);
            operable = battery_operable(state, params);
        }

        SlotOutcome out;
        if (const auto* ftp = std::get_if<FtpScheme>(&scheme)) {
            out = run_ul_subslot_ftp(state, params, ftp->transmit_prob, std::move(operable), rng, options);
        } else {
            out = run_ul_subslot_atp(state, params, std::get<AtpScheme>(scheme).beta_th_mw,
                                     std::move(operable), rng, options);
        }
        if (slot < sim.burn_in) continue;

        ++tally.ul_slots;
        for (std::size_t i = 0; i < state.d2d_tx.size(); ++i) {
            if (!state.measured[i]) continue;
            ++tally.node_slots;
            tally.operable += out.operable_flags[i];
            tally.transmitting += out.transmit_flags[i];
        }
        if (!sim.link_metrics) continue;
        for (std::size_t k = 0; k < sim.gamma_grid_b.size(); ++k) {
            if (out.sinr_bs < sim.gamma_grid_b[k]) ++tally.bs_outages[k];
        }
        double slot_rate = 0.0;
        for (const auto& link : out.sinr_d2d) {
            ++tally.d2d_samples;
            for (std::size_t k = 0; k < sim.gamma_grid_d.size(); ++k) {
                if (link.sinr < sim.gamma_grid_d[k]) ++tally.d2d_outages[k];
            }
            slot_rate += link.rate_weight * std::log2(1.0 + link.sinr);
        }
        tally.rate_sum += slot_rate;
        tally.rate_sq_sum += slot_rate * slot_rate;
    }
    return tally;
}

Estimate ratio_estimate(const std::vector<TrialTally>& trials, long total_num, long total_den,
                        double (*per_trial)(const TrialTally&, bool&)) {
    Estimate e;
    e.n = total_den;
    if (total_den <= 0) return e;
    e.mean = static_cast<double>(total_num) / static_cast<double>(total_den);
    if (trials.size() >= 2) {
        std::vector<double> values;
        for (const auto& t : trials) {
            bool ok = false;
            const double v = per_trial(t, ok);
            if (ok) values.push_back(v);
        }
        if (values.size() >= 2) {
            const double m = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
            double ss = 0.0;
            for (double v : values) ss += (v - m) * (v - m);
            e.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
            return e;
        }
    }
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(total_den));
    return e;
}

}  // namespace

TrialTally run_trial(const NetworkParams& params, const SchemeConfig& scheme,
                     const SimulationConfig& sim, int trial_index) {
    sim.validate(params, scheme);
    const double imposed = sim.field_mode == FieldMode::Extended ? resolve_imposed_prob(params, scheme, sim) : 0.0;
    return run_trial_impl(params, scheme, sim, trial_index, imposed);
}

SimulationReport aggregate_trials(const NetworkParams& params, const SimulationConfig& sim,
                                  std::vector<TrialTally> trials) {
    SimulationReport report;
    report.gamma_grid_b = sim.gamma_grid_b;
    report.gamma_grid_d = sim.gamma_grid_d;
    TrialTally total;
    total.bs_outages.assign(sim.gamma_grid_b.size(), 0);
    total.d2d_outages.assign(sim.gamma_grid_d.size(), 0);
    for (const auto& t : trials) total.merge(t);
    report.ul_slots = total.ul_slots;
    report.d2d_samples = total.d2d_samples;

    report.operable_prob = ratio_estimate(trials, total.operable, total.node_slots,
                                          [](const TrialTally& t, bool& ok) {
                                              ok = t.node_slots > 0;
                                              return ok ? double(t.operable) / t.node_slots : 0.0;
                                          });
    report.transmit_prob = ratio_estimate(trials, total.transmitting, total.operable,
                                          [](const TrialTally& t, bool& ok) {
                                              ok = t.operable > 0;
                                              return ok ? double(t.transmitting) / t.operable : 0.0;
                                          });

    const double cell_area = std::numbers::pi * params.cell_radius_m * params.cell_radius_m;
    Estimate& density = report.active_density_per_m2;
    density.n = total.ul_slots;
    if (total.ul_slots > 0) {
        density.mean = static_cast<double>(total.transmitting) / (total.ul_slots * cell_area);
        if (trials.size() >= 2) {
            std::vector<double> values;
            for (const auto& t : trials) {
                if (t.ul_slots > 0) values.push_back(double(t.transmitting) / (t.ul_slots * cell_area));
            }
            const double m = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
            double ss = 0.0;
            for (double v : values) ss += (v - m) * (v - m);
            density.std_error = values.size() >= 2 ? std::sqrt(ss / (values.size() - 1) / values.size()) : 0.0;
        }
    }

    for (std::size_t k = 0; k < sim.gamma_grid_b.size(); ++k) {
        Estimate e;
        e.n = total.ul_slots;
        if (e.n > 0) {
            e.mean = double(total.bs_outages[k]) / e.n;
            std::vector<double> values;
            for (const auto& t : trials) if (t.ul_slots > 0) values.push_back(double(t.bs_outages[k]) / t.ul_slots);
            if (values.size() >= 2) {
                const double m = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
                double ss = 0.0;
                for (double v : values) ss += (v - m) * (v - m);
                e.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
            } else {
                e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / e.n);
            }
        }
        report.bs_outage.push_back(e);
    }
    for (std::size_t k = 0; k < sim.gamma_grid_d.size(); ++k) {
        Estimate e;
        e.n = total.d2d_samples;
        if (e.n > 0) {
            e.mean = double(total.d2d_outages[k]) / e.n;
            std::vector<double> values;
            for (const auto& t : trials) if (t.d2d_samples > 0) values.push_back(double(t.d2d_outages[k]) / t.d2d_samples);
            if (values.size() >= 2) {
                const double m = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
                double ss = 0.0;
                for (double v : values) ss += (v - m) * (v - m);
                e.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
            } else {
                e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / e.n);
            }
        }
        report.d2d_outage.push_back(e);
    }

    Estimate& rate = report.sum_rate;
    rate.n = total.ul_slots;
    if (total.ul_slots > 0) {
        const double n = static_cast<double>(total.ul_slots);
        rate.mean = total.rate_sum / n;
        const double var = std::max(0.0, total.rate_sq_sum / n - rate.mean * rate.mean);
        rate.std_error = std::sqrt(var / n);
    }
    report.trials = std::move(trials);
    return report;
}

SimulationReport estimate_metrics(const NetworkParams& params, const SchemeConfig& scheme,
                                  const SimulationConfig& sim) {
    sim.validate(params, scheme);
    const bool extended = sim.field_mode == FieldMode::Extended;
    const double imposed = extended ? resolve_imposed_prob(params, scheme, sim) : 0.0;

    std::vector<TrialTally> tallies(static_cast<std::size_t>(sim.trials));
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int workers = std::clamp(sim.threads > 0 ? sim.threads : hw, 1, sim.trials);
    if (workers == 1) {
        for (int t = 0; t < sim.trials; ++t) tallies[t] = run_trial_impl(params, scheme, sim, t, imposed);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int t = next++; t < sim.trials; t = next++) {
                        tallies[t] = run_trial_impl(params, scheme, sim, t, imposed);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) if (e) std::rethrow_exception(e);
    }
    SimulationReport report = aggregate_trials(params, sim, std::move(tallies));
    if (extended) report.imposed_operable_prob = imposed;
    return report;
}

double sample_origin_interference(double intensity, double field_radius_m, double tx_power_mw,
                                  double alpha, Rng& rng) {
    double total = 0.0;
    for (const auto& p : sample_ppp_disk(intensity, field_radius_m, rng)) {
        total += tx_power_mw * exp1(rng) * path_gain(norm(p), alpha);
    }
    return total;
}

}  // namespace ehd2d
