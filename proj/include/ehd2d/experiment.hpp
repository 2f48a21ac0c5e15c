#pragma once

#include "ehd2d/analysis.hpp"
#include "ehd2d/core.hpp"
#include "ehd2d/simulator.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehd2d {

/// Malformed or inconsistent experiment description (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitValidation = 4,
};

struct SweepSpec {
    std::string parameter;  // p_t, beta_th_dbm, eta, lambda_d, gamma_b_db, gamma_d_db
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start, start + step, ... up to stop (inclusive up to rounding).
    std::vector<double> values() const;
};

/// Named set of parameter overrides; every sweep is repeated once per series.
struct SeriesSpec {
    std::string label;
    std::vector<std::pair<std::string, double>> overrides;
};

struct ValidationSpec {
    double operable_tol = 0.02;
    double transmit_tol = 0.02;
    double outage_tol = 0.03;
    double sum_rate_rel_tol = 0.10;
    /// Compare pi_o against a battery-driven cell-mode run.
    bool check_operable = true;
    long operable_slots = 10000;
    long operable_burn_in = 500;
    int operable_trials = 10;
};

struct ExperimentConfig {
    NetworkParams network = default_network();
    SchemeConfig scheme = FtpScheme{};
    std::optional<SweepSpec> sweep;
    std::vector<SeriesSpec> series;
    std::vector<double> thresholds_db{0.0};
    SimulationConfig sim;
    int quadrature_order = 100;
    double quadrature_rel_tol = 1e-6;
    std::string csv_path;
    int precision = 6;
    ValidationSpec validation;
};

/// Parses the JSON experiment description. Physical quantities use dBm,
/// meters and dB. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved configuration, defaults included, as pretty JSON.
std::string resolved_config_json(const ExperimentConfig& config);

/// Applies one named parameter (a sweep parameter name) to a copy of the config.
ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& name, double value);

struct MetricsReport {
    bool simulated = false;
    std::string series;
    std::string sweep_param;
    double sweep_value = 0.0;
    SchemeDerived derived;
    OutageCurve bs_outage;
    OutageCurve d2d_outage;
    double sum_rate = 0.0;

    // simulation only
    double operable_prob_stderr = 0.0;
    double transmit_prob_stderr = 0.0;
    double active_density_stderr = 0.0;
    std::vector<double> bs_outage_stderr;
    std::vector<double> d2d_outage_stderr;
    double sum_rate_stderr = 0.0;
    long n_samples = 0;
};

std::vector<MetricsReport> cmd_analyze(const ExperimentConfig& config);
std::vector<MetricsReport> cmd_simulate(const ExperimentConfig& config);

/// One CSV row per (series, sweep point, threshold).
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<MetricsReport>& reports);

struct ValidationCheck {
    std::string metric;
    double analysis = 0.0;
    double simulation = 0.0;
    double std_error = 0.0;
    double tolerance = 0.0;  // absolute
    bool pass = false;
};

struct ValidationHooks {
    /// Applied to the analytical derived quantities before any outage is
    /// evaluated. Lets tests corrupt the analysis on purpose.
    std::function<void(SchemeDerived&)> corrupt_analysis;
};

std::vector<ValidationCheck> cmd_validate(const ExperimentConfig& config,
                                          const ValidationHooks& hooks = {});

void print_validation_table(std::ostream& out, const std::vector<ValidationCheck>& checks);

/// Locale-independent shortest-general formatting at the given precision.
std::string format_number(double value, int precision);

}  // namespace ehd2d
