#include "ehd2d/experiment.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <set>
#include <sstream>

namespace ehd2d {

using nlohmann::json;

namespace {

const std::set<std::string> kSweepParameters{"p_t", "eta", "lambda_d", "beta_th_dbm", "gamma_b_db",
                                             "gamma_d_db"};

void reject_unknown(const json& object, const std::string& where, const std::set<std::string>& allowed) {
    if (!object.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : object.items()) {
        if (!allowed.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

template <class T>
void read(const json& object, const char* key, T& target, const std::string& where) {
    if (!object.contains(key)) return;
    try {
        target = object.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

double read_dbm(const json& object, const char* key, double fallback_mw, const std::string& where) {
    double dbm = mw_to_dbm(fallback_mw);
    read(object, key, dbm, where);
    return dbm_to_mw(dbm);
}

FieldMode parse_field_mode(const std::string& s) {
    if (s == "cell") return FieldMode::Cell;
    if (s == "extended") return FieldMode::Extended;
    throw ConfigError("sim.field_mode: expected 'cell' or 'extended', got '" + s + "'");
}

SensingRule parse_sensing_rule(const std::string& s) {
    if (s == "earlier_contender") return SensingRule::EarlierContender;
    if (s == "admitted_only") return SensingRule::AdmittedOnly;
    throw ConfigError("sim.sensing_rule: expected 'earlier_contender' or 'admitted_only', got '" + s + "'");
}

void check_parameter_scheme(const std::string& name, const SchemeConfig& scheme) {
    if (!kSweepParameters.count(name)) throw ConfigError("unknown parameter '" + name + "'");
    if (name == "p_t" && !std::holds_alternative<FtpScheme>(scheme)) {
        throw ConfigError("parameter p_t requires scheme type ftp");
    }
    if (name == "beta_th_dbm" && !std::holds_alternative<AtpScheme>(scheme)) {
        throw ConfigError("parameter beta_th_dbm requires scheme type atp");
    }
}

std::string describe_point(const MetricsReport& r) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    if (!r.series.empty()) s << "series " << r.series << ", ";
    if (!r.sweep_param.empty()) s << r.sweep_param << " = " << r.sweep_value;
    return s.str();
}

void validate_config(const ExperimentConfig& c) {
    try {
        c.network.validate();
        validate_scheme(c.scheme);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.quadrature_order < 1) throw ConfigError("quadrature.order must be >= 1");
    if (!(c.quadrature_rel_tol > 0.0)) throw ConfigError("quadrature.rel_tol must be > 0");
    if (c.precision < 1 || c.precision > 17) throw ConfigError("output.precision must lie in [1, 17]");
    if (c.thresholds_db.empty()) throw ConfigError("thresholds_db must not be empty");
}

struct Point {
    std::string series;
    std::string sweep_param;
    double sweep_value = 0.0;
    ExperimentConfig config;
};

std::vector<Point> expand_points(const ExperimentConfig& config) {
    std::vector<SeriesSpec> series = config.series;
    if (series.empty()) series.push_back({});
    std::vector<Point> points;
    for (const auto& s : series) {
        ExperimentConfig base = config;
        for (const auto& [name, value] : s.overrides) base = with_parameter(base, name, value);
        if (config.sweep) {
            for (double v : config.sweep->values()) {
                points.push_back({s.label, config.sweep->parameter, v, with_parameter(base, config.sweep->parameter, v)});
            }
        } else {
            points.push_back({s.label, "", 0.0, base});
        }
    }
    for (const auto& p : points) validate_config(p.config);
    return points;
}

std::vector<double> to_linear(const std::vector<double>& db) {
    std::vector<double> out;
    for (double v : db) out.push_back(db_to_linear(v));
    return out;
}

template <class F>
auto with_context(const std::string& context, F&& f) {
    try {
        return f();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(context + ": " + e.what(), e.partial_estimate(), e.residual());
    } catch (const NumericalError& e) {
        throw NumericalError(context + ": " + e.what(), e.partial_estimate());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

MetricsReport analyze_point(const ExperimentConfig& c, const std::function<void(SchemeDerived&)>& corrupt = {}) {
    MetricsReport r;
    const auto grid = chebyshev_grid(c.quadrature_order, c.network.cell_radius_m);
    r.derived = derive(c.network, c.scheme);
    if (corrupt) corrupt(r.derived);
    const auto gammas = to_linear(c.thresholds_db);
    r.bs_outage = bs_outage_curve(c.network, c.scheme, r.derived, gammas, grid);
    r.d2d_outage = d2d_outage_curve(c.network, c.scheme, r.derived, gammas, grid);
    r.sum_rate = sum_rate(c.network, c.scheme, r.derived, grid, c.quadrature_rel_tol);
    return r;
}

SimulationConfig sim_for(const ExperimentConfig& c) {
    SimulationConfig sim = c.sim;
    sim.gamma_grid_b = to_linear(c.thresholds_db);
    sim.gamma_grid_d = sim.gamma_grid_b;
    return sim;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    if (!(step > 0.0)) throw ConfigError("sweep.step must be > 0");
    if (!(stop >= start)) throw ConfigError("sweep bounds must satisfy start <= stop");
    std::vector<double> out;
    const double span = (stop - start) / step;
    const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& name, double value) {
    check_parameter_scheme(name, config.scheme);
    ExperimentConfig c = config;
    if (name == "p_t") {
        std::get<FtpScheme>(c.scheme).transmit_prob = value;
    } else if (name == "beta_th_dbm") {
        std::get<AtpScheme>(c.scheme).beta_th_mw = dbm_to_mw(value);
    } else if (name == "eta") {
        c.network.harvest_efficiency = value;
    } else if (name == "lambda_d") {
        c.network.d2d_density_per_m2 = value;
    } else {
        c.thresholds_db = {value};
    }
    return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config",
                   {"network", "scheme", "sweep", "series", "thresholds_db", "sim", "quadrature", "output",
                    "validation"});
    ExperimentConfig c;

    if (root.contains("network")) {
        const json& n = root["network"];
        const std::string w = "network";
        reject_unknown(n, w,
                       {"cell_radius_m", "d2d_density_per_m2", "pair_distance_m", "path_loss_exponent",
                        "bs_power_dbm", "cell_user_power_dbm", "d2d_power_dbm", "sense_power_dbm",
                        "noise_power_dbm", "harvest_efficiency", "sense_window", "energy_threshold_factor"});
        NetworkParams& p = c.network;
        read(n, "cell_radius_m", p.cell_radius_m, w);
        read(n, "d2d_density_per_m2", p.d2d_density_per_m2, w);
        read(n, "pair_distance_m", p.pair_distance_m, w);
        read(n, "path_loss_exponent", p.path_loss_exponent, w);
        p.bs_power_mw = read_dbm(n, "bs_power_dbm", p.bs_power_mw, w);
        p.cell_user_power_mw = read_dbm(n, "cell_user_power_dbm", p.cell_user_power_mw, w);
        p.d2d_power_mw = read_dbm(n, "d2d_power_dbm", p.d2d_power_mw, w);
        p.sense_power_mw = read_dbm(n, "sense_power_dbm", p.sense_power_mw, w);
        p.noise_power_mw = read_dbm(n, "noise_power_dbm", p.noise_power_mw, w);
        read(n, "harvest_efficiency", p.harvest_efficiency, w);
        read(n, "sense_window", p.sense_window, w);
        double factor = 1.0;
        read(n, "energy_threshold_factor", factor, w);
        p.energy_threshold_mwslots = factor * p.d2d_power_mw;
    }

    if (root.contains("scheme")) {
        const json& s = root["scheme"];
        reject_unknown(s, "scheme", {"type", "transmit_prob", "beta_th_dbm"});
        std::string type = "ftp";
        read(s, "type", type, "scheme");
        if (type == "ftp") {
            if (s.contains("beta_th_dbm")) throw ConfigError("scheme.beta_th_dbm requires type atp");
            FtpScheme f;
            read(s, "transmit_prob", f.transmit_prob, "scheme");
            c.scheme = f;
        } else if (type == "atp") {
            if (s.contains("transmit_prob")) throw ConfigError("scheme.transmit_prob requires type ftp");
            double beta_dbm = -72.0;
            read(s, "beta_th_dbm", beta_dbm, "scheme");
            c.scheme = AtpScheme{dbm_to_mw(beta_dbm)};
        } else {
            throw ConfigError("scheme.type: expected 'ftp' or 'atp', got '" + type + "'");
        }
    }

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        reject_unknown(s, "sweep", {"parameter", "start", "stop", "step"});
        for (const char* key : {"parameter", "start", "stop", "step"}) {
            if (!s.contains(key)) throw ConfigError(std::string("sweep.") + key + " is required");
        }
        SweepSpec sweep;
        read(s, "parameter", sweep.parameter, "sweep");
        read(s, "start", sweep.start, "sweep");
        read(s, "stop", sweep.stop, "sweep");
        read(s, "step", sweep.step, "sweep");
        check_parameter_scheme(sweep.parameter, c.scheme);
        sweep.values();
        c.sweep = sweep;
    }

    if (root.contains("series")) {
        if (!root["series"].is_array()) throw ConfigError("series: expected an array");
        for (const auto& entry : root["series"]) {
            if (!entry.is_object()) throw ConfigError("series: entries must be objects");
            SeriesSpec spec;
            for (const auto& item : entry.items()) {
                if (item.key() == "label") {
                    read(entry, "label", spec.label, "series");
                } else {
                    if (item.key() == "gamma_b_db" || item.key() == "gamma_d_db") {
                        throw ConfigError("series: thresholds cannot be overridden per series");
                    }
                    check_parameter_scheme(item.key(), c.scheme);
                    if (!item.value().is_number()) throw ConfigError("series." + item.key() + ": wrong type");
                    spec.overrides.emplace_back(item.key(), item.value().get<double>());
                }
            }
            if (spec.label.empty()) throw ConfigError("series: every entry needs a label");
            c.series.push_back(spec);
        }
    }

    read(root, "thresholds_db", c.thresholds_db, "config");

    if (root.contains("sim")) {
        const json& s = root["sim"];
        const std::string w = "sim";
        reject_unknown(s, w,
                       {"slots", "burn_in", "trials", "seed", "field_mode", "sensing_rule",
                        "extended_radius_factor", "redraw_cell_user_per_slot", "threads",
                        "imposed_operable_prob"});
        SimulationConfig& sim = c.sim;
        read(s, "slots", sim.slots, w);
        read(s, "burn_in", sim.burn_in, w);
        read(s, "trials", sim.trials, w);
        read(s, "seed", sim.seed, w);
        std::string mode = "cell";
        read(s, "field_mode", mode, w);
        sim.field_mode = parse_field_mode(mode);
        std::string rule = "earlier_contender";
        read(s, "sensing_rule", rule, w);
        sim.sensing_rule = parse_sensing_rule(rule);
        read(s, "extended_radius_factor", sim.extended_radius_factor, w);
        read(s, "redraw_cell_user_per_slot", sim.redraw_cell_user_per_slot, w);
        read(s, "threads", sim.threads, w);
        if (s.contains("imposed_operable_prob")) {
            double q = 0.0;
            read(s, "imposed_operable_prob", q, w);
            sim.imposed_operable_prob = q;
        }
    }

    if (root.contains("quadrature")) {
        const json& q = root["quadrature"];
        reject_unknown(q, "quadrature", {"order", "rel_tol"});
        read(q, "order", c.quadrature_order, "quadrature");
        read(q, "rel_tol", c.quadrature_rel_tol, "quadrature");
    }

    if (root.contains("output")) {
        const json& o = root["output"];
        reject_unknown(o, "output", {"csv", "precision"});
        read(o, "csv", c.csv_path, "output");
        read(o, "precision", c.precision, "output");
    }

    if (root.contains("validation")) {
        const json& v = root["validation"];
        const std::string w = "validation";
        reject_unknown(v, w,
                       {"operable_tol", "transmit_tol", "outage_tol", "sum_rate_rel_tol", "check_operable",
                        "operable_slots", "operable_burn_in", "operable_trials"});
        ValidationSpec& spec = c.validation;
        read(v, "operable_tol", spec.operable_tol, w);
        read(v, "transmit_tol", spec.transmit_tol, w);
        read(v, "outage_tol", spec.outage_tol, w);
        read(v, "sum_rate_rel_tol", spec.sum_rate_rel_tol, w);
        read(v, "check_operable", spec.check_operable, w);
        read(v, "operable_slots", spec.operable_slots, w);
        read(v, "operable_burn_in", spec.operable_burn_in, w);
        read(v, "operable_trials", spec.operable_trials, w);
    }

    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string resolved_config_json(const ExperimentConfig& c) {
    json root;
    const NetworkParams& p = c.network;
    root["network"] = {
        {"cell_radius_m", p.cell_radius_m},
        {"d2d_density_per_m2", p.d2d_density_per_m2},
        {"pair_distance_m", p.pair_distance_m},
        {"path_loss_exponent", p.path_loss_exponent},
        {"bs_power_dbm", mw_to_dbm(p.bs_power_mw)},
        {"cell_user_power_dbm", mw_to_dbm(p.cell_user_power_mw)},
        {"d2d_power_dbm", mw_to_dbm(p.d2d_power_mw)},
        {"sense_power_dbm", mw_to_dbm(p.sense_power_mw)},
        {"noise_power_dbm", mw_to_dbm(p.noise_power_mw)},
        {"harvest_efficiency", p.harvest_efficiency},
        {"sense_window", p.sense_window},
        {"energy_threshold_factor", p.energy_threshold_mwslots / p.d2d_power_mw},
    };
    if (const auto* f = std::get_if<FtpScheme>(&c.scheme)) {
        root["scheme"] = {{"type", "ftp"}, {"transmit_prob", f->transmit_prob}};
    } else {
        root["scheme"] = {{"type", "atp"}, {"beta_th_dbm", mw_to_dbm(std::get<AtpScheme>(c.scheme).beta_th_mw)}};
    }
    if (c.sweep) {
        root["sweep"] = {{"parameter", c.sweep->parameter},
                         {"start", c.sweep->start},
                         {"stop", c.sweep->stop},
                         {"step", c.sweep->step}};
    }
    if (!c.series.empty()) {
        json series = json::array();
        for (const auto& s : c.series) {
            json entry{{"label", s.label}};
            for (const auto& [k, v] : s.overrides) entry[k] = v;
            series.push_back(entry);
        }
        root["series"] = series;
    }
    root["thresholds_db"] = c.thresholds_db;
    json sim = {
        {"slots", c.sim.slots},
        {"burn_in", c.sim.burn_in},
        {"trials", c.sim.trials},
        {"seed", c.sim.seed},
        {"field_mode", c.sim.field_mode == FieldMode::Cell ? "cell" : "extended"},
        {"sensing_rule",
         c.sim.sensing_rule == SensingRule::EarlierContender ? "earlier_contender" : "admitted_only"},
        {"extended_radius_factor", c.sim.extended_radius_factor},
        {"redraw_cell_user_per_slot", c.sim.redraw_cell_user_per_slot},
        {"threads", c.sim.threads},
    };
    if (c.sim.imposed_operable_prob) sim["imposed_operable_prob"] = *c.sim.imposed_operable_prob;
    root["sim"] = sim;
    root["quadrature"] = {{"order", c.quadrature_order}, {"rel_tol", c.quadrature_rel_tol}};
    root["output"] = {{"csv", c.csv_path}, {"precision", c.precision}};
    root["validation"] = {
        {"operable_tol", c.validation.operable_tol},
        {"transmit_tol", c.validation.transmit_tol},
        {"outage_tol", c.validation.outage_tol},
        {"sum_rate_rel_tol", c.validation.sum_rate_rel_tol},
        {"check_operable", c.validation.check_operable},
        {"operable_slots", c.validation.operable_slots},
        {"operable_burn_in", c.validation.operable_burn_in},
        {"operable_trials", c.validation.operable_trials},
    };
    return root.dump(2) + "\n";
}

std::vector<MetricsReport> cmd_analyze(const ExperimentConfig& config) {
    std::vector<MetricsReport> reports;
    for (const auto& point : expand_points(config)) {
        MetricsReport probe;
        probe.series = point.series;
        probe.sweep_param = point.sweep_param;
        probe.sweep_value = point.sweep_value;
        MetricsReport r = with_context(describe_point(probe), [&] { return analyze_point(point.config); });
        r.series = point.series;
        r.sweep_param = point.sweep_param;
        r.sweep_value = point.sweep_value;
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<MetricsReport> cmd_simulate(const ExperimentConfig& config) {
    std::vector<MetricsReport> reports;
    for (const auto& point : expand_points(config)) {
        const ExperimentConfig& c = point.config;
        MetricsReport r;
        r.simulated = true;
        r.series = point.series;
        r.sweep_param = point.sweep_param;
        r.sweep_value = point.sweep_value;
        const SimulationReport sim = with_context(describe_point(r), [&] {
            return estimate_metrics(c.network, c.scheme, sim_for(c));
        });
        r.derived.operable_prob = sim.operable_prob.mean;
        r.derived.transmit_prob = sim.transmit_prob.mean;
        r.derived.active_density_per_m2 = sim.active_density_per_m2.mean;
        if (const auto* atp = std::get_if<AtpScheme>(&c.scheme)) {
            r.derived.protection_radius_m = atp_protection_radius(c.network, atp->beta_th_mw);
            r.derived.w_constant = atp_w_constant(c.network, atp->beta_th_mw);
        }
        r.operable_prob_stderr = sim.operable_prob.std_error;
        r.transmit_prob_stderr = sim.transmit_prob.std_error;
        r.active_density_stderr = sim.active_density_per_m2.std_error;
        r.bs_outage.thresholds = sim.gamma_grid_b;
        r.d2d_outage.thresholds = sim.gamma_grid_d;
        for (const auto& e : sim.bs_outage) {
            r.bs_outage.probabilities.push_back(e.mean);
            r.bs_outage_stderr.push_back(e.std_error);
        }
        for (const auto& e : sim.d2d_outage) {
            r.d2d_outage.probabilities.push_back(e.mean);
            r.d2d_outage_stderr.push_back(e.std_error);
        }
        r.sum_rate = sim.sum_rate.mean;
        r.sum_rate_stderr = sim.sum_rate.std_error;
        r.n_samples = sim.ul_slots;
        reports.push_back(std::move(r));
    }
    return reports;
}

std::string format_number(double value, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<MetricsReport>& reports) {
    const bool simulated = !reports.empty() && reports.front().simulated;
    const bool with_series = !config.series.empty();
    const int prec = config.precision;
    auto num = [prec](double v) { return format_number(v, prec); };

    std::vector<std::string> header;
    if (with_series) header.push_back("series");
    header.insert(header.end(), {"sweep_param", "sweep_value", "pi_o"});
    if (simulated) header.push_back("pi_o_stderr");
    header.push_back("p_t");
    if (simulated) header.push_back("p_t_stderr");
    header.push_back("lambda_t");
    if (simulated) header.push_back("lambda_t_stderr");
    header.insert(header.end(), {"r_p_m", "W", "gamma_db", "bs_outage"});
    if (simulated) header.push_back("bs_outage_stderr");
    header.push_back("d2d_outage");
    if (simulated) header.push_back("d2d_outage_stderr");
    header.push_back("sum_rate");
    if (simulated) header.insert(header.end(), {"sum_rate_stderr", "n_samples"});
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";

    for (const auto& r : reports) {
        for (std::size_t k = 0; k < r.bs_outage.thresholds.size(); ++k) {
            std::vector<std::string> row;
            if (with_series) row.push_back(r.series);
            row.push_back(r.sweep_param.empty() ? "none" : r.sweep_param);
            row.push_back(r.sweep_param.empty() ? "" : num(r.sweep_value));
            row.push_back(num(r.derived.operable_prob));
            if (simulated) row.push_back(num(r.operable_prob_stderr));
            row.push_back(num(r.derived.transmit_prob));
            if (simulated) row.push_back(num(r.transmit_prob_stderr));
            row.push_back(num(r.derived.active_density_per_m2));
            if (simulated) row.push_back(num(r.active_density_stderr));
            row.push_back(num(r.derived.protection_radius_m));
            row.push_back(num(r.derived.w_constant));
            row.push_back(num(linear_to_db(r.bs_outage.thresholds[k])));
            row.push_back(num(r.bs_outage.probabilities[k]));
            if (simulated) row.push_back(num(r.bs_outage_stderr[k]));
            row.push_back(num(r.d2d_outage.probabilities[k]));
            if (simulated) row.push_back(num(r.d2d_outage_stderr[k]));
            row.push_back(num(r.sum_rate));
            if (simulated) {
                row.push_back(num(r.sum_rate_stderr));
                row.push_back(std::to_string(r.n_samples));
            }
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
    }
}

std::vector<ValidationCheck> cmd_validate(const ExperimentConfig& config, const ValidationHooks& hooks) {
    validate_config(config);
    const ValidationSpec& spec = config.validation;
    std::vector<ValidationCheck> checks;
    auto add = [&](const std::string& metric, double ana, const Estimate& est, double tol) {
        ValidationCheck c{metric, ana, est.mean, est.std_error, tol, false};
        // No samples on either side (e.g. nobody ever transmits): nothing to disagree about.
        c.pass = est.n == 0 || std::abs(ana - est.mean) <= tol;
        if (est.n == 0) c.simulation = ana;
        checks.push_back(c);
    };

    const MetricsReport ana =
        with_context("analysis", [&] { return analyze_point(config, hooks.corrupt_analysis); });

    if (spec.check_operable) {
        SimulationConfig cell = config.sim;
        cell.field_mode = FieldMode::Cell;
        cell.link_metrics = false;
        cell.slots = spec.operable_slots;
        cell.burn_in = spec.operable_burn_in;
        cell.trials = spec.operable_trials;
        cell.imposed_operable_prob.reset();
        const SimulationReport sim = with_context("cell-mode simulation", [&] {
            return estimate_metrics(config.network, config.scheme, cell);
        });
        add("pi_o (cell)", ana.derived.operable_prob, sim.operable_prob, spec.operable_tol);
    }

    SimulationConfig ext = sim_for(config);
    ext.field_mode = FieldMode::Extended;
    ext.link_metrics = true;
    const SimulationReport sim =
        with_context("extended-field simulation", [&] { return estimate_metrics(config.network, config.scheme, ext); });

    add("p_t", ana.derived.transmit_prob, sim.transmit_prob, spec.transmit_tol);
    for (std::size_t k = 0; k < config.thresholds_db.size(); ++k) {
        const std::string at = "@" + format_number(config.thresholds_db[k], 4) + "dB";
        add("bs_outage" + at, ana.bs_outage.probabilities[k], sim.bs_outage[k], spec.outage_tol);
        add("d2d_outage" + at, ana.d2d_outage.probabilities[k], sim.d2d_outage[k], spec.outage_tol);
    }
    add("sum_rate", ana.sum_rate, sim.sum_rate, spec.sum_rate_rel_tol * std::abs(ana.sum_rate));
    return checks;
}

void print_validation_table(std::ostream& out, const std::vector<ValidationCheck>& checks) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::left << std::setw(20) << "metric" << std::right << std::setw(12) << "analysis" << std::setw(12)
      << "simulation" << std::setw(12) << "abs_diff" << std::setw(12) << "ci95" << std::setw(12) << "tolerance"
      << "  result\n";
    s << std::fixed << std::setprecision(5);
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        s << std::left << std::setw(20) << c.metric << std::right << std::setw(12) << c.analysis << std::setw(12)
          << c.simulation << std::setw(12) << std::abs(c.analysis - c.simulation) << std::setw(12)
          << 1.96 * c.std_error << std::setw(12) << c.tolerance << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    s << (all ? "overall: PASS" : "overall: FAIL") << "\n";
    out << s.str();
}

}  // namespace ehd2d
