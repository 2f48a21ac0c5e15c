#include "doctest.h"

#include "ehd2d/experiment.hpp"

#include <algorithm>
#include <sstream>

using namespace ehd2d;

namespace {

std::string csv_of(const ExperimentConfig& c, const std::vector<MetricsReport>& r) {
    std::ostringstream out;
    write_csv(out, c, r);
    return out.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig d = parse_config("{}");
    CHECK(d.network.bs_power_mw == doctest::Approx(dbm_to_mw(44.0)));
    CHECK(std::holds_alternative<FtpScheme>(d.scheme));
    CHECK(d.quadrature_order == 100);
    CHECK(d.thresholds_db == std::vector<double>{0.0});

    const ExperimentConfig c = parse_config(R"({
        "network": {"d2d_power_dbm": -7, "energy_threshold_factor": 2, "harvest_efficiency": 0.5},
        "scheme": {"type": "atp", "beta_th_dbm": -65},
        "sim": {"field_mode": "extended", "sensing_rule": "admitted_only", "seed": 5},
        "output": {"precision": 9}
    })");
    CHECK(c.network.energy_threshold_mwslots == doctest::Approx(2.0 * dbm_to_mw(-7.0)));
    CHECK(std::get<AtpScheme>(c.scheme).beta_th_mw == doctest::Approx(dbm_to_mw(-65.0)));
    CHECK(c.sim.field_mode == FieldMode::Extended);
    CHECK(c.sim.sensing_rule == SensingRule::AdmittedOnly);
    CHECK(c.sim.seed == 5);

    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"netwrok": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"eta": 0.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"harvest_efficiency": "high"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"network": {"harvest_efficiency": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scheme": {"type": "csma"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scheme": {"type": "ftp", "beta_th_dbm": -70}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"parameter": "beta_th_dbm", "start": 0, "stop": 1, "step": 1}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"parameter": "eta", "start": 0.5, "stop": 0.1, "step": 0.1}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"parameter": "eta", "start": 0.1, "stop": 0.5, "step": 0}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"parameter": "eta", "start": 0.1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"series": [{"eta": 0.3}]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"field_mode": "torus"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"precision": 0}})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("sweep values") {
    SweepSpec s{"p_t", 0.05, 0.95, 0.1};
    const auto v = s.values();
    REQUIRE(v.size() == 10);
    CHECK(v.front() == 0.05);
    CHECK(v.back() == doctest::Approx(0.95));
    CHECK(SweepSpec{"eta", 0.3, 0.3, 1.0}.values().size() == 1);
}

TEST_CASE("analysis CSV") {
    ExperimentConfig c = parse_config(R"({
        "scheme": {"type": "ftp", "transmit_prob": 0.1},
        "sweep": {"parameter": "p_t", "start": 0.05, "stop": 0.95, "step": 0.1},
        "series": [{"label": "eta=0.3", "eta": 0.3}, {"label": "eta=0.8", "eta": 0.8}]
    })");
    const auto reports = cmd_analyze(c);
    REQUIRE(reports.size() == 20);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t i = 1; i < 10; ++i) {
            CHECK(reports[s * 10 + i].derived.operable_prob <= reports[s * 10 + i - 1].derived.operable_prob);
        }
    }
    const auto rows = lines(csv_of(c, reports));
    CHECK(rows.front() == "series,sweep_param,sweep_value,pi_o,p_t,lambda_t,r_p_m,W,gamma_db,bs_outage,d2d_outage,sum_rate");
    CHECK(rows.size() == 21);
    CHECK(rows[1].rfind("eta=0.3,p_t,0.05,", 0) == 0);

    ExperimentConfig single = parse_config(R"({"sweep": {"parameter": "gamma_b_db", "start": 3, "stop": 3, "step": 1}})");
    const auto one = lines(csv_of(single, cmd_analyze(single)));
    CHECK(one.size() == 2);
    CHECK(one[0] == "sweep_param,sweep_value,pi_o,p_t,lambda_t,r_p_m,W,gamma_db,bs_outage,d2d_outage,sum_rate");
    CHECK(one[1].find(",3,") != std::string::npos);

    ExperimentConfig atp = parse_config(R"({
        "scheme": {"type": "atp"},
        "sweep": {"parameter": "beta_th_dbm", "start": -85, "stop": -55, "step": 5},
        "series": [{"label": "dense", "lambda_d": 0.01}, {"label": "sparse", "lambda_d": 0.001}]
    })");
    const auto ar = cmd_analyze(atp);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t i = 1; i < 7; ++i) {
            CHECK(ar[s * 7 + i].derived.transmit_prob >= ar[s * 7 + i - 1].derived.transmit_prob);
            CHECK(ar[s * 7 + i].derived.operable_prob <= ar[s * 7 + i - 1].derived.operable_prob);
        }
    }
}

TEST_CASE("number formatting is locale independent") {
    CHECK(format_number(0.5, 6) == "0.5");
    CHECK(format_number(2.634192217815e-4, 4) == "0.0002634");
    CHECK(format_number(-72.0, 6) == "-72");
    CHECK(format_number(1e-12, 3) == "1e-12");
}

TEST_CASE("simulation CSV is replayable") {
    ExperimentConfig c = parse_config(R"({
        "scheme": {"type": "atp", "beta_th_dbm": -72},
        "thresholds_db": [0, 10],
        "sim": {"slots": 200, "burn_in": 20, "trials": 3, "seed": 3, "threads": 2}
    })");
    const std::string a = csv_of(c, cmd_simulate(c));
    const std::string b = csv_of(c, cmd_simulate(c));
    CHECK(a == b);
    const auto rows = lines(a);
    CHECK(rows.front() ==
          "sweep_param,sweep_value,pi_o,pi_o_stderr,p_t,p_t_stderr,lambda_t,lambda_t_stderr,r_p_m,W,gamma_db,"
          "bs_outage,bs_outage_stderr,d2d_outage,d2d_outage_stderr,sum_rate,sum_rate_stderr,n_samples");
    CHECK(rows.size() == 3);
    CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "540");
    c.sim.seed = 4;
    CHECK(csv_of(c, cmd_simulate(c)) != a);
}

TEST_CASE("resolved config round trip") {
    const ExperimentConfig c = parse_config(R"({
        "scheme": {"type": "atp", "beta_th_dbm": -60},
        "series": [{"label": "x", "eta": 0.4}],
        "sim": {"imposed_operable_prob": 0.2}
    })");
    const std::string text = resolved_config_json(c);
    const ExperimentConfig back = parse_config(text);
    CHECK(resolved_config_json(back) == text);
    CHECK(csv_of(back, cmd_analyze(back)) == csv_of(c, cmd_analyze(c)));
}

TEST_CASE("validation passes trivially without harvesting") {
    const ExperimentConfig c = parse_config(R"({
        "network": {"harvest_efficiency": 0},
        "scheme": {"type": "ftp", "transmit_prob": 0.5},
        "thresholds_db": [0, 10],
        "sim": {"slots": 4000, "burn_in": 0, "trials": 2, "threads": 1},
        "validation": {"operable_slots": 500, "operable_burn_in": 50, "operable_trials": 1}
    })");
    const auto checks = cmd_validate(c);
    CHECK(checks.front().metric == "pi_o (cell)");
    CHECK(checks.front().simulation == 0.0);
    for (const auto& check : checks) CHECK_MESSAGE(check.pass, check.metric);
}

TEST_CASE("validation negative control") {
    const ExperimentConfig c = parse_config(R"({
        "scheme": {"type": "ftp", "transmit_prob": 0.1},
        "thresholds_db": [0, 10],
        "sim": {"slots": 1500, "burn_in": 0, "trials": 2, "threads": 1},
        "validation": {"check_operable": false}
    })");
    ValidationHooks hooks;
    hooks.corrupt_analysis = [](SchemeDerived& d) { d.active_density_per_m2 *= 4.0; };
    const auto checks = cmd_validate(c, hooks);
    CHECK(std::any_of(checks.begin(), checks.end(), [](const ValidationCheck& v) { return !v.pass; }));
    std::ostringstream table;
    print_validation_table(table, checks);
    CHECK(table.str().find("overall: FAIL") != std::string::npos);
}
