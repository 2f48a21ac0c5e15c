// Command-line front end: analyze | simulate | validate.

#include "ehd2d/experiment.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

ehd2d::ExperimentConfig load(const Options& opt) {
    ehd2d::ExperimentConfig config = ehd2d::load_config(opt.config_path);
    if (opt.seed) config.sim.seed = *opt.seed;
    if (opt.threads) {
        if (*opt.threads < 0) throw ehd2d::ConfigError("--threads must be >= 0");
        config.sim.threads = *opt.threads;
    }
    if (!opt.out_path.empty()) config.csv_path = opt.out_path;
    return config;
}

// CSV goes to the configured path (config log next to it) or to stdout
// (config log on stderr).
void emit(const ehd2d::ExperimentConfig& config, const std::vector<ehd2d::MetricsReport>& reports) {
    const std::string resolved = ehd2d::resolved_config_json(config);
    if (config.csv_path.empty()) {
        std::cerr << resolved;
        ehd2d::write_csv(std::cout, config, reports);
        return;
    }
    std::ofstream csv(config.csv_path, std::ios::binary);
    if (!csv) throw ehd2d::ConfigError("cannot write '" + config.csv_path + "'");
    ehd2d::write_csv(csv, config, reports);
    std::ofstream log(config.csv_path + ".config.json", std::ios::binary);
    log << resolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RF-powered D2D underlay: analysis, simulation and cross-validation"};
    app.require_subcommand(1);
    Options opt;
    std::uint64_t seed = 0;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "experiment description (JSON)")->required();
        sub->add_option("--out", opt.out_path, "output CSV path (overrides output.csv)");
        sub->add_option("--seed", seed, "simulation seed override");
        sub->add_option("--threads", threads, "worker threads, 0 for all cores");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "evaluate the analytical model");
    CLI::App* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulator");
    CLI::App* validate = app.add_subcommand("validate", "compare analysis against simulation");
    for (CLI::App* sub : {analyze, simulate, validate}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ehd2d::kExitOk : ehd2d::kExitConfig;
    }
    for (CLI::App* sub : {analyze, simulate, validate}) {
        if (sub->count("--seed")) opt.seed = seed;
        if (sub->count("--threads")) opt.threads = threads;
    }

    try {
        const ehd2d::ExperimentConfig config = load(opt);
        if (analyze->parsed()) {
            emit(config, ehd2d::cmd_analyze(config));
        } else if (simulate->parsed()) {
            emit(config, ehd2d::cmd_simulate(config));
        } else {
            const auto checks = ehd2d::cmd_validate(config);
            std::ostringstream table;
            ehd2d::print_validation_table(table, checks);
            std::cout << table.str();
            if (!config.csv_path.empty()) {
                std::ofstream out(config.csv_path, std::ios::binary);
                out << table.str();
                std::ofstream log(config.csv_path + ".config.json", std::ios::binary);
                log << ehd2d::resolved_config_json(config);
            } else {
                std::cerr << ehd2d::resolved_config_json(config);
            }
            for (const auto& c : checks) {
                if (!c.pass) return ehd2d::kExitValidation;
            }
        }
    } catch (const ehd2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ehd2d::kExitConfig;
    } catch (const ehd2d::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return ehd2d::kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ehd2d::kExitConfig;
    }
    return ehd2d::kExitOk;
}
