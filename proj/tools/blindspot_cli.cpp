// Command-line front end for blind-spot probability analysis: closed-form
// evaluation, Monte Carlo simulation, parameter sweeps, the epsilon-design
// solver, and cell-area validation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blindspot/blindspot.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

using blindspot::ScenarioConfig;
using blindspot::csv::format_value;
using json = nlohmann::json;

struct Flags {
    double lambda = 0.05;
    double lambda0 = 0.03;
    double range = 20.0;
    double length = 0.0;
    bool infinite = false;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double epsilon = 0.1;
    double delta = 1e-4;
    int k_min = 3;
    std::string out = "-";
    std::string config_path;
};

// Adds the shared flag set to a subcommand. Values given in a JSON config
// file act as defaults; explicit flags win.
void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--lambda", f.lambda, "Anchor intensity (per m^2)");
    cmd->add_option("--lambda0", f.lambda0, "Obstacle foot-point intensity (per m^2)");
    cmd->add_option("--range", f.range, "Communication range R (m)");
    cmd->add_option("--length", f.length, "Obstacle length L (m); omit for infinite");
    cmd->add_flag("--infinite", f.infinite, "Infinite-line obstacles");
    cmd->add_option("--trials", f.trials, "Monte Carlo trial count");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--threads", f.threads, "Worker thread count (never changes results)");
    cmd->add_option("--epsilon", f.epsilon, "Target blind-spot probability");
    cmd->add_option("--delta", f.delta, "Containment criterion threshold");
    cmd->add_option("--kmin", f.k_min, "Anchors needed for localization");
    cmd->add_option("--out", f.out, "Output path ('-' for stdout)");
    cmd->add_option("--config", f.config_path, "JSON config file (flags override)");
}

void apply_config_file(CLI::App* cmd, Flags& f) {
    if (f.config_path.empty()) return;
    std::ifstream in(f.config_path);
    if (!in) throw std::invalid_argument("cannot read config file: " + f.config_path);
    json doc = json::parse(in);

    const auto overridden = [cmd](const std::string& name) {
        const auto* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    const auto load = [&](const char* key, const char* flag, auto& slot) {
        if (doc.contains(key) && !overridden(flag)) slot = doc[key].get<std::decay_t<decltype(slot)>>();
    };
    load("lambda", "--lambda", f.lambda);
    load("lambda0", "--lambda0", f.lambda0);
    load("range", "--range", f.range);
    load("trials", "--trials", f.trials);
    load("seed", "--seed", f.seed);
    load("threads", "--threads", f.threads);
    load("epsilon", "--epsilon", f.epsilon);
    load("delta", "--delta", f.delta);
    load("kmin", "--kmin", f.k_min);
    if (doc.contains("length") && !overridden("--length") && !overridden("--infinite")) {
        if (doc["length"].is_string() && doc["length"] == "inf")
            f.infinite = true;
        else
            f.length = doc["length"].get<double>();
    }
}

ScenarioConfig scenario_from(const Flags& f) {
    ScenarioConfig c;
    c.lambda = f.lambda;
    c.lambda0 = f.lambda0;
    c.range = f.range;
    c.length = (f.infinite || f.length <= 0.0) ? std::numeric_limits<double>::infinity()
                                               : f.length;
    c.delta = f.delta;
    c.epsilon = f.epsilon;
    c.k_min = f.k_min;
    c.validate();
    return c;
}

void warn_if_containment_violated(const ScenarioConfig& c) {
    if (c.lambda0 <= 0.0) return;
    const double p = blindspot::analytic::visibility_probability(c.range, c.lambda0);
    if (p >= c.delta) {
        std::cerr << "warning: containment criterion not met: exp(-lambda0 pi R^2/4) = "
                  << format_value(p) << " >= delta = " << format_value(c.delta)
                  << " (need lambda0 > "
                  << format_value(blindspot::analytic::min_lambda0_for_delta(c.range, c.delta))
                  << ")\n";
    }
}

json scenario_json(const ScenarioConfig& c, const Flags& f) {
    json out;
    out["lambda"] = c.lambda;
    out["lambda0"] = c.lambda0;
    out["range"] = c.range;
    out["length"] = c.infinite_length() ? json("inf") : json(c.length);
    out["delta"] = c.delta;
    out["epsilon"] = c.epsilon;
    out["kmin"] = c.k_min;
    out["trials"] = f.trials;
    out["seed"] = f.seed;
    out["threads"] = f.threads;
    return out;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& resolved_config, double duration_s,
                    std::uint64_t rows_written) {
    if (out_path == "-") return;
    json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["resolved_config"] = resolved_config;
    const auto now = std::chrono::system_clock::now();
    manifest["started_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    manifest["duration_s"] = duration_s;
    manifest["rows_written"] = rows_written;
    std::ofstream mf(out_path + ".manifest.json");
    if (!mf) throw std::ios_base::failure("cannot write manifest for " + out_path);
    mf << manifest.dump(2) << '\n';
}

std::vector<double> parse_values(const std::string& csv_list) {
    std::vector<double> values;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

double ks_statistic_vs_gamma(std::vector<double> areas, double lambda0) {
    std::sort(areas.begin(), areas.end());
    const double n = static_cast<double>(areas.size());
    double ks = 0.0;
    for (size_t i = 0; i < areas.size(); ++i) {
        const double cdf = blindspot::analytic::gamma_cell_area_cdf(areas[i], lambda0);
        ks = std::max({ks, std::fabs((i + 1) / n - cdf), std::fabs(i / n - cdf)});
    }
    return ks;
}

int run(int argc, char** argv) {
    CLI::App app{"Blind-spot probability of a localization target under correlated blocking"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Flags f;

    // analytic <asymptotic|independent|mean-area|check-delta>
    auto* analytic = app.add_subcommand("analytic", "Closed-form / quadrature evaluation");
    analytic->require_subcommand(1);
    auto* asym = analytic->add_subcommand("asymptotic", "Asymptotic blind-spot probability");
    auto* indep = analytic->add_subcommand("independent",
                                           "Independent-blocking baseline (infinite lines)");
    auto* mean_area = analytic->add_subcommand("mean-area", "Mean visible area, E[A_v]");
    auto* check = analytic->add_subcommand("check-delta", "Containment criterion check");
    for (auto* sub : {asym, indep, mean_area, check}) add_common_flags(sub, f);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo blind-spot estimate");
    add_common_flags(simulate, f);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    add_common_flags(sweep, f);
    std::string sweep_variable = "lambda";
    std::string sweep_values;
    std::string sweep_methods = "mc,analytic_asymptotic";
    sweep->add_option("--variable", sweep_variable, "Sweep variable: lambda or L")
        ->check(CLI::IsMember({"lambda", "L"}));
    sweep->add_option("--values", sweep_values, "Comma-separated sweep values")->required();
    sweep->add_option("--methods", sweep_methods,
                      "Comma-separated: mc, analytic_asymptotic, analytic_independent, "
                      "mc_independent_segments");

    auto* design = app.add_subcommand("design", "Anchor intensity for a target epsilon");
    add_common_flags(design, f);

    auto* validate = app.add_subcommand("validate-cells", "Cell-area statistics vs the Gamma fit");
    add_common_flags(validate, f);
    std::uint64_t n_samples = 100000;
    validate->add_option("--samples", n_samples, "Number of cell realizations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    CLI::App* leaf = active->get_subcommands().empty() ? active : active->get_subcommands().front();
    apply_config_file(leaf, f);
    const ScenarioConfig config = scenario_from(f);

    std::ostringstream command;
    for (int i = 0; i < argc; ++i) command << (i ? " " : "") << argv[i];

    if (asym->parsed()) {
        warn_if_containment_violated(config);
        std::cout << format_value(blindspot::analytic::asymptotic_blindspot(
                         config.lambda, config.lambda0, config.k_min))
                  << '\n';
        return 0;
    }
    if (indep->parsed()) {
        warn_if_containment_violated(config);
        std::cout << format_value(blindspot::analytic::independent_blindspot_lines(
                         config.lambda, config.lambda0, config.range, config.k_min))
                  << '\n';
        return 0;
    }
    if (mean_area->parsed()) {
        const auto mv = blindspot::analytic::mean_visible_area_lines(config.lambda,
                                                                     config.lambda0, config.range);
        std::cout << "mean_visible_area " << format_value(mv.mean_area) << '\n'
                  << "anchor_mean " << format_value(mv.anchor_mean) << '\n';
        return 0;
    }
    if (check->parsed()) {
        const double bound =
            blindspot::analytic::min_lambda0_for_delta(config.range, config.delta);
        warn_if_containment_violated(config);
        std::cout << "min_lambda0 " << format_value(bound) << '\n'
                  << "lambda0 " << format_value(config.lambda0) << '\n'
                  << "admissible " << (config.lambda0 > bound ? "yes" : "no") << '\n';
        return 0;
    }

    if (simulate->parsed()) {
        warn_if_containment_violated(config);
        const auto est =
            blindspot::sim::estimate_blindspot(config, f.trials, f.seed, f.threads);
        const double half = 1.959963984540054 * est.stderr_;
        std::cout << "value " << format_value(est.value) << '\n'
                  << "stderr " << format_value(est.stderr_) << '\n'
                  << "ci95 [" << format_value(std::max(0.0, est.value - half)) << ", "
                  << format_value(std::min(1.0, est.value + half)) << "]\n"
                  << "n_trials " << est.n_trials << '\n'
                  << "seed " << est.master_seed << '\n';
        return 0;
    }

    if (sweep->parsed()) {
        const auto values = parse_values(sweep_values);
        std::vector<blindspot::sim::Method> methods;
        std::stringstream ms(sweep_methods);
        std::string name;
        while (std::getline(ms, name, ',')) {
            if (!name.empty()) methods.push_back(blindspot::sim::method_from_string(name));
        }
        blindspot::sim::SweepOptions opt;
        opt.n_trials = f.trials;
        opt.master_seed = f.seed;
        opt.threads = f.threads;
        const auto variable = sweep_variable == "lambda" ? blindspot::sim::SweepVariable::lambda
                                                         : blindspot::sim::SweepVariable::length;
        warn_if_containment_violated(config);

        const auto t0 = std::chrono::steady_clock::now();
        const auto rows = blindspot::sim::run_sweep(config, variable, values, methods, opt);
        const double duration =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (f.out != "-") {
            file.open(f.out, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot open output file: " + f.out);
            out = &file;
        }
        *out << blindspot::csv::kHeader << '\n';
        for (const auto& row : rows) *out << blindspot::csv::to_line(row) << '\n';
        if (f.out != "-" && !file.good())
            throw std::ios_base::failure("write failed: " + f.out);

        json resolved = scenario_json(config, f);
        resolved["variable"] = sweep_variable;
        resolved["values"] = values;
        resolved["methods"] = sweep_methods;
        write_manifest(f.out, command.str(), resolved, duration, rows.size());
        return 0;
    }

    if (design->parsed()) {
        const double lstar = blindspot::analytic::design_anchor_intensity(
            config.lambda0, config.epsilon, config.k_min);
        const double achieved =
            blindspot::analytic::asymptotic_blindspot(lstar, config.lambda0, config.k_min);
        std::cout << "lambda_star " << format_value(lstar) << '\n'
                  << "achieved_blindspot " << format_value(achieved) << '\n';
        return 0;
    }

    if (validate->parsed()) {
        if (n_samples < 1) throw std::invalid_argument("--samples must be >= 1");
        if (!(config.lambda0 > 0.0)) throw std::invalid_argument("lambda0 must be > 0");
        const auto t0 = std::chrono::steady_clock::now();
        const auto sample =
            blindspot::sim::sample_cell_areas(config.lambda0, n_samples, f.seed, f.threads);
        const double duration =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        double mean = 0.0;
        for (double a : sample.areas) mean += a;
        mean /= static_cast<double>(sample.areas.size());
        const double ks = ks_statistic_vs_gamma(sample.areas, config.lambda0);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (f.out != "-") {
            file.open(f.out, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot open output file: " + f.out);
            out = &file;
        }
        *out << "area\n";
        for (double a : sample.areas) *out << format_value(a) << '\n';
        if (f.out != "-" && !file.good())
            throw std::ios_base::failure("write failed: " + f.out);

        std::cout << "n_samples " << n_samples << '\n'
                  << "n_discarded " << sample.n_discarded << '\n'
                  << "empirical_mean " << format_value(mean) << '\n'
                  << "target_mean " << format_value(4.0 / config.lambda0) << '\n'
                  << "ks_statistic " << format_value(ks) << '\n';

        json resolved = scenario_json(config, f);
        resolved["samples"] = n_samples;
        write_manifest(f.out, command.str(), resolved, duration, sample.areas.size());
        return 0;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const blindspot::analytic::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
