// Command-line front end: remnant-curve sweeps, single control runs, the
// Monte Carlo benchmark, and raw input replay through the discretized
// operator.

#include "preisach/control.hpp"
#include "preisach/discrete.hpp"
#include "preisach/errors.hpp"
#include "preisach/experiment.hpp"
#include "preisach/interface_line.hpp"
#include "preisach/remnant.hpp"
#include "preisach/signals.hpp"
#include "preisach/weight_field.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using preisach::ConfigError;

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
}

preisach::PlaneBounds bounds_from(const nlohmann::json& j) {
    if (!j.contains("bounds")) return preisach::PlaneBounds(-400.0, 400.0);
    const auto& b = j.at("bounds");
    return preisach::PlaneBounds(b.at(0).get<double>(), b.at(1).get<double>());
}

preisach::WeightField weight_from(const nlohmann::json& j, preisach::PlaneBounds bounds) {
    if (!j.contains("weight")) {
        return preisach::WeightField::uniform(bounds, 1.0 / (bounds.span() * bounds.span() / 2.0));
    }
    const auto& w = j.at("weight");
    if (w.contains("csv")) {
        std::ifstream f(w.at("csv").get<std::string>());
        if (!f) throw ConfigError("cannot read weight CSV: " + w.at("csv").get<std::string>());
        return preisach::WeightField::grid_from_csv(f, bounds);
    }
    return preisach::WeightField::from_json(w, bounds);
}

preisach::ExperimentConfig operator_config_from(const nlohmann::json& op) {
    preisach::ExperimentConfig cfg = preisach::ExperimentConfig::benchmark_defaults();
    cfg.grid_levels = op.value("levels", 1000);
    cfg.bounds = bounds_from(op);
    cfg.weight = weight_from(op, cfg.bounds);
    cfg.equal_relay_weights = op.value("equal_relay_weights", true);
    return cfg;
}

preisach::InterfaceLine interface_from(const nlohmann::json& j, preisach::PlaneBounds bounds) {
    if (!j.contains("interface")) return preisach::InterfaceLine::post_reset(bounds, +1);
    const auto& item = j.at("interface");
    if (item.contains("vertices")) {
        nlohmann::json full = item;
        if (!full.contains("bounds")) full["bounds"] = {bounds.lo, bounds.hi};
        return preisach::InterfaceLine::from_json(full);
    }
    return preisach::InterfaceLine::post_reset(bounds, item.value("polarity", 1));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write output file: " + path);
    return f;
}

int run_curve(const std::string& config_path, const std::string& out_path) {
    const auto j = load_json(config_path);
    const auto bounds = bounds_from(j);
    const auto weight = weight_from(j, bounds);
    const auto base = interface_from(j, bounds);

    const std::string backend = j.value("backend", std::string("analytic"));
    preisach::RemnantCurve curve(
        base, weight,
        backend == "grid" ? preisach::RemnantCurve::Backend::grid
                          : preisach::RemnantCurve::Backend::analytic,
        j.value("grid_levels", 1000));

    std::vector<double> amplitudes;
    const auto& amps = j.at("amplitudes");
    if (amps.is_array()) {
        for (const auto& a : amps) amplitudes.push_back(a.get<double>());
    } else {
        const double lo = amps.at("min").get<double>();
        const double hi = amps.at("max").get<double>();
        const int count = amps.at("count").get<int>();
        if (count < 1 || hi < lo) throw ConfigError("amplitudes: need count >= 1 and max >= min");
        for (int i = 0; i < count; ++i) {
            amplitudes.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        }
    }
    const auto rows = curve.sample(amplitudes);
    auto f = open_output(out_path);
    preisach::write_curve_csv(f, rows);
    return 0;
}

int run_control(const std::string& config_path, const std::string& out_path) {
    const auto j = load_json(config_path);
    const auto op_cfg = operator_config_from(j.value("operator", nlohmann::json::object()));
    auto op = preisach::make_operator(op_cfg);

    const auto& cj = j.at("controller");
    preisach::ControllerConfig cfg;
    cfg.target = cj.at("target").get<double>();
    cfg.max_amplitude = cj.value("A_max", 400.0);
    cfg.tolerance = cj.value("tolerance", 0.005);
    cfg.max_iterations = cj.value("max_iterations", 50);
    cfg.initial_amplitude = cj.value("initial_amplitude", 0.0);
    const std::string method = cj.at("method").get<std::string>();
    if (method == "proportional") {
        cfg.law = preisach::Proportional{cj.at("lambda").get<double>()};
    } else if (method == "newton") {
        cfg.law = preisach::Newton{};
    } else if (method == "secant") {
        cfg.law = preisach::Secant{cj.at("A0").get<double>(), cj.at("A1").get<double>()};
    } else {
        throw ConfigError("unknown controller method: " + method);
    }

    const auto trace =
        preisach::run_controller(op, op_cfg.weight, cfg, j.value("period", 2.0));
    auto f = open_output(out_path);
    preisach::write_trace_csv(f, trace);
    std::cout << (trace.converged ? "converged" : "did not converge") << " after "
              << trace.iterations() << " iterations, final error " << trace.final_error()
              << "\n";
    return trace.converged ? 0 : 2;
}

int run_montecarlo(const std::string& config_path, const std::string& out_dir,
                   std::optional<std::uint64_t> seed, int threads) {
    preisach::ExperimentConfig cfg = config_path.empty()
                                         ? preisach::ExperimentConfig::benchmark_defaults()
                                         : preisach::ExperimentConfig::from_json(
                                               load_json(config_path));
    if (seed.has_value()) cfg.seed = *seed;
    const auto result = preisach::run_monte_carlo(cfg, threads);
    preisach::write_experiment_outputs(result, cfg, out_dir);

    bool all_converged = true;
    for (const auto& s : result.per_sample) all_converged = all_converged && s.converged;
    std::cout << "ran " << cfg.samples << " samples x " << cfg.methods.size() << " methods; "
              << (all_converged ? "all converged" : "some runs did not converge") << "; outputs in "
              << out_dir << "\n";
    return all_converged ? 0 : 2;
}

int run_simulate(const std::string& config_path, const std::string& input_path,
                 const std::string& out_path) {
    const auto j = config_path.empty() ? nlohmann::json::object() : load_json(config_path);
    const auto op_cfg = operator_config_from(j.value("operator", j));
    auto op = preisach::make_operator(op_cfg);
    if (j.contains("interface")) {
        op.load_interface(interface_from(j, op_cfg.bounds));
    }

    std::ifstream in(input_path);
    if (!in) throw ConfigError("cannot read input CSV: " + input_path);
    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find_first_not_of("+-.,0123456789eE \t\r") != std::string::npos) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
        if (cells.size() == 1) {
            times.push_back(static_cast<double>(values.size()));
            values.push_back(cells[0]);
        } else if (cells.size() >= 2) {
            times.push_back(cells[0]);
            values.push_back(cells[1]);
        }
    }
    if (values.empty()) throw ConfigError("input CSV has no samples: " + input_path);

    const auto outputs = op.apply_input(values);
    auto f = open_output(out_path);
    f << std::setprecision(12);
    f << "time,output\n";
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        f << times[i] << ',' << outputs[i] << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preisach remnant-control toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string input_path;
    std::uint64_t seed_value = 0;
    int threads = 1;

    auto* curve = app.add_subcommand("curve", "Sweep the remnant curve to CSV");
    curve->add_option("--config", config_path, "curve config JSON")->required();
    curve->add_option("--out", out_path, "output CSV path")->required();

    auto* control = app.add_subcommand("control", "Run one control session to a trace CSV");
    control->add_option("--config", config_path, "control config JSON")->required();
    control->add_option("--out", out_path, "trace CSV path")->required();

    auto* mc = app.add_subcommand("montecarlo", "Run the Monte Carlo benchmark");
    mc->add_option("--config", config_path, "experiment config JSON (defaults when omitted)");
    mc->add_option("--out", out_path, "output directory")->required();
    auto* seed_opt = mc->add_option("--seed", seed_value, "override the experiment seed");
    mc->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("simulate", "Feed a raw input CSV through the operator");
    sim->add_option("--config", config_path, "operator config JSON (defaults when omitted)");
    sim->add_option("--input", input_path, "input CSV (time,value or one value per line)")
        ->required();
    sim->add_option("--out", out_path, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed()) return run_curve(config_path, out_path);
        if (control->parsed()) return run_control(config_path, out_path);
        if (mc->parsed()) {
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = seed_value;
            return run_montecarlo(config_path, out_path, seed, threads);
        }
        if (sim->parsed()) return run_simulate(config_path, input_path, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
