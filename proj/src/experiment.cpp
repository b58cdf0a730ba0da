#include "preisach/experiment.hpp"

#include "preisach/errors.hpp"
#include "preisach/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <thread>

namespace preisach {

namespace {

constexpr int kResampleCap = 100;

[[nodiscard]] ControllerConfig controller_from_json(const nlohmann::json& j,
                                                    const nlohmann::json& root) {
    ControllerConfig c;
    const auto get_or = [&](const char* key, double fallback) {
        if (j.contains(key)) return j.at(key).get<double>();
        if (root.contains(key)) return root.at(key).get<double>();
        return fallback;
    };
    c.max_amplitude = get_or("A_max", 400.0);
    c.tolerance = get_or("tolerance", 0.005);
    c.max_iterations = static_cast<int>(get_or("max_iterations", 50.0));
    c.initial_amplitude = j.value("initial_amplitude", 0.0);

    const std::string method = j.at("method").get<std::string>();
    if (method == "proportional") {
        c.law = Proportional{j.at("lambda").get<double>()};
    } else if (method == "newton") {
        c.law = Newton{};
    } else if (method == "secant") {
        c.law = Secant{j.at("A0").get<double>(), j.at("A1").get<double>()};
    } else {
        throw ConfigError("unknown controller method: " + method);
    }
    return c;
}

[[nodiscard]] nlohmann::json controller_to_json(const ControllerConfig& c) {
    nlohmann::json j;
    if (const auto* p = std::get_if<Proportional>(&c.law)) {
        j["method"] = "proportional";
        j["lambda"] = p->gain;
        j["initial_amplitude"] = c.initial_amplitude;
    } else if (std::holds_alternative<Newton>(c.law)) {
        j["method"] = "newton";
        j["initial_amplitude"] = c.initial_amplitude;
    } else {
        const auto& s = std::get<Secant>(c.law);
        j["method"] = "secant";
        j["A0"] = s.seed0;
        j["A1"] = s.seed1;
    }
    j["A_max"] = c.max_amplitude;
    j["tolerance"] = c.tolerance;
    j["max_iterations"] = c.max_iterations;
    return j;
}

void require_writable(const std::ofstream& f, const std::filesystem::path& path) {
    if (!f) throw ConfigError("cannot write output file: " + path.string());
}

}  // namespace

ExperimentConfig ExperimentConfig::benchmark_defaults() {
    ExperimentConfig cfg;
    cfg.samples = 100;
    cfg.target_mean = 0.1;
    cfg.target_std = 0.0878;
    cfg.seed = 1;
    cfg.grid_levels = 1000;
    cfg.bounds = PlaneBounds(-400.0, 400.0);
    cfg.weight = WeightField::uniform(cfg.bounds, 1.0 / 320000.0);
    cfg.equal_relay_weights = true;
    cfg.period = 2.0;

    ControllerConfig base;
    base.max_amplitude = 400.0;
    base.tolerance = 0.005;
    base.max_iterations = 50;

    ControllerConfig secant = base;
    secant.law = Secant{50.0, 100.0};
    cfg.methods.push_back({"secant", secant});
    for (const double gain : {100.0, 200.0, 300.0}) {
        ControllerConfig prop = base;
        prop.law = Proportional{gain};
        prop.initial_amplitude = 50.0;
        cfg.methods.push_back({"proportional_" + std::to_string(static_cast<int>(gain)), prop});
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg = benchmark_defaults();
    cfg.samples = j.value("samples", cfg.samples);
    cfg.target_mean = j.value("target_mean", cfg.target_mean);
    cfg.target_std = j.value("target_std", cfg.target_std);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid_levels = j.value("grid_levels", cfg.grid_levels);
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        cfg.bounds = PlaneBounds(b.at(0).get<double>(), b.at(1).get<double>());
        cfg.weight = WeightField::uniform(cfg.bounds, 1.0 / (cfg.bounds.span() *
                                                             cfg.bounds.span() / 2.0));
    }
    if (j.contains("weight")) {
        cfg.weight = WeightField::from_json(j.at("weight"), cfg.bounds);
    }
    cfg.equal_relay_weights = j.value("equal_relay_weights", cfg.equal_relay_weights);
    cfg.period = j.value("period", cfg.period);
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : j.at("methods")) {
            MethodConfig mc;
            mc.controller = controller_from_json(m, j);
            mc.name = m.value("name", m.at("method").get<std::string>());
            cfg.methods.push_back(std::move(mc));
        }
    }
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["samples"] = samples;
    j["target_mean"] = target_mean;
    j["target_std"] = target_std;
    j["seed"] = seed;
    j["grid_levels"] = grid_levels;
    j["bounds"] = {bounds.lo, bounds.hi};
    j["weight"] = weight.to_json();
    j["equal_relay_weights"] = equal_relay_weights;
    j["period"] = period;
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : methods) {
        nlohmann::json mj = controller_to_json(m.controller);
        mj["name"] = m.name;
        ms.push_back(std::move(mj));
    }
    j["methods"] = std::move(ms);
    return j;
}

DiscretePreisach make_operator(const ExperimentConfig& cfg) {
    if (cfg.grid_levels < 1) throw ConfigError("grid_levels must be >= 1");
    if (cfg.equal_relay_weights && std::string(cfg.weight.kind_name()) == "uniform") {
        const std::size_t count =
            static_cast<std::size_t>(cfg.grid_levels) * (cfg.grid_levels + 1) / 2;
        const double per_relay = cfg.weight.total_mass() / static_cast<double>(count);
        return DiscretePreisach(cfg.grid_levels, cfg.bounds, per_relay);
    }
    return DiscretePreisach::discretize(cfg.weight, cfg.grid_levels);
}

RemnantRange admissible_remnant_range(const DiscretePreisach& prototype, double max_amplitude) {
    DiscretePreisach neg = prototype;
    const std::array<double, 2> down{-max_amplitude, 0.0};
    neg.apply_input(down);
    DiscretePreisach pos = prototype;
    const std::array<double, 2> up{max_amplitude, 0.0};
    pos.apply_input(up);
    return {neg.output(), pos.output()};
}

ExperimentResult run_monte_carlo(const ExperimentConfig& cfg, int threads) {
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
    if (cfg.methods.empty()) throw ConfigError("no controller methods configured");
    if (!std::isfinite(cfg.target_mean) || !std::isfinite(cfg.target_std) ||
        cfg.target_std < 0.0) {
        throw ConfigError("target distribution parameters must be finite, std >= 0");
    }

    const DiscretePreisach prototype = make_operator(cfg);
    double a_max = 0.0;
    for (const auto& m : cfg.methods) a_max = std::max(a_max, m.controller.max_amplitude);
    const RemnantRange range = admissible_remnant_range(prototype, a_max);
    if (cfg.target_mean < range.lo || cfg.target_mean > range.hi) {
        throw ConfigError("target mean " + std::to_string(cfg.target_mean) +
                          " outside the reachable remnant range [" + std::to_string(range.lo) +
                          ", " + std::to_string(range.hi) + "]");
    }

    const int method_count = static_cast<int>(cfg.methods.size());
    ExperimentResult result;
    result.feasible_lo = range.lo;
    result.feasible_hi = range.hi;
    result.per_sample.resize(static_cast<std::size_t>(cfg.samples) * method_count);

    std::atomic<int> next{0};
    std::atomic<int> resamples{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&]() {
        try {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= cfg.samples) return;
                auto eng = sample_stream(cfg.seed, static_cast<std::uint64_t>(i));
                double target = 0.0;
                int tries = 0;
                for (;;) {
                    target = normal_polar(eng, cfg.target_mean, cfg.target_std);
                    ++tries;
                    if (target >= range.lo && target <= range.hi) break;
                    if (tries >= kResampleCap) {
                        throw ConfigError("sample " + std::to_string(i) + ": no feasible target in " +
                                          std::to_string(kResampleCap) + " draws");
                    }
                }
                resamples.fetch_add(tries - 1);

                for (int m = 0; m < method_count; ++m) {
                    DiscretePreisach op = prototype;
                    ControllerConfig run_cfg = cfg.methods[m].controller;
                    run_cfg.target = target;
                    SampleOutcome outcome;
                    outcome.sample = i;
                    outcome.method = cfg.methods[m].name;
                    outcome.target = target;
                    try {
                        outcome.trace = run_controller(op, cfg.weight, run_cfg, cfg.period);
                        outcome.iterations = outcome.trace.iterations();
                        outcome.converged = outcome.trace.converged;
                        outcome.final_error = outcome.trace.final_error();
                    } catch (const std::exception&) {
                        // Aborted runs (degenerate slope, repeated clamp) count as
                        // non-converged at the iteration cap.
                        outcome.iterations = run_cfg.max_iterations;
                        outcome.converged = false;
                        outcome.final_error = std::numeric_limits<double>::infinity();
                    }
                    result.per_sample[static_cast<std::size_t>(i) * method_count + m] =
                        std::move(outcome);
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int pool = std::clamp(threads, 1, std::max(1, cfg.samples));
    if (pool == 1) {
        worker();
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(pool));
        for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
        for (auto& w : workers) w.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.resamples = resamples.load();
    for (const auto& outcome : result.per_sample) {
        ++result.histogram[outcome.method][outcome.iterations];
    }
    return result;
}

void write_experiment_outputs(const ExperimentResult& result, const ExperimentConfig& cfg,
                              const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + out_dir.string());

    {
        const auto path = out_dir / "histogram.csv";
        std::ofstream f(path);
        require_writable(f, path);
        f << "method,iterations,count\n";
        for (const auto& m : cfg.methods) {
            const auto it = result.histogram.find(m.name);
            if (it == result.histogram.end()) continue;
            for (const auto& [iterations, count] : it->second) {
                f << m.name << ',' << iterations << ',' << count << '\n';
            }
        }
    }
    {
        const auto path = out_dir / "transients.csv";
        std::ofstream f(path);
        require_writable(f, path);
        f << std::setprecision(12);
        f << "sample,method,k,A_k,y_k,e_k\n";
        for (const auto& outcome : result.per_sample) {
            for (const auto& r : outcome.trace.rows) {
                f << outcome.sample << ',' << outcome.method << ',' << r.iteration << ','
                  << r.amplitude << ',' << r.output << ',' << r.error << '\n';
            }
        }
    }
    {
        const auto path = out_dir / "summary.json";
        std::ofstream f(path);
        require_writable(f, path);
        nlohmann::ordered_json j;
        j["samples"] = cfg.samples;
        j["seed"] = cfg.seed;
        j["normal_algorithm"] = kNormalAlgorithm;
        j["target_mean"] = cfg.target_mean;
        j["target_std"] = cfg.target_std;
        j["resamples"] = result.resamples;
        j["feasible_interval"] = {result.feasible_lo, result.feasible_hi};
        j["weight_kind"] = cfg.weight.kind_name();
        j["grid_levels"] = cfg.grid_levels;
        nlohmann::ordered_json methods = nlohmann::ordered_json::array();
        for (const auto& m : cfg.methods) {
            std::vector<int> counts;
            int converged = 0;
            for (const auto& outcome : result.per_sample) {
                if (outcome.method != m.name) continue;
                counts.push_back(outcome.iterations);
                if (outcome.converged) ++converged;
            }
            std::sort(counts.begin(), counts.end());
            nlohmann::ordered_json mj;
            mj["name"] = m.name;
            mj["runs"] = counts.size();
            if (counts.empty()) {
                mj["mean_iterations"] = 0.0;
                mj["median_iterations"] = 0.0;
                mj["convergence_rate"] = 0.0;
            } else {
                double sum = 0.0;
                for (const int c : counts) sum += c;
                mj["mean_iterations"] = sum / static_cast<double>(counts.size());
                const std::size_t n = counts.size();
                const double median =
                    (n % 2 == 1) ? counts[n / 2]
                                 : 0.5 * (counts[n / 2 - 1] + counts[n / 2]);
                mj["median_iterations"] = median;
                mj["convergence_rate"] = static_cast<double>(converged) /
                                         static_cast<double>(counts.size());
            }
            methods.push_back(std::move(mj));
        }
        j["methods"] = std::move(methods);
        f << j.dump(2) << '\n';
    }
}

}  // namespace preisach
