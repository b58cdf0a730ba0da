#pragma once

// Monte Carlo benchmark: batches of control runs against normally distributed
// remnant targets, one fresh operator per (sample, method), deterministic for
// a fixed seed regardless of worker count.

#include "preisach/control.hpp"
#include "preisach/plane.hpp"
#include "preisach/weight_field.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace preisach {

struct MethodConfig {
    std::string name;
    ControllerConfig controller;
};

struct ExperimentConfig {
    int samples = 100;
    double target_mean = 0.1;
    double target_std = 0.0878;
    std::uint64_t seed = 1;
    int grid_levels = 1000;
    PlaneBounds bounds{-400.0, 400.0};
    WeightField weight = WeightField::uniform(bounds, 1.0 / 320000.0);
    bool equal_relay_weights = true;  // split total mass equally per relay
    double period = 2.0;
    std::vector<MethodConfig> methods;

    /// The benchmark defaults: uniform unit mass on [-400,400], 1000 levels,
    /// secant seeded at 50/100 plus proportional gains 100/200/300.
    static ExperimentConfig benchmark_defaults();

    static ExperimentConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
};

struct SampleOutcome {
    int sample;
    std::string method;
    double target;
    int iterations;
    bool converged;
    double final_error;
    IterationTrace trace;
};

struct ExperimentResult {
    std::vector<SampleOutcome> per_sample;  // ordered by (sample, method position)
    std::map<std::string, std::map<int, int>> histogram;  // method -> iterations -> count
    int resamples = 0;                      // targets redrawn for feasibility
    double feasible_lo = 0.0;               // reachable remnant interval
    double feasible_hi = 0.0;
};

/// Runs every configured method on every sample. Targets are drawn per sample
/// from an independent stream and resampled (up to 100 attempts) until they
/// land in the reachable remnant interval.
ExperimentResult run_monte_carlo(const ExperimentConfig& cfg, int threads = 1);

/// Writes histogram.csv, transients.csv and summary.json into out_dir.
void write_experiment_outputs(const ExperimentResult& result, const ExperimentConfig& cfg,
                              const std::filesystem::path& out_dir);

/// Builds the operator the experiment runs against.
[[nodiscard]] DiscretePreisach make_operator(const ExperimentConfig& cfg);

/// Reachable remnant interval [post-negative-reset, post-positive-reset].
struct RemnantRange {
    double lo;
    double hi;
};
[[nodiscard]] RemnantRange admissible_remnant_range(const DiscretePreisach& prototype,
                                                    double max_amplitude);

}  // namespace preisach
