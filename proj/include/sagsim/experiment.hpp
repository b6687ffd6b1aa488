#pragma once

#include <string>
#include <vector>

#include "sagsim/sim.hpp"

namespace sagsim {

/// Canned sweeps mirroring the reference experiments: completion delay under
/// compute/bandwidth fluctuation, and handover backlog under an incoming-
/// satellite compute deficit. `Custom` runs the base config as a single point.
enum class ExperimentKind { ComputeFluctuation, BandwidthFluctuation, HandoverDeficit, Custom };

const char* experiment_name(ExperimentKind k);
bool parse_experiment(const std::string& name, ExperimentKind& out);
std::vector<double> default_sweep(ExperimentKind k);          // x values in percent
std::vector<SchedulerVariant> default_variants(ExperimentKind k);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Custom;
    ScenarioConfig base;
    std::vector<double> sweep;                   // percent values
    std::vector<SchedulerVariant> variants;
    int seeds_per_point = 20;
    std::uint64_t seed_base = 1;
    int jobs = 1;
    std::string out_dir = ".";
};

struct ExperimentPoint {
    double x = 0.0;                   // percent
    SchedulerVariant variant = SchedulerVariant::Dash;
    double mean = 0.0;
    double se = 0.0;
    int unfinished_runs = 0;
    std::vector<double> samples;      // per-seed metric values
};

struct ExperimentResult {
    std::vector<ExperimentPoint> points;   // sweep-major, variant-minor order
    std::vector<std::string> failures;     // per-point error reports
    std::string csv_path;
    std::string svg_path;
};

/// Applies the sweep knob per point, runs every (variant, seed) pair with
/// common random numbers, and writes one CSV plus one SVG chart. Points that
/// fail are reported and skipped; the sweep continues.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Per-run comparison table: one row per (variant, seed).
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

}  // namespace sagsim
