#include "sagsim/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "sagsim/stats.hpp"
#include "sagsim/svg.hpp"

namespace sagsim {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ComputeFluctuation: return "compute_fluctuation";
        case ExperimentKind::BandwidthFluctuation: return "bandwidth_fluctuation";
        case ExperimentKind::HandoverDeficit: return "handover_deficit";
        case ExperimentKind::Custom: return "custom";
    }
    return "?";
}

bool parse_experiment(const std::string& name, ExperimentKind& out) {
    if (name == "compute_fluctuation") out = ExperimentKind::ComputeFluctuation;
    else if (name == "bandwidth_fluctuation") out = ExperimentKind::BandwidthFluctuation;
    else if (name == "handover_deficit") out = ExperimentKind::HandoverDeficit;
    else if (name == "custom") out = ExperimentKind::Custom;
    else return false;
    return true;
}

std::vector<double> default_sweep(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ComputeFluctuation:
        case ExperimentKind::BandwidthFluctuation:
            return {0, 10, 20, 30, 40, 50};
        case ExperimentKind::HandoverDeficit:
            return {0, 20, 40, 60, 80};
        case ExperimentKind::Custom:
            return {0};
    }
    return {};
}

std::vector<SchedulerVariant> default_variants(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ComputeFluctuation:
        case ExperimentKind::BandwidthFluctuation:
            return {SchedulerVariant::Dash, SchedulerVariant::DashNoHandover,
                    SchedulerVariant::OneShotProxy};
        case ExperimentKind::HandoverDeficit:
            return {SchedulerVariant::Dash, SchedulerVariant::DashNoHandover};
        case ExperimentKind::Custom:
            return {SchedulerVariant::Dash};
    }
    return {};
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void apply_knob(ScenarioConfig& cfg, ExperimentKind kind, double percent) {
    switch (kind) {
        case ExperimentKind::ComputeFluctuation: cfg.fluct_compute = percent / 100.0; break;
        case ExperimentKind::BandwidthFluctuation: cfg.fluct_bandwidth = percent / 100.0; break;
        case ExperimentKind::HandoverDeficit: cfg.incoming_deficit = percent / 100.0; break;
        case ExperimentKind::Custom: break;
    }
}

double metric_of(ExperimentKind kind, const ComparisonRow& row) {
    return kind == ExperimentKind::HandoverDeficit ? row.handover_backlog_bits
                                                   : row.mean_delay_s;
}

const char* metric_label(ExperimentKind kind) {
    return kind == ExperimentKind::HandoverDeficit ? "handover backlog (bits)"
                                                   : "mean task completion delay (s)";
}

const char* x_label(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ComputeFluctuation: return "compute fluctuation range (%)";
        case ExperimentKind::BandwidthFluctuation: return "bandwidth fluctuation range (%)";
        case ExperimentKind::HandoverDeficit: return "incoming satellite compute deficit (%)";
        case ExperimentKind::Custom: return "point";
    }
    return "";
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    ExperimentResult result;
    if (spec.sweep.empty()) throw std::invalid_argument("experiment sweep is empty");
    if (spec.variants.empty()) throw std::invalid_argument("experiment variant list is empty");
    if (spec.seeds_per_point < 1) throw std::invalid_argument("need at least one seed per point");

    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < spec.seeds_per_point; ++i) seeds.push_back(spec.seed_base + i);

    for (double x : spec.sweep) {
        ScenarioConfig cfg = spec.base;
        apply_knob(cfg, spec.kind, x);
        try {
            auto rows = compare_variants(cfg, spec.variants, seeds, spec.jobs);
            for (auto variant : spec.variants) {
                ExperimentPoint p;
                p.x = x;
                p.variant = variant;
                for (const auto& row : rows) {
                    if (row.variant != variant) continue;
                    p.samples.push_back(metric_of(spec.kind, row));
                    p.unfinished_runs += row.unfinished > 0 ? 1 : 0;
                }
                p.mean = mean(p.samples);
                p.se = stderr_of_mean(p.samples);
                result.points.push_back(std::move(p));
            }
        } catch (const std::exception& e) {
            result.failures.push_back("point x=" + fmt(x) + ": " + e.what());
        }
    }

    std::filesystem::create_directories(spec.out_dir);
    std::string stem = spec.out_dir + "/" + experiment_name(spec.kind);
    result.csv_path = stem + ".csv";
    result.svg_path = stem + ".svg";

    std::ofstream csv(result.csv_path);
    csv << "x_value,variant,mean,stderr\n";
    for (const auto& p : result.points)
        csv << fmt(p.x) << ',' << variant_name(p.variant) << ',' << fmt(p.mean) << ','
            << fmt(p.se) << '\n';

    ChartSpec chart;
    chart.title = experiment_name(spec.kind);
    chart.x_label = x_label(spec.kind);
    chart.y_label = metric_label(spec.kind);
    for (auto variant : spec.variants) {
        ChartSeries s;
        s.label = variant_name(variant);
        for (const auto& p : result.points) {
            if (p.variant != variant) continue;
            s.x.push_back(p.x);
            s.y.push_back(p.mean);
            s.yerr.push_back(p.se);
        }
        chart.series.push_back(std::move(s));
    }
    std::ofstream svg(result.svg_path);
    svg << render_line_chart(chart);
    return result;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "variant,seed,mean_delay_s,handover_backlog_bits,unfinished\n";
    for (const auto& r : rows)
        out << variant_name(r.variant) << ',' << r.seed << ',' << fmt(r.mean_delay_s) << ','
            << fmt(r.handover_backlog_bits) << ',' << r.unfinished << '\n';
}

}  // namespace sagsim
