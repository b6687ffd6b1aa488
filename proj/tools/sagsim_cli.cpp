// Command-line front end: single runs, canned experiment sweeps, and config
// validation. Exit codes: 0 success, 1 usage/config error, 2 runtime
// invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sagsim/experiment.hpp"
#include "sagsim/sim.hpp"

namespace {

using namespace sagsim;

int load_and_validate(const std::string& config_path,
                      const std::vector<std::string>& overrides, ScenarioConfig& cfg,
                      bool print_warnings) {
    std::vector<ConfigDiagnostic> diags;
    if (!config_path.empty() && !load_config(config_path, cfg, diags)) {
        for (const auto& d : diags) std::cerr << "error: " << d.key << ": " << d.message << "\n";
        return 1;
    }
    for (const auto& o : overrides)
        if (!apply_override(o, cfg, diags)) {
            for (const auto& d : diags)
                std::cerr << "error: " << d.key << ": " << d.message << "\n";
            return 1;
        }
    bool bad = false;
    for (const auto& d : validate_config(cfg)) {
        if (d.error) {
            std::cerr << "error: " << d.key << ": " << d.message << "\n";
            bad = true;
        } else if (print_warnings) {
            std::cerr << "warning: " << d.key << ": " << d.message << "\n";
        }
    }
    return bad ? 1 : 0;
}

std::ofstream open_sink(const std::string& dir, const char* name, const char* header) {
    std::ofstream out(dir + "/" + name);
    out << header;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-layer vessel/UAV/BS/HAP/satellite offloading simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", variant_str = "DASH", experiment_str;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1, seeds_per_point = 20;
    bool trace_queues = false, dump_pressure = false, opt_trace = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "INI config file (defaults if omitted)");
        cmd->add_option("--set", overrides, "Override: section.key=value")->take_all();
        cmd->add_option("--out-dir", out_dir, "Output directory");
    };

    CLI::App* run = app.add_subcommand("run", "Run a single scenario");
    add_common(run);
    run->add_option("--seed", seed, "Random seed")->each([&](const std::string&) { seed_given = true; });
    run->add_option("--variant", variant_str, "DASH | DASH_NO_HO | ONE_SHOT_PROXY");
    run->add_flag("--trace-queues", trace_queues, "Write per-slot queue CSV");
    run->add_flag("--dump-pressure", dump_pressure, "Write per-slot pressure CSV");
    run->add_flag("--opt-trace", opt_trace, "Write per-slot solver objective CSV");

    CLI::App* exp = app.add_subcommand("experiment", "Run a canned sweep");
    add_common(exp);
    exp->add_option("--experiment", experiment_str,
                    "compute_fluctuation | bandwidth_fluctuation | handover_deficit | custom")
        ->required();
    exp->add_option("--seeds", seeds_per_point, "Seeds per sweep point");
    exp->add_option("--seed", seed, "Base seed")->each([&](const std::string&) { seed_given = true; });
    exp->add_option("--jobs", jobs, "Worker threads");
    std::vector<std::string> variant_list;
    exp->add_option("--variant", variant_list, "Variants to compare (repeatable)")->take_all();

    CLI::App* val = app.add_subcommand("validate", "Validate a config file");
    val->add_option("--config", config_path, "INI config file")->required();
    val->add_option("--set", overrides, "Override: section.key=value")->take_all();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(val)) {
            ScenarioConfig cfg;
            int rc = load_and_validate(config_path, overrides, cfg, true);
            if (rc == 0) std::cout << "ok\n";
            return rc;
        }

        if (app.got_subcommand(run)) {
            ScenarioConfig cfg;
            if (int rc = load_and_validate(config_path, overrides, cfg, true)) return rc;
            if (seed_given) cfg.seed = seed;
            SchedulerVariant variant;
            if (!parse_variant(variant_str, variant)) {
                std::cerr << "error: unknown variant '" << variant_str << "'\n";
                return 1;
            }
            std::filesystem::create_directories(out_dir);

            std::ofstream qf, pf, of;
            TraceSinks sinks;
            if (trace_queues) {
                qf = open_sink(out_dir, "queues.csv", "slot,vessel,node,bits\n");
                sinks.queues = &qf;
            }
            if (dump_pressure) {
                pf = open_sink(out_dir, "pressure.csv", "slot,vessel,node,pressure,wmin\n");
                sinks.pressure = &pf;
            }
            if (opt_trace) {
                of = open_sink(out_dir, "opt_trace.csv",
                               "slot,bcd_iter,objective_bits,access_objective_bits\n");
                sinks.opt = &of;
            }

            Metrics m = run_scenario(cfg, variant, sinks);

            std::ofstream delays(out_dir + "/delays.csv");
            delays << "vessel,delay_s,finished\n";
            for (std::size_t v = 0; v < m.delay_s.size(); ++v) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.9g", m.delay_s[v]);
                delays << v << ',' << buf << ',' << (m.finished[v] ? 1 : 0) << '\n';
            }

            std::cout << "variant=" << variant_name(variant) << " seed=" << cfg.seed
                      << " slots=" << m.slots_run << " mean_delay_s=" << m.mean_delay_s
                      << " unfinished=" << m.unfinished
                      << " handover_backlog_bits=" << m.handover_backlog_bits
                      << " wall_s=" << m.wall_time_s << "\n";
            return 0;
        }

        // experiment
        ScenarioConfig cfg;
        if (int rc = load_and_validate(config_path, overrides, cfg, false)) return rc;
        ExperimentSpec spec;
        if (!parse_experiment(experiment_str, spec.kind)) {
            std::cerr << "error: unknown experiment '" << experiment_str << "'\n";
            return 1;
        }
        spec.base = cfg;
        spec.sweep = default_sweep(spec.kind);
        spec.variants = default_variants(spec.kind);
        if (!variant_list.empty()) {
            spec.variants.clear();
            for (const auto& name : variant_list) {
                SchedulerVariant v;
                if (!parse_variant(name, v)) {
                    std::cerr << "error: unknown variant '" << name << "'\n";
                    return 1;
                }
                spec.variants.push_back(v);
            }
        }
        spec.seeds_per_point = seeds_per_point;
        if (seed_given) spec.seed_base = seed;
        spec.jobs = jobs;
        spec.out_dir = out_dir;

        ExperimentResult res = run_experiment(spec);
        for (const auto& f : res.failures) std::cerr << "failed: " << f << "\n";
        std::cout << "wrote " << res.csv_path << " and " << res.svg_path << "\n";
        return 0;
    } catch (const SimInvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
