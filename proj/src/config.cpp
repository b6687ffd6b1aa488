#include "sagsim/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

namespace sagsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct FieldMap {
    std::map<std::string, double ScenarioConfig::*> doubles;
    std::map<std::string, int ScenarioConfig::*> ints;
    std::map<std::string, std::int64_t ScenarioConfig::*> longs;
    std::map<std::string, std::uint64_t ScenarioConfig::*> ulongs;
    std::map<std::string, bool ScenarioConfig::*> bools;
    std::map<std::string, std::string ScenarioConfig::*> strings;

    FieldMap() {
        doubles = {
            {"scenario.area_m", &ScenarioConfig::area_m},
            {"scenario.slot_s", &ScenarioConfig::slot_s},
            {"tasks.data_bits_min", &ScenarioConfig::data_bits_min},
            {"tasks.data_bits_max", &ScenarioConfig::data_bits_max},
            {"tasks.density_min_cpb", &ScenarioConfig::density_min_cpb},
            {"tasks.density_max_cpb", &ScenarioConfig::density_max_cpb},
            {"tasks.arrival_bits", &ScenarioConfig::arrival_bits},
            {"mobility.vessel_speed_min", &ScenarioConfig::vessel_speed_min},
            {"mobility.vessel_speed_max", &ScenarioConfig::vessel_speed_max},
            {"mobility.uav_max_speed", &ScenarioConfig::uav_max_speed},
            {"mobility.d_safe_m", &ScenarioConfig::d_safe_m},
            {"nodes.uav_height_m", &ScenarioConfig::uav_height_m},
            {"nodes.bs_height_m", &ScenarioConfig::bs_height_m},
            {"nodes.hap_height_m", &ScenarioConfig::hap_height_m},
            {"nodes.bs_x_m", &ScenarioConfig::bs_x_m},
            {"nodes.bs_y_m", &ScenarioConfig::bs_y_m},
            {"channel.l0_db", &ScenarioConfig::l0_db},
            {"channel.k0", &ScenarioConfig::k0},
            {"channel.n0_dbm_hz", &ScenarioConfig::n0_dbm_hz},
            {"channel.excess_u2h_db", &ScenarioConfig::excess_u2h_db},
            {"channel.excess_h2s_db", &ScenarioConfig::excess_h2s_db},
            {"channel.carrier_u2h_hz", &ScenarioConfig::carrier_u2h_hz},
            {"channel.carrier_h2s_hz", &ScenarioConfig::carrier_h2s_hz},
            {"channel.h2s_distance_m", &ScenarioConfig::h2s_distance_m},
            {"servers.f_uav", &ScenarioConfig::f_uav},
            {"servers.f_bs", &ScenarioConfig::f_bs},
            {"servers.f_hap", &ScenarioConfig::f_hap},
            {"servers.f_sat", &ScenarioConfig::f_sat},
            {"servers.bw_uav_hz", &ScenarioConfig::bw_uav_hz},
            {"servers.bw_bs_hz", &ScenarioConfig::bw_bs_hz},
            {"servers.bw_hap_hz", &ScenarioConfig::bw_hap_hz},
            {"servers.bw_sat_hz", &ScenarioConfig::bw_sat_hz},
            {"servers.p_vessel_w", &ScenarioConfig::p_vessel_w},
            {"servers.p_uav_w", &ScenarioConfig::p_uav_w},
            {"servers.p_hap_w", &ScenarioConfig::p_hap_w},
            {"servers.g_uav_dbi", &ScenarioConfig::g_uav_dbi},
            {"servers.g_hap_dbi", &ScenarioConfig::g_hap_dbi},
            {"servers.g_sat_dbi", &ScenarioConfig::g_sat_dbi},
            {"fluctuation.compute_range", &ScenarioConfig::fluct_compute},
            {"fluctuation.bandwidth_range", &ScenarioConfig::fluct_bandwidth},
            {"handover.time_s", &ScenarioConfig::handover_time_s},
            {"handover.window_s", &ScenarioConfig::window_s},
            {"handover.isl_delay_s", &ScenarioConfig::isl_delay_s},
            {"handover.incoming_deficit", &ScenarioConfig::incoming_deficit},
            {"handover.incoming_backlog_bits", &ScenarioConfig::incoming_backlog_bits},
            {"handover.period_s", &ScenarioConfig::handover_period_s},
            {"solver.bcd_tol", &ScenarioConfig::bcd_tol},
            {"solver.sca_tol", &ScenarioConfig::sca_tol},
            {"solver.pg_tol", &ScenarioConfig::pg_tol},
        };
        ints = {
            {"scenario.vessels", &ScenarioConfig::vessels},
            {"scenario.uavs", &ScenarioConfig::uavs},
            {"solver.bcd_max_iters", &ScenarioConfig::bcd_max_iters},
            {"solver.sca_max_iters", &ScenarioConfig::sca_max_iters},
            {"solver.pg_max_iters", &ScenarioConfig::pg_max_iters},
        };
        longs = {
            {"scenario.horizon_slots", &ScenarioConfig::horizon_slots},
            {"tasks.arrival_period_slots", &ScenarioConfig::arrival_period_slots},
        };
        ulongs = {
            {"scenario.seed", &ScenarioConfig::seed},
        };
        bools = {
            {"tasks.integer_bits", &ScenarioConfig::integer_bits},
            {"checks.constraints", &ScenarioConfig::check_constraints},
            {"checks.conservation", &ScenarioConfig::check_conservation},
        };
        strings = {
            {"tasks.arrival_mode", &ScenarioConfig::arrival_mode},
            {"channel.loss_model", &ScenarioConfig::loss_model},
            {"handover.schedule", &ScenarioConfig::handover_schedule},
        };
    }
};

const FieldMap& fields() {
    static FieldMap fm;
    return fm;
}

bool set_field(const std::string& key, const std::string& value, ScenarioConfig& cfg,
               std::vector<ConfigDiagnostic>& diags) {
    const FieldMap& fm = fields();
    auto bad_value = [&]() {
        diags.push_back({true, key, "cannot parse value '" + value + "'"});
        return false;
    };

    if (auto it = fm.doubles.find(key); it != fm.doubles.end()) {
        char* end = nullptr;
        double x = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') return bad_value();
        cfg.*(it->second) = x;
        return true;
    }
    if (auto it = fm.ints.find(key); it != fm.ints.end()) {
        char* end = nullptr;
        long x = std::strtol(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') return bad_value();
        cfg.*(it->second) = static_cast<int>(x);
        return true;
    }
    if (auto it = fm.longs.find(key); it != fm.longs.end()) {
        char* end = nullptr;
        long long x = std::strtoll(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') return bad_value();
        cfg.*(it->second) = x;
        return true;
    }
    if (auto it = fm.ulongs.find(key); it != fm.ulongs.end()) {
        char* end = nullptr;
        unsigned long long x = std::strtoull(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') return bad_value();
        cfg.*(it->second) = x;
        return true;
    }
    if (auto it = fm.bools.find(key); it != fm.bools.end()) {
        if (value == "true" || value == "1")
            cfg.*(it->second) = true;
        else if (value == "false" || value == "0")
            cfg.*(it->second) = false;
        else
            return bad_value();
        return true;
    }
    if (auto it = fm.strings.find(key); it != fm.strings.end()) {
        cfg.*(it->second) = value;
        return true;
    }
    diags.push_back({true, key, "unknown config key"});
    return false;
}

}  // namespace

bool load_config(const std::string& path, ScenarioConfig& out,
                 std::vector<ConfigDiagnostic>& diags) {
    std::ifstream in(path);
    if (!in) {
        diags.push_back({true, path, "cannot open config file"});
        return false;
    }
    std::string line, section;
    bool ok = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                diags.push_back({true, path + ":" + std::to_string(lineno), "malformed section"});
                ok = false;
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            diags.push_back({true, path + ":" + std::to_string(lineno), "expected key = value"});
            ok = false;
            continue;
        }
        std::string key = section + "." + trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        ok = set_field(key, value, out, diags) && ok;
    }
    return ok;
}

bool apply_override(const std::string& spec, ScenarioConfig& out,
                    std::vector<ConfigDiagnostic>& diags) {
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
        diags.push_back({true, spec, "expected section.key=value"});
        return false;
    }
    return set_field(trim(spec.substr(0, eq)), trim(spec.substr(eq + 1)), out, diags);
}

std::vector<ConfigDiagnostic> validate_config(const ScenarioConfig& c) {
    std::vector<ConfigDiagnostic> d;
    auto err = [&](const std::string& key, const std::string& msg) { d.push_back({true, key, msg}); };
    auto warn = [&](const std::string& key, const std::string& msg) { d.push_back({false, key, msg}); };

    if (c.vessels < 1) err("scenario.vessels", "need at least one vessel");
    if (c.uavs < 1) err("scenario.uavs", "need at least one UAV");
    if (c.area_m <= 0.0) err("scenario.area_m", "area must be positive");
    if (c.slot_s <= 0.0) err("scenario.slot_s", "slot length must be positive");
    if (c.horizon_slots < 0) err("scenario.horizon_slots", "horizon cannot be negative");

    if (c.data_bits_min < 0.0 || c.data_bits_max < c.data_bits_min)
        err("tasks.data_bits", "need 0 <= min <= max");
    if (c.density_min_cpb <= 0.0 || c.density_max_cpb < c.density_min_cpb)
        err("tasks.density_cpb", "need 0 < min <= max");
    if (c.arrival_mode != "all_at_zero" && c.arrival_mode != "staggered")
        err("tasks.arrival_mode", "unknown arrival mode '" + c.arrival_mode + "'");
    if (c.arrival_mode == "staggered" &&
        (c.arrival_period_slots < 1 || c.arrival_bits < 0.0))
        err("tasks.arrival", "staggered mode needs period >= 1 and bits >= 0");

    if (c.vessel_speed_min < 0.0 || c.vessel_speed_max < c.vessel_speed_min)
        err("mobility.vessel_speed", "need 0 <= min <= max");
    if (c.uav_max_speed < 0.0) err("mobility.uav_max_speed", "negative UAV speed");
    if (c.d_safe_m < 0.0) err("mobility.d_safe_m", "negative safety distance");

    if (c.uav_height_m <= 0.0 || c.bs_height_m <= 0.0 || c.hap_height_m <= 0.0)
        err("nodes.heights", "server heights must be positive");

    if (c.k0 < 0.0) err("channel.k0", "Rician factor cannot be negative");
    if (c.loss_model != "free_space")
        err("channel.loss_model", "unknown loss model '" + c.loss_model + "'");
    if (c.carrier_u2h_hz <= 0.0 || c.carrier_h2s_hz <= 0.0)
        err("channel.carrier_hz", "carrier frequencies must be positive");
    if (c.h2s_distance_m <= 0.0) err("channel.h2s_distance_m", "distance must be positive");
    if (c.excess_u2h_db < 0.0 || c.excess_h2s_db < 0.0)
        err("channel.excess_loss_db", "excess loss cannot be negative");

    if (c.f_uav < 0.0 || c.f_bs < 0.0 || c.f_hap < 0.0 || c.f_sat < 0.0)
        err("servers.f", "negative compute capacity");
    if (c.bw_uav_hz < 0.0 || c.bw_bs_hz < 0.0 || c.bw_hap_hz < 0.0 || c.bw_sat_hz < 0.0)
        err("servers.bw", "negative bandwidth");
    if (c.p_vessel_w < 0.0 || c.p_uav_w < 0.0 || c.p_hap_w < 0.0)
        err("servers.p", "negative transmit power");

    if (c.fluct_compute < 0.0 || c.fluct_compute > 1.0)
        err("fluctuation.compute_range", "must lie in [0, 1]");
    if (c.fluct_bandwidth < 0.0 || c.fluct_bandwidth > 1.0)
        err("fluctuation.bandwidth_range", "must lie in [0, 1]");

    if (c.window_s <= 0.0) err("handover.window_s", "pre-handover window must be positive");
    if (c.handover_time_s <= 0.0) err("handover.time_s", "handover time must be positive");
    if (c.window_s >= c.handover_time_s)
        err("handover.window_s", "window must end strictly before the handover time");
    if (c.isl_delay_s < 0.0) err("handover.isl_delay_s", "negative ISL delay");
    if (c.incoming_deficit < 0.0 || c.incoming_deficit > 1.0)
        err("handover.incoming_deficit", "must lie in [0, 1]");
    if (c.incoming_backlog_bits < 0.0) err("handover.incoming_backlog_bits", "negative backlog");
    if (c.handover_schedule != "single" && c.handover_schedule != "periodic")
        err("handover.schedule", "unknown schedule '" + c.handover_schedule + "'");
    if (c.handover_schedule == "periodic" && c.handover_period_s <= 0.0)
        err("handover.period_s", "period must be positive");

    if (c.bcd_max_iters < 1 || c.sca_max_iters < 1 || c.pg_max_iters < 1)
        err("solver.max_iters", "iteration limits must be at least 1");
    if (c.bcd_tol <= 0.0 || c.sca_tol <= 0.0 || c.pg_tol <= 0.0)
        err("solver.tol", "tolerances must be positive");

    // Soft range advisories against the reference setup.
    if (c.vessels < 10 || c.vessels > 30)
        warn("scenario.vessels", "outside the reference range 10..30");
    if (c.data_bits_min < 2e6 || c.data_bits_max > 1e7)
        warn("tasks.data_bits", "outside the reference range 2..10 Mb");
    if (c.density_min_cpb < 100.0 || c.density_max_cpb > 2000.0)
        warn("tasks.density_cpb", "outside the reference range 100..2000");
    if (c.slot_s != 0.1) warn("scenario.slot_s", "reference slot length is 0.1 s");

    return d;
}

}  // namespace sagsim
