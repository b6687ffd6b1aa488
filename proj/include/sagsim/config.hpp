#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagsim/geometry.hpp"

namespace sagsim {

/// Full experiment description. Defaults reproduce the desk-scale reference
/// setup; every field can be overridden from an INI-style config file
/// (see configs/default.ini for the commented schema).
struct ScenarioConfig {
    // [scenario]
    int vessels = 10;
    int uavs = 6;
    double area_m = 2000.0;
    std::int64_t horizon_slots = 3000;
    double slot_s = 0.1;
    std::uint64_t seed = 1;

    // [tasks]
    double data_bits_min = 2e6;
    double data_bits_max = 1e7;
    double density_min_cpb = 100.0;
    double density_max_cpb = 2000.0;
    std::string arrival_mode = "all_at_zero";   // or "staggered"
    std::int64_t arrival_period_slots = 10;
    double arrival_bits = 5e5;
    bool integer_bits = false;

    // [mobility]
    double vessel_speed_min = 5.0;
    double vessel_speed_max = 15.0;
    double uav_max_speed = 15.0;
    double d_safe_m = 5.0;

    // [nodes]
    double uav_height_m = 100.0;
    double bs_height_m = 30.0;
    double hap_height_m = 20000.0;
    double bs_x_m = 0.0;
    double bs_y_m = 1000.0;

    // [channel]  (excess losses fold the cited composite relay-loss models
    // into the free-space default; 0 dB makes relay links so fast that
    // homogenized link distances swamp queue-scale pressure)
    double l0_db = -30.0;
    double k0 = 10.0;
    double n0_dbm_hz = -174.0;
    std::string loss_model = "free_space";
    double excess_u2h_db = 56.0;
    double excess_h2s_db = 35.0;
    double carrier_u2h_hz = 2e9;
    double carrier_h2s_hz = 2e10;
    double h2s_distance_m = 784e3;

    // [servers]  (compute in cycles/slot, bandwidth in Hz, power in W, gain in dBi)
    double f_uav = 1e8;
    double f_bs = 3e8;
    double f_hap = 3e8;
    double f_sat = 1e9;
    double bw_uav_hz = 10e6;
    double bw_bs_hz = 20e6;
    double bw_hap_hz = 20e6;
    double bw_sat_hz = 50e6;
    double p_vessel_w = 1.0;
    double p_uav_w = 1.5;
    double p_hap_w = 2.5;
    double g_uav_dbi = 25.0;
    double g_hap_dbi = 30.0;
    double g_sat_dbi = 35.0;

    // [fluctuation]  (fractions of nominal, uniform per server per slot)
    double fluct_compute = 0.0;
    double fluct_bandwidth = 0.0;

    // [handover]  (scaled to the task timescale; a ~10 s desk-scale scenario
    // plays out what a minutes-long LEO pass does at full scale)
    double handover_time_s = 1.5;
    double window_s = 1.4;
    double isl_delay_s = 0.1;
    double incoming_deficit = 0.0;          // incoming = (1 - deficit) * f_sat
    double incoming_backlog_bits = 0.0;     // stress-test knob, per vessel
    std::string handover_schedule = "single";   // or "periodic"
    double handover_period_s = 4.0;

    // [solver]
    int bcd_max_iters = 10;
    double bcd_tol = 1e-3;
    int sca_max_iters = 10;
    double sca_tol = 1e-3;
    int pg_max_iters = 200;
    double pg_tol = 1e-6;

    // [checks]
    bool check_constraints = true;
    bool check_conservation = true;
};

struct ConfigDiagnostic {
    bool error = false;     // false = warning
    std::string key;
    std::string message;
};

/// Parses an INI-style file over the defaults. Unknown sections/keys and
/// malformed values are reported as errors.
bool load_config(const std::string& path, ScenarioConfig& out,
                 std::vector<ConfigDiagnostic>& diags);

/// Applies a single "section.key=value" override (the CLI's --set flag).
bool apply_override(const std::string& spec, ScenarioConfig& out,
                    std::vector<ConfigDiagnostic>& diags);

/// Range checks: physical impossibilities are errors, departures from the
/// reference parameter ranges are warnings.
std::vector<ConfigDiagnostic> validate_config(const ScenarioConfig& cfg);

}  // namespace sagsim
