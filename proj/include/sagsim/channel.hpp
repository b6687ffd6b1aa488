#pragma once

#include <cstdint>
#include <functional>

#include "sagsim/geometry.hpp"
#include "sagsim/model.hpp"

namespace sagsim {

/// Channel constants in linear units. dB/dBm conversions happen once at
/// config load; runtime math stays linear.
struct FadingParams {
    double l0_linear = 1e-3;   // reference path loss at 1 m, power ratio
    double k0 = 10.0;          // Rician factor
    double n0_w_hz = 3.9810717055349694e-21;  // -174 dBm/Hz
};

/// Pluggable large-scale loss in dB as a function of link distance.
/// One instance serves the UAV-to-HAP total path loss, another the
/// HAP-to-satellite large-scale fading.
using LossModel = std::function<double(double distance_m)>;

/// Free-space path loss in dB at the given carrier, plus a constant excess.
LossModel make_free_space_loss(double carrier_hz, double excess_loss_db);

/// |h^R|^2 for a drawn scatter sample o ~ CN(0,1).
double rician_power(double k0, const Vec2& o);

/// Path-loss component L0 / (H_i^2 + ||W_i - W_v||^2). Throws
/// std::invalid_argument when the 3-D link distance is zero.
double v2x_path_gain(const NodeGeometry& vessel, const NodeGeometry& target,
                     double l0_linear);

/// Full vessel-to-UAV/BS channel gain h = h^L * |h^R|^2 with the scatter
/// component o redrawn by the caller each slot.
double v2x_gain(const NodeGeometry& vessel, const NodeGeometry& target,
                const FadingParams& params, const Vec2& o);

/// UAV-to-HAP link gain from antenna gains (linear) and total path loss (dB).
double u2h_gain(double g_u_linear, double g_h_linear, double loss_db);

/// HAP-to-satellite gain h = K0 * 10^(-eta/10) * G_h * G_s.
double h2s_gain(double k0, double eta_db, double g_h_linear, double g_s_linear);

/// Shannon rate B log2(1 + P h / (N0 B)) in bit/s. Zero bandwidth or zero
/// gain yields rate 0. Negative inputs are rejected.
double link_rate_bps(double bandwidth_hz, double tx_power_w, double gain,
                     double n0_w_hz);

/// Number of slots transferred backlog is unavailable after a handover:
/// ceil(T_p / tau), tolerant of floating division noise.
std::int64_t isl_delay_slots(double tp_s, double tau_s);

}  // namespace sagsim
