#include "sagsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace sagsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

LossModel make_free_space_loss(double carrier_hz, double excess_loss_db) {
    if (carrier_hz <= 0.0) throw std::invalid_argument("carrier frequency must be positive");
    return [carrier_hz, excess_loss_db](double distance_m) {
        if (distance_m <= 0.0) throw std::invalid_argument("loss model needs positive distance");
        double fspl = 20.0 * std::log10(4.0 * M_PI * distance_m * carrier_hz / kSpeedOfLight);
        return fspl + excess_loss_db;
    };
}

double rician_power(double k0, const Vec2& o) {
    double los = std::sqrt(k0 / (1.0 + k0));
    double nlos = std::sqrt(1.0 / (1.0 + k0));
    double re = los + nlos * o.x;
    double im = nlos * o.y;
    return re * re + im * im;
}

double v2x_path_gain(const NodeGeometry& vessel, const NodeGeometry& target,
                     double l0_linear) {
    double d2 = target.height_m * target.height_m + dist2(target.pos, vessel.pos);
    if (d2 <= 0.0) throw std::invalid_argument("zero-distance link geometry");
    return l0_linear / d2;
}

double v2x_gain(const NodeGeometry& vessel, const NodeGeometry& target,
                const FadingParams& params, const Vec2& o) {
    return v2x_path_gain(vessel, target, params.l0_linear) * rician_power(params.k0, o);
}

double u2h_gain(double g_u_linear, double g_h_linear, double loss_db) {
    return g_u_linear * g_h_linear * std::pow(10.0, -loss_db / 10.0);
}

double h2s_gain(double k0, double eta_db, double g_h_linear, double g_s_linear) {
    return k0 * std::pow(10.0, -eta_db / 10.0) * g_h_linear * g_s_linear;
}

double link_rate_bps(double bandwidth_hz, double tx_power_w, double gain,
                     double n0_w_hz) {
    if (bandwidth_hz < 0.0 || tx_power_w < 0.0 || gain < 0.0 || n0_w_hz <= 0.0)
        throw std::invalid_argument("link_rate: negative input");
    if (bandwidth_hz == 0.0 || gain == 0.0 || tx_power_w == 0.0) return 0.0;
    double snr = tx_power_w * gain / (n0_w_hz * bandwidth_hz);
    return bandwidth_hz * std::log1p(snr) / M_LN2;
}

std::int64_t isl_delay_slots(double tp_s, double tau_s) {
    if (tp_s < 0.0 || tau_s <= 0.0) throw std::invalid_argument("isl_delay_slots: bad args");
    if (tp_s == 0.0) return 0;
    // 0.2/0.1 rounds to 2.0000000000000004; shave division noise before ceil.
    double q = tp_s / tau_s;
    return static_cast<std::int64_t>(std::ceil(q - 1e-9));
}

}  // namespace sagsim
