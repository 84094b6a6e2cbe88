#pragma once

#include <cmath>

#include "fsomcast/errors.hpp"

namespace fsomcast {

inline constexpr double kSpeedOfLight = 2.99792458e8;     // m/s
inline constexpr double kPlanckConstant = 6.62607015e-34; // J*s

inline double dbm_to_watts(double dbm) {
    return std::pow(10.0, dbm / 10.0) / 1000.0;
}

inline double wavelength_to_frequency(double wavelength_m) {
    if (!(wavelength_m > 0.0)) {
        throw InvalidParamsError("wavelength must be > 0");
    }
    return kSpeedOfLight / wavelength_m;
}

// Physical-layer constants of the FSO link budget. Pointing losses and
// optical efficiencies default to unity; attenuation defaults to a
// clear-air 0.43 dB/km.
struct FsoLinkParams {
    double transmit_power_w = 0.019952623149688796; // 13 dBm
    double aperture_diameter_m = 0.012;
    double pointing_loss_tx = 1.0;
    double pointing_loss_rx = 1.0;
    double efficiency_tx = 1.0;
    double efficiency_rx = 1.0;
    double attenuation_db_per_km = 0.43;
    double optical_frequency_hz = kSpeedOfLight / 1550e-9;
    double detector_sensitivity = 0.1875; // photons per bit
};

inline void validate(const FsoLinkParams& p) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    auto loss = [&](double v) { return positive(v) && v <= 1.0; };
    if (!positive(p.transmit_power_w)) throw InvalidParamsError("transmit power must be > 0");
    if (!positive(p.aperture_diameter_m)) throw InvalidParamsError("aperture diameter must be > 0");
    if (!loss(p.pointing_loss_tx) || !loss(p.pointing_loss_rx))
        throw InvalidParamsError("pointing losses must lie in (0, 1]");
    if (!loss(p.efficiency_tx) || !loss(p.efficiency_rx))
        throw InvalidParamsError("optical efficiencies must lie in (0, 1]");
    if (!(p.attenuation_db_per_km >= 0.0) || !std::isfinite(p.attenuation_db_per_km))
        throw InvalidParamsError("attenuation must be >= 0");
    if (!positive(p.optical_frequency_hz)) throw InvalidParamsError("optical frequency must be > 0");
    if (!positive(p.detector_sensitivity)) throw InvalidParamsError("detector sensitivity must be > 0");
}

// Received power at divergence angle theta over a path of `distance`
// meters. The attenuation exponent divides by 1e4: distance is in meters,
// the attenuation coefficient in dB/km, and dB convert to a ratio via /10.
inline double received_power(const FsoLinkParams& params, double theta,
                             double distance) {
    if (!(theta > 0.0)) throw InvalidParamsError("divergence angle must be > 0");
    if (!(distance > 0.0)) throw InvalidParamsError("link distance must be > 0");
    const double geometry = params.aperture_diameter_m / (theta * distance);
    const double attenuation =
        std::pow(10.0, -params.attenuation_db_per_km * distance / 1e4);
    return params.transmit_power_w * geometry * geometry *
           params.pointing_loss_tx * params.pointing_loss_rx *
           params.efficiency_tx * params.efficiency_rx * attenuation;
}

// Effective data rate in bits/s: received photon flux divided by the
// photons-per-bit detector sensitivity.
inline double data_rate(const FsoLinkParams& params, double theta,
                        double distance) {
    return received_power(params, theta, distance) /
           (kPlanckConstant * params.optical_frequency_hz *
            params.detector_sensitivity);
}

} // namespace fsomcast
