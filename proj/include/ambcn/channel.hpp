// SPDX-License-Identifier: Apache-2.0
//
// ambcn: finite-blocklength BLER toolkit for AmBC-NOMA V2X links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "ambcn/rng.hpp"
#include "ambcn/specfun.hpp"

// Time-selective Rayleigh channel model: Jakes correlation from vehicle
// mobility, one-shot MMSE estimation at the first instant, and the AR(1)
// composition h(t) = rho^(t-1) h_hat(1) + xi with xi collecting both the
// estimation error and the mobility-induced drift.

namespace ambcn {

/// Vehicle mobility and sampling parameters.
struct MobilityProfile {
    double speed_kmh = 70.0;     // v
    double carrier_hz = 5.9e9;   // f_c
    double symbol_s = 2e-4;      // T_s
    int time_instant = 2;        // t >= 1

    static constexpr double light_speed_ms = 2.998e8;

    void validate() const {
        if (!(speed_kmh >= 0.0)) throw std::domain_error("MobilityProfile: v_kmh must be >= 0");
        if (!(carrier_hz > 0.0)) throw std::domain_error("MobilityProfile: f_c_hz must be > 0");
        if (!(symbol_s > 0.0)) throw std::domain_error("MobilityProfile: T_s_s must be > 0");
        if (time_instant < 1) throw std::domain_error("MobilityProfile: t must be >= 1");
    }
};

/// Doppler shift in Hz for a vehicle at speed v km/h.
inline double doppler_shift(const MobilityProfile& m) {
    m.validate();
    return m.carrier_hz * (m.speed_kmh / 3.6) / MobilityProfile::light_speed_ms;
}

/// Jakes correlation parameter J0(2 pi f_D T_s); 1 for a static link.
inline double correlation_rho(const MobilityProfile& m) {
    const double fd = doppler_shift(m);
    return specfun::bessel_j0(2.0 * 3.14159265358979323846 * fd * m.symbol_s);
}

/// Second-order statistics of one link.
struct LinkStat {
    double omega = 1.0;       // average channel power
    double omega_e = 0.0;     // time-varying component variance
    double omega_eps = 0.0;   // estimation-error variance
    double rho = 1.0;         // correlation parameter

    void validate(const std::string& name = "link") const {
        if (!(omega > 0.0)) throw std::domain_error("LinkStat " + name + ": omega must be > 0");
        if (!(omega_e >= 0.0)) throw std::domain_error("LinkStat " + name + ": omega_e must be >= 0");
        if (!(omega_eps >= 0.0)) throw std::domain_error("LinkStat " + name + ": omega_eps must be >= 0");
        if (!(std::abs(rho) <= 1.0)) throw std::domain_error("LinkStat " + name + ": |rho| must be <= 1");
        if (!(omega_eps < omega))
            throw std::domain_error("LinkStat " + name +
                                    ": omega_eps must be < omega (MMSE split)");
    }

    /// Estimated-CSI variance under the MMSE orthogonality split.
    double omega_hat() const { return omega - omega_eps; }

    /// rho^(2(t-1)), the power aging factor at instant t.
    double aging(int t) const { return std::pow(rho * rho, t - 1); }

    /// Effective-noise variance at instant t:
    /// (1 - rho^(2(t-1))) omega_e + rho^(2(t-1)) omega_eps.
    double omega_xi(int t) const {
        const double a = aging(t);
        return (1.0 - a) * omega_e + a * omega_eps;
    }
};

inline double effective_noise_variance(const LinkStat& l, int t) {
    if (t < 1) throw std::domain_error("effective_noise_variance: t must be >= 1");
    return l.omega_xi(t);
}

/// One sampled channel realization at instant t.
struct ChannelDraw {
    std::complex<double> h_hat_1;  // estimated gain at the first instant
    std::complex<double> xi;       // effective noise
    std::complex<double> h_t;      // true gain, rho^(t-1) h_hat_1 + xi
};

/// Draws h_hat(1) ~ CN(0, omega_hat) and xi ~ CN(0, omega_xi(t)), then
/// composes h(t). The composition is re-derivable bit-exactly from the
/// other two fields.
inline ChannelDraw sample_channel(const LinkStat& l, int t, TrialStream& rng) {
    if (t < 1) throw std::domain_error("sample_channel: t must be >= 1");
    ChannelDraw d;
    d.h_hat_1 = rng.complex_normal(l.omega_hat());
    d.xi = rng.complex_normal(l.omega_xi(t));
    d.h_t = std::pow(l.rho, t - 1) * d.h_hat_1 + d.xi;
    return d;
}

}  // namespace ambcn
