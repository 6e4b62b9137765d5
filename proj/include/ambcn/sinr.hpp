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

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "ambcn/channel.hpp"
#include "ambcn/config.hpp"
#include "ambcn/specfun.hpp"

// Per-user SINR coefficient groups, the instantaneous SINR expressions the
// Monte Carlo engine evaluates, and the closed-form SINR CDFs.

namespace ambcn {

enum class User { near, far };

/// Coefficient group for one user at the decoding instant.
///   a  - aged power fraction of the far stream (desired when decoding s_F)
///   g  - aged power fraction of the near stream (intra-pair interference)
///   c  - aged backscatter reflection power, rho_B^(2(t-1)) beta^2
///   d  - backscatter estimation-noise power (convention set by DTermMode)
struct SinrCoeffs {
    double a = 0.0;
    double g = 0.0;
    double c = 0.0;
    double d = 0.0;
    double omega_xi_r = 0.0;  // direct-link effective noise at instant t
    double beta = 0.0;
};

/// Builds the coefficient group for one user. The derivation-consistent
/// convention puts the backscatter-link estimation noise (omega_xi_B beta^2)
/// in d for both users, which is what the expanded received signal gives;
/// as-printed reproduces the published asymmetric variant that uses the
/// direct-link noise for the near user.
inline SinrCoeffs coeffs_for_user(User u, const SystemConfig& cfg, DTermMode mode) {
    const int t = cfg.mobility.time_instant;
    const LinkStat direct = cfg.link_stat(u == User::near ? LinkId::RN : LinkId::RF);
    const LinkStat bsc = cfg.link_stat(u == User::near ? LinkId::BN : LinkId::BF);
    const double b2 = cfg.beta * cfg.beta;

    SinrCoeffs k;
    k.beta = cfg.beta;
    k.a = direct.aging(t) * cfg.power.a_f;
    k.g = direct.aging(t) * cfg.power.a_n;
    k.c = bsc.aging(t) * b2;
    k.omega_xi_r = direct.omega_xi(t);
    if (mode == DTermMode::as_printed && u == User::near)
        k.d = direct.omega_xi(t) * b2;
    else
        k.d = bsc.omega_xi(t) * b2;
    return k;
}

inline SinrCoeffs coeffs_for_user(User u, const SystemConfig& cfg) {
    return coeffs_for_user(u, cfg, cfg.d_term_mode);
}

/// Channel realizations for one trial; only the links a user needs must be
/// present.
struct DrawSet {
    std::optional<ChannelDraw> rn, rf, rb, bn, bf;
};

/// Instantaneous SINRs for one realization.
struct SinrSample {
    double g_f = 0.0;  // decoding s_F
    double g_n = 0.0;  // decoding s_N (near user only)
    double g_c = 0.0;  // decoding s_C (near user only)
};

/// Evaluates the instantaneous SINR expressions on sampled channel powers.
/// This is the signal-model side: the backscatter noise term is always the
/// physical omega_xi_B beta^2, independent of the config's d_term_mode, so
/// the Monte Carlo built on it can arbitrate between the two analytic
/// conventions.
inline SinrSample instantaneous_sinrs(User u, const DrawSet& draws,
                                      const SystemConfig& cfg) {
    const auto need = [](const std::optional<ChannelDraw>& d,
                         const char* which) -> const ChannelDraw& {
        if (!d) throw std::invalid_argument(std::string("instantaneous_sinrs: missing ") +
                                            which + " channel draw");
        return *d;
    };
    const SinrCoeffs k = coeffs_for_user(u, cfg, DTermMode::derivation_consistent);
    const double gamma = cfg.gamma_linear();
    const ChannelDraw& rb = need(draws.rb, "RB");
    const double z = std::norm(rb.h_t);

    SinrSample s;
    if (u == User::near) {
        const double x = std::norm(need(draws.rn, "RN").h_hat_1);
        const double y = std::norm(need(draws.bn, "BN").h_hat_1);
        const double bsc = z * (k.c * y + k.d);
        s.g_f = k.a * x * gamma / (gamma * (k.g * x + k.omega_xi_r + bsc) + 1.0);
        s.g_n = k.g * x * gamma / (gamma * (k.omega_xi_r + bsc) + 1.0);
        s.g_c = z * y * k.c * gamma / (gamma * (k.omega_xi_r + z * k.d) + 1.0);
    } else {
        const double x = std::norm(need(draws.rf, "RF").h_hat_1);
        const double y = std::norm(need(draws.bf, "BF").h_hat_1);
        const double bsc = z * (k.c * y + k.d);
        s.g_f = k.a * x * gamma / (gamma * (k.g * x + k.omega_xi_r + bsc) + 1.0);
    }
    return s;
}

namespace sinr_detail {

/// Clamp a raw closed-form value into [0,1]; in strict mode an excursion
/// beyond 1e-9 is treated as a special-function regression, not noise.
inline double clamp_unit(double raw, const SystemConfig& cfg, const char* what) {
    if (cfg.strict && (raw < -1e-9 || raw > 1.0 + 1e-9))
        throw std::runtime_error(std::string("strict: ") + what + " left [0,1] by " +
                                 std::to_string(raw < 0.0 ? -raw : raw - 1.0));
    return std::clamp(raw, 0.0, 1.0);
}

/// Shared closed form for the s_F / s_N CDFs:
///   F(u) = 1 + lead * Ei(-ei_arg) * exp(ei_arg - decay)
/// where `scale` is (a - u g) for s_F and g for s_N. Evaluated fully in the
/// log domain; the c -> 0 (beta = 0) limit collapses to the exponential CDF
/// of the estimated direct-link power.
inline double ei_form_cdf(double u, double scale, const LinkStat& direct,
                          const LinkStat& bsc, double omega_rb, const SinrCoeffs& k,
                          double gamma) {
    const double hat_r = direct.omega_hat();
    const double decay = u * (k.omega_xi_r + 1.0 / gamma) / (hat_r * scale);
    // below ~1e-290 the leading coefficient would overflow; the limit is
    // the same exponential CDF as c = 0
    if (k.c < 1e-290) return -std::expm1(-decay);
    const double hat_b = bsc.omega_hat();
    const double lead = hat_r * scale / (u * omega_rb * hat_b * k.c);
    const double ei_arg = lead + k.d / (hat_b * k.c);
    const double log_tail = std::log(lead) - decay + specfun::log_e1_scaled(ei_arg);
    return -std::expm1(log_tail);  // log_tail <= 0 up to roundoff
}

}  // namespace sinr_detail

/// CDF of the SINR when decoding s_F at user m. Exactly 1 at and beyond the
/// interference floor u = a/g.
inline double cdf_gF(double u, User m, const SystemConfig& cfg) {
    if (!(u >= 0.0)) throw std::domain_error("cdf_gF: u must be >= 0");
    if (u == 0.0) return 0.0;
    const SinrCoeffs k = coeffs_for_user(m, cfg);
    if (k.g > 0.0 && u * k.g >= k.a) return 1.0;
    if (std::isinf(u)) return 1.0;
    const LinkStat direct = cfg.link_stat(m == User::near ? LinkId::RN : LinkId::RF);
    const LinkStat bsc = cfg.link_stat(m == User::near ? LinkId::BN : LinkId::BF);
    const double raw = sinr_detail::ei_form_cdf(u, k.a - u * k.g, direct, bsc,
                                                cfg.link(LinkId::RB).omega, k,
                                                cfg.gamma_linear());
    return sinr_detail::clamp_unit(raw, cfg, "cdf_gF");
}

/// CDF of the SINR when decoding s_N at the near user (no support cap).
inline double cdf_gN(double u, const SystemConfig& cfg) {
    if (!(u >= 0.0)) throw std::domain_error("cdf_gN: u must be >= 0");
    if (u == 0.0) return 0.0;
    if (std::isinf(u)) return 1.0;
    const SinrCoeffs k = coeffs_for_user(User::near, cfg);
    const LinkStat direct = cfg.link_stat(LinkId::RN);
    const LinkStat bsc = cfg.link_stat(LinkId::BN);
    const double raw = sinr_detail::ei_form_cdf(u, k.g, direct, bsc,
                                                cfg.link(LinkId::RB).omega, k,
                                                cfg.gamma_linear());
    return sinr_detail::clamp_unit(raw, cfg, "cdf_gN");
}

/// CDF of the SINR when decoding the backscatter stream s_C at the near
/// user: F(u) = 1 - w K1(w) exp(-v) with w the Bessel argument below. With
/// beta = 0 the stream carries nothing and the CDF degenerates to a step.
inline double cdf_gC(double u, const SystemConfig& cfg) {
    if (!(u >= 0.0)) throw std::domain_error("cdf_gC: u must be >= 0");
    if (u == 0.0) return 0.0;
    const SinrCoeffs k = coeffs_for_user(User::near, cfg);
    if (k.c < 1e-290) return 1.0;  // no usable backscatter signal
    if (std::isinf(u)) return 1.0;
    const double gamma = cfg.gamma_linear();
    const double hat_b = cfg.link_stat(LinkId::BN).omega_hat();
    const double omega_rb = cfg.link(LinkId::RB).omega;
    const double bessel_arg =
        2.0 * std::sqrt(u * (gamma * k.omega_xi_r + 1.0) / (hat_b * omega_rb * k.c * gamma));
    const double shift = u * k.d / (hat_b * k.c);
    const double log_tail = std::log(bessel_arg) + specfun::log_k1_scaled(bessel_arg) -
                            bessel_arg - shift;
    const double raw = -std::expm1(log_tail);  // x K1(x) <= 1, so log_tail <= 0
    return sinr_detail::clamp_unit(raw, cfg, "cdf_gC");
}

}  // namespace ambcn
