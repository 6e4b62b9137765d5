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
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "ambcn/sinr.hpp"

// Finite-blocklength machinery: the normal-approximation instantaneous
// BLER, its linearized ramp, the two fading averages (one-point Riemann and
// Gauss-Chebyshev), and the end-to-end closed forms for both users.

namespace ambcn {

/// Rate/blocklength pair plus the derived linearization constants.
///   psi      - SINR where the instantaneous BLER crosses 1/2, 2^R - 1
///   eta      - ramp slope scale, 1/sqrt(2 pi (2^(2R) - 1))
///   theta_lo - lower ramp knot, psi - 1/(2 eta sqrt(L))
///   sigma_hi - upper ramp knot, psi + 1/(2 eta sqrt(L))
/// theta_lo may be negative for very small L (2^R - 1); averaging treats
/// the CDF as zero below the origin, which is exact for nonnegative SINR.
struct PacketSpec {
    double rate = 0.0;
    int blocklength = 0;
    double eta = 0.0;
    double psi = 0.0;
    double theta_lo = 0.0;
    double sigma_hi = 0.0;

    /// Validating constructor; production configs require L > 100 for the
    /// normal approximation to hold.
    static PacketSpec make(double rate, int blocklength) {
        if (!(rate > 0.0)) throw ConfigError("PacketSpec: rate must be > 0");
        if (blocklength <= 100)
            throw ConfigError("PacketSpec: blocklength must exceed 100 (got " +
                              std::to_string(blocklength) + ")");
        return derive(rate, blocklength);
    }

    /// For internally derived specs (the OMA baseline halves blocklength,
    /// which may touch 100 exactly).
    static PacketSpec make_derived(double rate, int blocklength) {
        if (!(rate > 0.0) || blocklength < 2)
            throw ConfigError("PacketSpec: invalid derived packet");
        return derive(rate, blocklength);
    }

  private:
    static PacketSpec derive(double rate, int blocklength) {
        PacketSpec p;
        p.rate = rate;
        p.blocklength = blocklength;
        p.psi = std::exp2(rate) - 1.0;
        p.eta = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * (std::exp2(2.0 * rate) - 1.0));
        const double half = 0.5 / (p.eta * std::sqrt(static_cast<double>(blocklength)));
        p.theta_lo = p.psi - half;
        p.sigma_hi = p.psi + half;
        return p;
    }
};

inline PacketSpec packet_for(const PacketInput& in) {
    return PacketSpec::make(in.rate, in.blocklength);
}

/// log2(1 + g).
inline double shannon_capacity(double g) {
    if (!(g >= 0.0)) throw std::domain_error("shannon_capacity: g must be >= 0");
    return std::log2(1.0 + g);
}

/// Channel dispersion (1/ln^2 2)(1 - 1/(1+g)^2).
inline double channel_dispersion(double g) {
    if (!(g >= 0.0)) throw std::domain_error("channel_dispersion: g must be >= 0");
    const double r = 1.0 + g;
    constexpr double inv_ln2_sq = 2.08136898343882934; // 1/ln(2)^2
    return inv_ln2_sq * (1.0 - 1.0 / (r * r));
}

/// Exact normal-approximation BLER, Q((C(g) - R) / sqrt(V(g)/L)).
/// g = 0 returns 1 by the continuity convention (no rate is sustainable).
inline double instantaneous_bler(double g, const PacketSpec& p) {
    if (!(g >= 0.0)) throw std::domain_error("instantaneous_bler: g must be >= 0");
    if (g == 0.0) return 1.0;
    const double num = shannon_capacity(g) - p.rate;
    const double den = std::sqrt(channel_dispersion(g) / p.blocklength);
    const double arg = num / den;
    if (!std::isfinite(arg)) return arg < 0.0 ? 1.0 : 0.0;
    return specfun::gaussian_q(arg);
}

/// Piecewise-linear ramp standing in for the Q expression: 1 below
/// theta_lo, 0 above sigma_hi, slope -eta sqrt(L) through (psi, 1/2).
inline double linearized_bler(double g, const PacketSpec& p) {
    if (!(g >= 0.0)) throw std::domain_error("linearized_bler: g must be >= 0");
    if (g < p.theta_lo) return 1.0;
    if (g > p.sigma_hi) return 0.0;
    const double v = 0.5 - p.eta * std::sqrt(static_cast<double>(p.blocklength)) * (g - p.psi);
    return std::clamp(v, 0.0, 1.0);  // knots can round a hair outside
}

enum class Method { riemann, gauss_chebyshev, monte_carlo };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::riemann: return "riemann";
        case Method::gauss_chebyshev: return "gauss-chebyshev";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

/// Average BLER with the engine that produced it.
struct BlerResult {
    double value = 0.0;
    Method method = Method::riemann;
    long trials = 0;          // Monte Carlo only
    double ci_halfwidth = 0;  // Monte Carlo only, 95% normal interval
};

/// One-point Riemann average: the fading average collapses to F(psi).
template <class Cdf>
BlerResult avg_bler_riemann(Cdf&& cdf, const PacketSpec& p) {
    return {std::clamp(cdf(p.psi), 0.0, 1.0), Method::riemann, 0, 0.0};
}

/// Gauss-Chebyshev average of the CDF over the linearization ramp,
///   sum_i (pi/2n) F((z_i+1)/(2 eta sqrt(L)) + theta_lo) sqrt(1 - z_i^2),
/// with z_i = cos((2i-1) pi / (2n)). Negative evaluation points contribute
/// zero (the SINR is almost surely nonnegative).
template <class Cdf>
BlerResult avg_bler_gauss_chebyshev(Cdf&& cdf, const PacketSpec& p, int n = 30) {
    if (n < 1) throw std::domain_error("avg_bler_gauss_chebyshev: n must be >= 1");
    constexpr double pi = 3.14159265358979323846;
    const double inv_width = 0.5 / (p.eta * std::sqrt(static_cast<double>(p.blocklength)));
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double z = std::cos((2.0 * i - 1.0) * pi / (2.0 * n));
        const double x = (z + 1.0) * inv_width + p.theta_lo;
        const double f = x > 0.0 ? cdf(x) : 0.0;
        sum += f * std::sqrt(std::max(0.0, 1.0 - z * z));
    }
    return {std::clamp(pi / (2.0 * n) * sum, 0.0, 1.0), Method::gauss_chebyshev, 0, 0.0};
}

namespace fbl_detail {

template <class Cdf>
double stage_avg(Cdf&& cdf, const PacketSpec& p, Method engine, int gc_n) {
    return engine == Method::gauss_chebyshev
               ? avg_bler_gauss_chebyshev(cdf, p, gc_n).value
               : avg_bler_riemann(cdf, p).value;
}

}  // namespace fbl_detail

/// The near user's three per-stage average BLERs (decode s_F, s_N, s_C).
struct NearStages {
    double f = 0.0;
    double n = 0.0;
    double c = 0.0;
};

inline NearStages near_stage_blers(const SystemConfig& cfg, const PacketSpec& pk_f,
                                   const PacketSpec& pk_n, const PacketSpec& pk_c,
                                   Method engine = Method::riemann, int gc_n = 30) {
    NearStages s;
    s.f = fbl_detail::stage_avg(
        [&](double u) { return cdf_gF(u, User::near, cfg); }, pk_f, engine, gc_n);
    s.n = fbl_detail::stage_avg([&](double u) { return cdf_gN(u, cfg); }, pk_n, engine,
                                gc_n);
    s.c = fbl_detail::stage_avg([&](double u) { return cdf_gC(u, cfg); }, pk_c, engine,
                                gc_n);
    return s;
}

/// Composes per-stage averages through the SIC success chain
/// 1 - (1-xf)(1-xn)(1-xc).
inline double sic_chain(double xf, double xn, double xc) {
    return 1.0 - (1.0 - xf) * (1.0 - xn) * (1.0 - xc);
}

/// End-to-end average BLER at the near user. In composition mode (default)
/// the three stage averages always run through the success chain; the
/// paper-literal mode instead drops the first-stage factor entirely once
/// psi_F sits at or beyond its interference floor a/g.
inline BlerResult e2e_bler_near(const SystemConfig& cfg, const PacketSpec& pk_f,
                                const PacketSpec& pk_n, const PacketSpec& pk_c,
                                Method engine = Method::riemann, int gc_n = 30) {
    const NearStages s = near_stage_blers(cfg, pk_f, pk_n, pk_c, engine, gc_n);
    const SinrCoeffs k = coeffs_for_user(User::near, cfg);
    const bool beyond_floor = k.g > 0.0 && pk_f.psi * k.g >= k.a;
    double eps;
    if (cfg.theorem1_mode == Theorem1Mode::paper_literal && beyond_floor)
        eps = sic_chain(0.0, s.n, s.c);
    else
        eps = sic_chain(s.f, s.n, s.c);
    return {std::clamp(eps, 0.0, 1.0), engine, 0, 0.0};
}

/// End-to-end average BLER at the far user: the single s_F stage. Exactly 1
/// once psi_F reaches the interference floor a_F/a_N.
inline BlerResult e2e_bler_far(const SystemConfig& cfg, const PacketSpec& pk_f,
                               Method engine = Method::riemann, int gc_n = 30) {
    const double v = fbl_detail::stage_avg(
        [&](double u) { return cdf_gF(u, User::far, cfg); }, pk_f, engine, gc_n);
    return {v, engine, 0, 0.0};
}

}  // namespace ambcn
