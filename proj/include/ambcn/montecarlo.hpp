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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ambcn/fbl.hpp"

// Empirical side of the toolkit: samples channel realizations with
// counter-based streams, evaluates the instantaneous SINR formulas, and
// produces empirical CDFs and average BLERs. Results are bit-identical for
// a fixed (seed, trials) pair no matter how many workers run the trials:
// work is cut into fixed-size blocks, each block is reduced sequentially
// with compensated summation, and block partials are merged in block order.

namespace ambcn {

enum class McMode { noma, oma };

/// Monte Carlo execution plan.
struct McPlan {
    long trials = 1'000'000;
    std::uint64_t seed = 0x5eedULL;
    int workers = 1;
    McMode mode = McMode::noma;

    void validate() const {
        if (trials < 10'000)
            throw std::domain_error("McPlan: trials below 1e4 give meaninglessly wide CIs");
        if (workers < 1) throw std::domain_error("McPlan: workers must be >= 1");
    }
};

/// SINR streams observable in the system.
enum class McStream { sF_near, sN, sC, sF_far };

namespace mc_detail {

inline constexpr long block_size = 8192;

/// Neumaier-compensated accumulator.
struct CompSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

/// Runs `fn(trial, partial)` over all trials, fanned out in fixed blocks.
/// Returns one partial per block, in block order.
template <class Partial, class Make, class Fn>
std::vector<Partial> run_blocks(long trials, int workers, Make make, Fn fn) {
    const long nblocks = (trials + block_size - 1) / block_size;
    std::vector<Partial> partials(static_cast<std::size_t>(nblocks), make());
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= nblocks) return;
            Partial& p = partials[static_cast<std::size_t>(b)];
            const long lo = b * block_size;
            const long hi = std::min(trials, lo + block_size);
            for (long trial = lo; trial < hi; ++trial) fn(trial, p);
        }
    };
    const int n = std::min<long>(workers, nblocks);
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return partials;
}

/// Channel draws for one trial of one user's receive chain. Link streams
/// are keyed by link id, so the shared RB realization coincides across
/// users within a trial.
inline DrawSet draw_links(User u, const SystemConfig& cfg, std::uint64_t seed,
                          long trial) {
    const int t = cfg.mobility.time_instant;
    const auto draw = [&](LinkId id) {
        TrialStream rng(seed, static_cast<std::uint32_t>(id),
                        static_cast<std::uint64_t>(trial));
        return sample_channel(cfg.link_stat(id), t, rng);
    };
    DrawSet d;
    d.rb = draw(LinkId::RB);
    if (u == User::near) {
        d.rn = draw(LinkId::RN);
        d.bn = draw(LinkId::BN);
    } else {
        d.rf = draw(LinkId::RF);
        d.bf = draw(LinkId::BF);
    }
    return d;
}

inline double ci95(double p, long n) {
    return 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace mc_detail

/// Empirical CDF of one SINR stream over a sorted grid.
inline std::vector<double> empirical_cdf(McStream stream, std::span<const double> grid,
                                         const SystemConfig& cfg, const McPlan& plan) {
    plan.validate();
    if (grid.empty()) throw std::domain_error("empirical_cdf: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error("empirical_cdf: grid must be strictly ascending");

    const User u = stream == McStream::sF_far ? User::far : User::near;
    using Buckets = std::vector<std::int64_t>;
    auto partials = mc_detail::run_blocks<Buckets>(
        plan.trials, plan.workers, [&] { return Buckets(grid.size() + 1, 0); },
        [&](long trial, Buckets& b) {
            const DrawSet d = mc_detail::draw_links(u, cfg, plan.seed, trial);
            const SinrSample s = instantaneous_sinrs(u, d, cfg);
            const double v = stream == McStream::sN   ? s.g_n
                             : stream == McStream::sC ? s.g_c
                                                      : s.g_f;
            const auto it = std::lower_bound(grid.begin(), grid.end(), v);
            ++b[static_cast<std::size_t>(it - grid.begin())];
        });

    Buckets total(grid.size() + 1, 0);
    for (const Buckets& p : partials)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
    std::vector<double> cdf(grid.size());
    std::int64_t cum = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cum += total[i];
        cdf[i] = static_cast<double>(cum) / static_cast<double>(plan.trials);
    }
    return cdf;
}

/// How the per-stage block errors combine into an end-to-end number.
///   expectation - compose the stage *means* through the SIC chain; this is
///                 the composition structure of the closed forms, so comparing
///                 against it isolates linearization + quadrature error.
///   per_trial   - compose within each realization, then average; the
///                 physical system-level error probability (stage failures
///                 are strongly correlated through the shared fading).
enum class McChain { expectation, per_trial };

/// Everything one Monte Carlo pass produces for a user.
struct McRun {
    double stage_f = 0.0;  // mean exact-Q BLER, decode s_F
    double stage_n = 0.0;  // decode s_N (near user)
    double stage_c = 0.0;  // decode s_C (near user)
    double e2e_expectation = 0.0;
    double e2e_per_trial = 0.0;
    long trials = 0;
    double ci_expectation = 0.0;
    double ci_per_trial = 0.0;

    double e2e(McChain chain) const {
        return chain == McChain::expectation ? e2e_expectation : e2e_per_trial;
    }
    double ci(McChain chain) const {
        return chain == McChain::expectation ? ci_expectation : ci_per_trial;
    }
};

namespace mc_detail {

struct Sums {
    CompSum f, n, c, chained;
};

/// Shared trial loop. `stage_sinrs` maps a realization to the per-stage
/// SINRs (quiet NaN marks an absent stage).
template <class StageFn>
McRun run_bler(User u, const SystemConfig& cfg, const PacketSpec& pk_f,
               const PacketSpec& pk_n, const PacketSpec& pk_c, const McPlan& plan,
               StageFn stage_sinrs) {
    plan.validate();
    auto partials = run_blocks<Sums>(
        plan.trials, plan.workers, [] { return Sums{}; },
        [&](long trial, Sums& acc) {
            const DrawSet d = draw_links(u, cfg, plan.seed, trial);
            const SinrSample s = stage_sinrs(d);
            double chain = 1.0;
            if (u == User::near) {
                double qf = 0.0;
                if (!std::isnan(s.g_f)) {
                    qf = instantaneous_bler(s.g_f, pk_f);
                    acc.f.add(qf);
                    chain *= 1.0 - qf;
                }
                const double qn = instantaneous_bler(s.g_n, pk_n);
                const double qc = instantaneous_bler(s.g_c, pk_c);
                acc.n.add(qn);
                acc.c.add(qc);
                chain *= (1.0 - qn) * (1.0 - qc);
            } else {
                const double qf = instantaneous_bler(s.g_f, pk_f);
                acc.f.add(qf);
                chain *= 1.0 - qf;
            }
            acc.chained.add(1.0 - chain);
        });

    CompSum f, n, c, chained;
    for (const Sums& p : partials) {
        f.add(p.f.value());
        n.add(p.n.value());
        c.add(p.c.value());
        chained.add(p.chained.value());
    }
    const double inv = 1.0 / static_cast<double>(plan.trials);
    McRun r;
    r.trials = plan.trials;
    r.stage_f = f.value() * inv;
    r.stage_n = n.value() * inv;
    r.stage_c = c.value() * inv;
    r.e2e_per_trial = chained.value() * inv;
    r.e2e_expectation = u == User::near ? sic_chain(r.stage_f, r.stage_n, r.stage_c)
                                        : r.stage_f;
    r.ci_expectation = ci95(r.e2e_expectation, plan.trials);
    r.ci_per_trial = ci95(r.e2e_per_trial, plan.trials);
    return r;
}

}  // namespace mc_detail

/// Full NOMA Monte Carlo pass for one user (all stages + both chains).
inline McRun mc_run(User u, const SystemConfig& cfg, const PacketSpec& pk_f,
                    const PacketSpec& pk_n, const PacketSpec& pk_c, const McPlan& plan) {
    return mc_detail::run_bler(u, cfg, pk_f, pk_n, pk_c, plan, [&](const DrawSet& d) {
        return instantaneous_sinrs(u, d, cfg);
    });
}

inline McRun mc_run_oma(User u, const SystemConfig& cfg, const McPlan& plan);

/// Mean per-trial e2e BLER for one user. The chain argument selects the
/// composition; the default follows the closed forms' expectation structure.
/// An OMA-mode plan runs the time-division baseline instead (which derives
/// its own packet specs, so the packet arguments are ignored there).
inline BlerResult mc_average_bler(User u, const SystemConfig& cfg, const PacketSpec& pk_f,
                                  const PacketSpec& pk_n, const PacketSpec& pk_c,
                                  const McPlan& plan,
                                  McChain chain = McChain::expectation) {
    const McRun r = plan.mode == McMode::oma ? mc_run_oma(u, cfg, plan)
                                             : mc_run(u, cfg, pk_f, pk_n, pk_c, plan);
    return {r.e2e(chain), Method::monte_carlo, r.trials, r.ci(chain)};
}

/// Packet spec carrying the same payload in half the channel uses; used by
/// the time-division baseline below.
inline PacketSpec oma_packet(const PacketInput& in) {
    return PacketSpec::make_derived(2.0 * in.rate, in.blocklength / 2);
}

/// Time-division OMA baseline: each user gets its own slot at full power
/// (no superposition, hence no intra-pair interference term), the BD keeps
/// backscattering in both slots, and every stream carries its payload at
/// doubled rate over half the blocklength. The near user's slot still runs
/// the two-stage chain s_N then s_C.
inline McRun mc_run_oma(User u, const SystemConfig& cfg, const McPlan& plan) {
    const PacketSpec pk_f = oma_packet(cfg.pkt_f);
    const PacketSpec pk_n = oma_packet(cfg.pkt_n);
    const PacketSpec pk_c = oma_packet(cfg.pkt_c);
    const SinrCoeffs k = coeffs_for_user(u, cfg, DTermMode::derivation_consistent);
    const int t = cfg.mobility.time_instant;
    const double full = cfg.link_stat(u == User::near ? LinkId::RN : LinkId::RF).aging(t);
    const double gamma = cfg.gamma_linear();

    return mc_detail::run_bler(u, cfg, pk_f, pk_n, pk_c, plan, [=](const DrawSet& d) {
        const double z = std::norm(d.rb->h_t);
        SinrSample s;
        if (u == User::near) {
            const double x = std::norm(d.rn->h_hat_1);
            const double y = std::norm(d.bn->h_hat_1);
            const double bsc = z * (k.c * y + k.d);
            s.g_f = std::numeric_limits<double>::quiet_NaN();  // no s_F stage
            s.g_n = full * x * gamma / (gamma * (k.omega_xi_r + bsc) + 1.0);
            s.g_c = z * y * k.c * gamma / (gamma * (k.omega_xi_r + z * k.d) + 1.0);
        } else {
            const double x = std::norm(d.rf->h_hat_1);
            const double y = std::norm(d.bf->h_hat_1);
            const double bsc = z * (k.c * y + k.d);
            s.g_f = full * x * gamma / (gamma * (k.omega_xi_r + bsc) + 1.0);
        }
        return s;
    });
}

/// OMA baseline e2e BLER. Defaults to the per-trial (physical) chain: the
/// baseline exists for system-level scheme comparisons, not for closed-form
/// validation.
inline BlerResult mc_oma_baseline(User u, const SystemConfig& cfg, const McPlan& plan,
                                  McChain chain = McChain::per_trial) {
    const McRun r = mc_run_oma(u, cfg, plan);
    return {r.e2e(chain), Method::monte_carlo, r.trials, r.ci(chain)};
}

}  // namespace ambcn
