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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ambcn/channel.hpp"
#include "oracles.hpp"

using namespace ambcn;

TEST_SUITE("channel") {

TEST_CASE("doppler shift") {
    MobilityProfile m;  // defaults: 70 km/h, 5.9 GHz
    CHECK(doppler_shift({0.0, 5.9e9, 2e-4, 2}) == 0.0);
    const double fd = doppler_shift(m);
    const double want = 5.9e9 * (70.0 / 3.6) / 2.998e8;
    CHECK(fd == doctest::Approx(want).epsilon(1e-15));
    CHECK(fd == doctest::Approx(382.66).epsilon(1e-4));
    // linear in v
    MobilityProfile m2 = m;
    m2.speed_kmh = 140.0;
    CHECK(doppler_shift(m2) == doctest::Approx(2.0 * fd).epsilon(1e-15));
}

TEST_CASE("correlation rho") {
    CHECK(correlation_rho({0.0, 5.9e9, 2e-4, 2}) == 1.0);
    MobilityProfile m;
    const double x = 2.0 * oracle::pi * doppler_shift(m) * m.symbol_s;
    CHECK(correlation_rho(m) == doctest::Approx(oracle::j0_series(x)).epsilon(1e-12));
    // reference mobility gives rho ~ 0.9430 (oracle-checked digits)
    CHECK(correlation_rho(m) == doctest::Approx(0.943021).epsilon(1e-5));
    for (double v : {10.0, 120.0, 250.0, 500.0}) {
        MobilityProfile mv = m;
        mv.speed_kmh = v;
        const double r = correlation_rho(mv);
        CHECK(std::abs(r) <= 1.0);
    }
}

TEST_CASE("effective noise variance") {
    LinkStat l{20.0, 0.01, 0.001, 0.9427};
    CHECK(effective_noise_variance(l, 1) == l.omega_eps);  // rho^0 = 1
    LinkStat eq{20.0, 0.001, 0.001, 0.9427};
    for (int t : {1, 2, 5, 40}) CHECK(effective_noise_variance(eq, t) == doctest::Approx(0.001).epsilon(1e-15));
    // t = 2: (1 - rho^2) 0.01 + rho^2 0.001
    const double a = 0.9427 * 0.9427;
    CHECK(effective_noise_variance(l, 2) ==
          doctest::Approx((1.0 - a) * 0.01 + a * 0.001).epsilon(1e-15));
    CHECK(effective_noise_variance(l, 2) == doctest::Approx(0.0020).epsilon(1e-2));

    // monotone approach to omega_e as t grows, from either side
    for (auto [oe, oeps] : {std::pair{0.01, 0.001}, std::pair{0.001, 0.01}}) {
        LinkStat s{20.0, oe, oeps, 0.9};
        double prev = effective_noise_variance(s, 1);
        CHECK(prev == oeps);
        for (int t = 2; t <= 60; ++t) {
            const double v = effective_noise_variance(s, t);
            const double lo = std::min(oe, oeps), hi = std::max(oe, oeps);
            CHECK(v >= lo);
            CHECK(v <= hi);
            if (oe > oeps)
                CHECK(v >= prev);
            else
                CHECK(v <= prev);
            prev = v;
        }
        CHECK(prev == doctest::Approx(oe).epsilon(1e-3));
    }
}

TEST_CASE("link stat validation") {
    CHECK_THROWS_AS((LinkStat{1.0, 0.0, 1.5, 1.0}.validate()), std::domain_error);  // eps >= omega
    CHECK_THROWS_AS((LinkStat{0.0, 0.0, 0.0, 1.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((LinkStat{1.0, 0.0, 0.0, 1.5}.validate()), std::domain_error);
    CHECK_NOTHROW((LinkStat{20.0, 0.001, 0.001, 0.94}.validate()));
    CHECK(LinkStat{20.0, 0.001, 0.001, 0.94}.omega_hat() == doctest::Approx(19.999));
}

TEST_CASE("sampler reconstruction identity is bit-exact") {
    LinkStat l{5.0, 0.01, 0.002, 0.93};
    for (std::uint64_t trial = 0; trial < 2000; ++trial) {
        TrialStream rng(42, 3, trial);
        const ChannelDraw d = sample_channel(l, 3, rng);
        const std::complex<double> recon = std::pow(l.rho, 2) * d.h_hat_1 + d.xi;
        CHECK(d.h_t.real() == recon.real());
        CHECK(d.h_t.imag() == recon.imag());
    }
}

TEST_CASE("sampler determinism per (seed, link, trial)") {
    LinkStat l{5.0, 0.01, 0.002, 0.93};
    TrialStream a(7, 1, 123), b(7, 1, 123), c(7, 1, 124), e(8, 1, 123);
    const ChannelDraw da = sample_channel(l, 2, a);
    const ChannelDraw db = sample_channel(l, 2, b);
    const ChannelDraw dc = sample_channel(l, 2, c);
    const ChannelDraw de = sample_channel(l, 2, e);
    CHECK(da.h_t == db.h_t);
    CHECK(da.h_hat_1 == db.h_hat_1);
    CHECK(da.h_t != dc.h_t);
    CHECK(da.h_t != de.h_t);
}

TEST_CASE("degenerate noise: omega_xi = 0") {
    LinkStat l{1.0, 0.0, 0.0, 0.98};  // static-style link, no error
    TrialStream rng(1, 2, 55);
    const ChannelDraw d = sample_channel(l, 4, rng);
    CHECK(d.xi == std::complex<double>(0.0, 0.0));
    CHECK(d.h_t == std::pow(l.rho, 3) * d.h_hat_1);
}

TEST_CASE("estimated-gain power statistics over 1e6 draws") {
    LinkStat l{20.0, 0.001, 0.001, 0.943};
    const int n = 1'000'000;
    std::vector<double> p2(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        TrialStream rng(2026, 0, static_cast<std::uint64_t>(i));
        const ChannelDraw d = sample_channel(l, 2, rng);
        p2[i] = std::norm(d.h_hat_1);
        sum += p2[i];
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - l.omega_hat()) < 0.01 * l.omega_hat());

    // Kolmogorov-Smirnov distance against the exponential CDF
    std::sort(p2.begin(), p2.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = -std::expm1(-p2[i] / l.omega_hat());
        ks = std::max(ks, std::abs((i + 1.0) / n - f));
        ks = std::max(ks, std::abs(static_cast<double>(i) / n - f));
    }
    CHECK(ks < 0.002);
}

}  // TEST_SUITE
