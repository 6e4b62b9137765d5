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

#include <cmath>
#include <random>

#include "ambcn/specfun.hpp"
#include "oracles.hpp"

using namespace ambcn;

namespace {

// |got - want| <= rel*|want| + abs
bool close(double got, double want, double rel, double abs = 0.0) {
    return std::abs(got - want) <= rel * std::abs(want) + abs;
}

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("accuracy knob validates") {
    specfun::Accuracy ok;
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.rel_tol == 1e-12);
    CHECK(ok.abs_tol == 1e-300);
    specfun::Accuracy bad{-1.0, 1e-300};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    specfun::Accuracy bad2{1e-12, 0.0};
    CHECK_THROWS_AS(bad2.validate(), std::domain_error);
}

TEST_CASE("bessel_j0 known points") {
    CHECK(specfun::bessel_j0(0.0) == 1.0);
    // value frozen from the series oracle
    const double want = oracle::j0_series(0.4809);
    CHECK(close(want, 0.94301412675561302, 1e-12));
    CHECK(close(specfun::bessel_j0(0.4809), want, 1e-12));

    // first zero, located by bisection on the oracle
    const double z0 = oracle::j0_first_zero();
    CHECK(close(z0, 2.404825557695773, 1e-12));
    CHECK(std::abs(specfun::bessel_j0(2.404825557695773)) < 1e-9);
}

TEST_CASE("bessel_j0 matches series oracle on random points") {
    std::mt19937_64 gen(20260808);
    std::uniform_real_distribution<double> dist(-18.0, 18.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(gen);
        const double want = oracle::j0_series(x);
        const double got = specfun::bessel_j0(x);
        // tiny absolute floor: near the zeros of J0 no pair of independent
        // double-precision algorithms can hold a pure relative bound
        CHECK_MESSAGE(close(got, want, 1e-10, 1e-13), "x=", x, " got=", got,
                      " want=", want);
    }
}

TEST_CASE("bessel_j0 even symmetry") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(0.0, 30.0);
    for (int i = 0; i < 500; ++i) {
        const double x = dist(gen);
        const double a = specfun::bessel_j0(x);
        const double b = specfun::bessel_j0(-x);
        CHECK(std::abs(a - b) <= 1e-15 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("bessel_j0 seam continuity at the series/asymptotic branch") {
    const double lo = specfun::bessel_j0(16.0 - 1e-9);
    const double hi = specfun::bessel_j0(16.0 + 1e-9);
    CHECK(std::abs(lo - hi) < 1e-9);
}

TEST_CASE("bessel_k1 known points and limits") {
    // x*K1(x) -> 1 as x -> 0+
    CHECK(std::abs(1e-4 * specfun::bessel_k1(1e-4) - 1.0) < 1e-6);
    const double want1 = oracle::k1_integral(1.0);
    CHECK(close(want1, 0.6019072301972346, 1e-10));
    CHECK(close(specfun::bessel_k1(1.0), want1, 1e-11));
    const double k10 = specfun::bessel_k1(10.0);
    CHECK(k10 > 0.0);
    CHECK(k10 < 2e-5);
}

TEST_CASE("bessel_k1 matches integral oracle on random points") {
    std::mt19937_64 gen(20260809);
    std::uniform_real_distribution<double> logd(std::log(1e-4), std::log(200.0));
    for (int i = 0; i < 500; ++i) {
        const double x = std::exp(logd(gen));
        const double want = oracle::k1_integral(x);
        const double got = specfun::bessel_k1(x);
        CHECK_MESSAGE(close(got, want, 1e-10), "x=", x, " got=", got, " want=", want);
    }
}

TEST_CASE("bessel_k1 strictly positive, strictly decreasing") {
    double prev = specfun::bessel_k1(1e-3);
    for (int i = 1; i <= 400; ++i) {
        const double x = 1e-3 + i * 0.05;
        const double v = specfun::bessel_k1(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("bessel_k1 log-convexity") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> dist(1e-3, 20.0);
    for (int i = 0; i < 100; ++i) {
        double a = dist(gen), b = dist(gen);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        const double mid = specfun::bessel_k1(0.5 * (a + b));
        CHECK(specfun::bessel_k1(a) * specfun::bessel_k1(b) >=
              mid * mid * (1.0 - 1e-12));
    }
}

TEST_CASE("expint_ei_neg known points") {
    const double want1 = oracle::ei_neg(1.0);
    CHECK(close(want1, -0.21938393439552028, 1e-10));
    CHECK(close(specfun::expint_ei_neg(1.0), want1, 1e-11));
    const double tail = specfun::expint_ei_neg(50.0);
    CHECK(tail < 0.0);
    CHECK(std::abs(tail) < 1e-23);
    // Ei(-x) is strictly negative and increases toward 0 as x grows
    CHECK(specfun::expint_ei_neg(0.5) > specfun::expint_ei_neg(0.4));
    CHECK(specfun::expint_ei_neg(0.5) < 0.0);
    CHECK(specfun::expint_ei_neg(0.4) < 0.0);
}

TEST_CASE("expint_ei_neg matches integral oracle on random points") {
    std::mt19937_64 gen(20260810);
    std::uniform_real_distribution<double> logd(std::log(1e-4), std::log(300.0));
    for (int i = 0; i < 500; ++i) {
        const double x = std::exp(logd(gen));
        const double want = oracle::ei_neg(x);
        const double got = specfun::expint_ei_neg(x);
        CHECK_MESSAGE(close(got, want, 1e-10), "x=", x, " got=", got, " want=", want);
    }
}

TEST_CASE("gaussian_q known points") {
    CHECK(specfun::gaussian_q(0.0) == 0.5);
    const double want1 = oracle::gaussian_q(1.0);
    CHECK(close(want1, 0.15865525393145705, 1e-12));
    CHECK(close(specfun::gaussian_q(1.0), want1, 1e-12));
    const double want6 = oracle::gaussian_q(6.0);
    CHECK(close(want6, 9.865876450376946e-10, 1e-9));
    CHECK(close(specfun::gaussian_q(6.0), want6, 1e-11));
}

TEST_CASE("gaussian_q matches oracle on random points") {
    std::mt19937_64 gen(20260811);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(gen);
        CHECK(close(specfun::gaussian_q(x), oracle::gaussian_q(x), 1e-10));
    }
}

TEST_CASE("gaussian_q symmetry and monotonicity") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 300; ++i) {
        const double x = dist(gen);
        const double s = specfun::gaussian_q(x) + specfun::gaussian_q(-x);
        CHECK(std::abs(s - 1.0) <= 4e-16);
    }
    double prev = specfun::gaussian_q(-8.0);
    for (int i = 1; i < 1000; ++i) {
        const double x = -8.0 + 16.0 * i / 999.0;
        const double v = specfun::gaussian_q(x);
        CHECK(v <= prev);
        // deep in the left tail the true decrement per grid step drops
        // below half an ulp of 1.0, so strictness is only representable
        // once Q leaves the saturation zone
        if (prev < 1.0 - 1e-12) CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("fused log-domain products") {
    // moderate arguments: plain product must agree
    for (double a : {-3.0, 0.0, 2.5}) {
        for (double b : {0.3, 1.0, 7.0}) {
            CHECK(close(specfun::exp_times_ei_neg(a, b),
                        std::exp(a) * specfun::expint_ei_neg(b), 1e-12));
            CHECK(close(specfun::exp_times_k1(a, b),
                        std::exp(a) * specfun::bessel_k1(b), 1e-12));
        }
    }
    // extreme arguments where the naive product is 0 * inf
    // e^b Ei(-b) ~ -(1/b)(1 - 1/b + 2/b^2 - 6/b^3 + 24/b^4), b large
    const double b = 500.0;
    const double got = specfun::exp_times_ei_neg(b, b);
    const double want = -(1.0 / b) * (1.0 - 1.0 / b + 2.0 / (b * b) -
                                      6.0 / (b * b * b) + 24.0 / (b * b * b * b));
    CHECK(close(got, want, 1e-9));
    // e^b K1(b) ~ sqrt(pi/2b)(1 + 3/(8b) - 15/(128 b^2))
    const double gotk = specfun::exp_times_k1(b, b);
    const double wantk = std::sqrt(oracle::pi / (2.0 * b)) *
                         (1.0 + 3.0 / (8.0 * b) - 15.0 / (128.0 * b * b));
    CHECK(close(gotk, wantk, 1e-9));
    // huge opposite-effect pair stays finite
    CHECK(std::isfinite(specfun::exp_times_ei_neg(7000.0, 7100.0)));
    CHECK(std::isfinite(specfun::exp_times_k1(7000.0, 7100.0)));
}

TEST_CASE("domain errors") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(specfun::bessel_j0(nan), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_j0(inf), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_k1(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_k1(-1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::expint_ei_neg(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::expint_ei_neg(-2.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gaussian_q(nan), std::domain_error);
}

}  // TEST_SUITE
