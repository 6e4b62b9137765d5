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
#include <limits>
#include <stdexcept>
#include <string>

// Self-contained special-function kernel: J0, K1, E1/Ei, the Gaussian Q
// function, and log-domain fused products needed by the closed-form CDFs.
// All functions are pure and thread-safe.

namespace ambcn::specfun {

/// Termination control for the iterative evaluations (series, continued
/// fractions). rel_tol is the relative stopping tolerance, abs_tol an
/// absolute floor used near underflow.
struct Accuracy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::domain_error("Accuracy: rel_tol must be > 0");
        if (!(abs_tol > 0.0)) throw std::domain_error("Accuracy: abs_tol must be > 0");
    }
};

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008;
inline constexpr double pi = 3.14159265358979323846264338328;
inline constexpr int max_iter = 4000;

[[noreturn]] inline void domain_fail(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                            " outside domain");
}

// Ascending series for J0, accumulated in extended precision: the
// alternating terms reach ~1e5 by |x|=15 and would otherwise eat the
// last five digits of the small result. Used through |x| <= 16.
inline double j0_series(double x, const Accuracy& acc) {
    const long double q = 0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (fabsl(term) <
            static_cast<long double>(acc.rel_tol) * 1e-4L * (fabsl(sum) + 1.0L))
            break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion for J0, |x| large:
//   J0(x) = sqrt(2/(pi x)) [cos(w) P(x) - sin(w) Q(x)],  w = x - pi/4
// with the Hankel coefficients c_m = (-1)^m ((2m-1)!!)^2 / (m! 8^m).
inline double j0_asymptotic(double x) {
    const double inv = 1.0 / x;
    double c = 1.0;      // c_m
    double xpow = 1.0;   // x^-m
    double p = 0.0, q = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 40; ++m) {
        const double t = c * xpow;
        if (std::abs(t) > prev) break;  // asymptotic tail started diverging
        prev = std::abs(t);
        const int j = m / 2;
        const double signed_t = (j % 2 == 0) ? t : -t;
        if (m % 2 == 0)
            p += signed_t;
        else
            q += signed_t;
        if (std::abs(t) < 1e-18) break;
        const double odd = 2.0 * m + 1.0;
        c *= -(odd * odd) / (8.0 * (m + 1.0));
        xpow *= inv;
    }
    const double w = x - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (std::cos(w) * p - std::sin(w) * q);
}

// Ascending series for K1 (and I1), x <= 2:
//   K1(x) = ln(x/2) I1(x) + 1/x
//           - (x/4) sum_k [psi(k+1)+psi(k+2)] (x^2/4)^k / (k! (k+1)!)
inline double k1_series(double x, const Accuracy& acc) {
    const double q = 0.25 * x * x;
    double i1_term = 1.0;         // q^k / (k!(k+1)!)
    double i1_sum = 1.0;
    double psi_a = -euler_gamma;  // psi(k+1)
    double psi_b = 1.0 - euler_gamma;  // psi(k+2)
    double dig_sum = (psi_a + psi_b) * i1_term;
    for (int k = 1; k < 200; ++k) {
        i1_term *= q / (static_cast<double>(k) * (k + 1.0));
        psi_a += 1.0 / k;
        psi_b += 1.0 / (k + 1.0);
        const double d = (psi_a + psi_b) * i1_term;
        i1_sum += i1_term;
        dig_sum += d;
        if (i1_term < acc.rel_tol * 1e-3 * i1_sum) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * dig_sum;
}

// Thompson-Barnett CF2 for the modified Bessel functions of order 0/1,
// x >= 2. Returns e^x K1(x).
inline double k1_scaled_cf(double x, const Accuracy& acc) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;  // order 0: 1/4 - mu^2 with mu = 0
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) <= acc.rel_tol * 1e-2) break;
    }
    h = a1 * h;
    const double k0s = std::sqrt(pi / (2.0 * x)) / s;   // e^x K0(x)
    return k0s * (x + 0.5 - h) / x;                     // e^x K1(x)
}

// Ascending series for E1, x <= 1:
//   E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
inline double e1_series(double x, const Accuracy& acc) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
        term *= -x / k;
        const double d = -term / k;
        sum += d;
        if (std::abs(d) < acc.rel_tol * 1e-3 * (std::abs(sum) + 1.0)) break;
    }
    return -euler_gamma - std::log(x) + sum;
}

// Continued fraction for E1, x > 1 (modified Lentz):
//   e^x E1(x) = 1 / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
// Returns e^x E1(x).
inline double e1_scaled_cf(double x, const Accuracy& acc) {
    const double tiny = 1e-290;
    double f = x + 1.0;
    if (f == 0.0) f = tiny;
    double cc = f;
    double dd = 0.0;
    for (int k = 1; k < max_iter; ++k) {
        const double ak = -static_cast<double>(k) * k;
        const double bk = x + 1.0 + 2.0 * k;
        dd = bk + ak * dd;
        if (dd == 0.0) dd = tiny;
        cc = bk + ak / cc;
        if (cc == 0.0) cc = tiny;
        dd = 1.0 / dd;
        const double delta = cc * dd;
        f *= delta;
        if (std::abs(delta - 1.0) < acc.rel_tol * 1e-2) break;
    }
    return 1.0 / f;
}

}  // namespace detail

/// Bessel function of the first kind, order zero. Even in x.
inline double bessel_j0(double x, const Accuracy& acc = {}) {
    if (!std::isfinite(x)) detail::domain_fail("bessel_j0", x);
    const double ax = std::abs(x);
    return ax <= 16.0 ? detail::j0_series(ax, acc) : detail::j0_asymptotic(ax);
}

/// e^x K1(x) for x > 0. Stays representable for arbitrarily large x.
inline double bessel_k1_scaled(double x, const Accuracy& acc = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) detail::domain_fail("bessel_k1_scaled", x);
    return x <= 2.0 ? std::exp(x) * detail::k1_series(x, acc)
                    : detail::k1_scaled_cf(x, acc);
}

/// Modified Bessel function of the second kind, order one. x > 0.
inline double bessel_k1(double x, const Accuracy& acc = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) detail::domain_fail("bessel_k1", x);
    return x <= 2.0 ? detail::k1_series(x, acc)
                    : std::exp(-x) * detail::k1_scaled_cf(x, acc);
}

/// ln(e^x K1(x)). Finite for the whole positive axis.
inline double log_k1_scaled(double x, const Accuracy& acc = {}) {
    return std::log(bessel_k1_scaled(x, acc));
}

/// Exponential integral at a negative argument: Ei(-x) = -E1(x), x > 0.
/// Strictly negative and increasing toward zero.
inline double expint_ei_neg(double x, const Accuracy& acc = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) detail::domain_fail("expint_ei_neg", x);
    if (x <= 1.0) return -detail::e1_series(x, acc);
    return -std::exp(-x) * detail::e1_scaled_cf(x, acc);
}

/// ln(e^x E1(x)) — the log of the scaled exponential integral. Finite for
/// all x > 0, which makes exp(a)·Ei(-b) products safe at any magnitude.
inline double log_e1_scaled(double x, const Accuracy& acc = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) detail::domain_fail("log_e1_scaled", x);
    if (x <= 1.0) return std::log(detail::e1_series(x, acc)) + x;
    return std::log(detail::e1_scaled_cf(x, acc));
}

/// Gaussian Q function, Q(x) = P(N(0,1) > x).
inline double gaussian_q(double x) {
    if (!std::isfinite(x)) detail::domain_fail("gaussian_q", x);
    return 0.5 * std::erfc(x * 0.70710678118654752440);
}

/// exp(a)·Ei(-b), b > 0, evaluated in the log domain so that a large
/// exponential against a tiny integral tail does not overflow/underflow.
inline double exp_times_ei_neg(double a, double b, const Accuracy& acc = {}) {
    return -std::exp(a - b + log_e1_scaled(b, acc));
}

/// exp(a)·K1(b), b > 0, evaluated in the log domain.
inline double exp_times_k1(double a, double b, const Accuracy& acc = {}) {
    return std::exp(a - b + log_k1_scaled(b, acc));
}

}  // namespace ambcn::specfun
