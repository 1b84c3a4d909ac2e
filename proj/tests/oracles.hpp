#pragma once

// Reference computations for the tests, built only on the standard library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "owt/constants.hpp"
#include "owt/fibermode.hpp"

namespace owt::oracle {

using fibermode::FiberSpec;
using fibermode::GuidedMode;
using Complex = std::complex<double>;

// Eigenvalue function built on the standard library's Bessel functions.
inline double std_dispersion(const FiberSpec& f, double lambda, double n_eff) {
    const double k = 2 * std::numbers::pi / lambda;
    const double beta = n_eff * k;
    const double h = std::sqrt(f.core_index * f.core_index * k * k - beta * beta);
    const double q = std::sqrt(beta * beta - f.cladding_index * f.cladding_index * k * k);
    const double u = h * f.radius;
    const double w = q * f.radius;
    const double J = 0.5 * (std::cyl_bessel_j(0, u) - std::cyl_bessel_j(2, u)) / (u * std::cyl_bessel_j(1, u));
    const double K = -0.5 * (std::cyl_bessel_k(0, w) + std::cyl_bessel_k(2, w)) / (w * std::cyl_bessel_k(1, w));
    const double rhs = 1 / (u * u) + 1 / (w * w);
    return (J + K) * (f.core_index * f.core_index * J + f.cladding_index * f.cladding_index * K) -
           n_eff * n_eff * rhs * rhs;
}

// Profile rebuilt from the standard library's Bessel functions.
inline std::array<Complex, 3> std_profile(const GuidedMode& m, double r) {
    const double a = m.fiber.radius;
    const double q = m.q;
    const double h = m.h;
    const double s = m.s;
    const Complex i(0, 1);
    if (r > a) {
        const double k0 = std::cyl_bessel_k(0, q * r);
        const double k1 = std::cyl_bessel_k(1, q * r);
        const double k2 = std::cyl_bessel_k(2, q * r);
        return {i * ((1 - s) * k0 + (1 + s) * k2), -((1 - s) * k0 - (1 + s) * k2),
                2 * q / m.beta * k1};
    }
    const double c = std::cyl_bessel_k(1, q * a) / std::cyl_bessel_j(1, h * a);
    const double j0 = std::cyl_bessel_j(0, h * r);
    const double j1 = std::cyl_bessel_j(1, h * r);
    const double j2 = std::cyl_bessel_j(2, h * r);
    const double t = q / h * c;
    return {i * t * ((1 - s) * j0 - (1 + s) * j2), -t * ((1 - s) * j0 + (1 + s) * j2),
            2 * q / m.beta * c * j1};
}

// Carried power from S_z with a finite-difference dE_z/dr, composite Simpson.
inline double simpson_power(const GuidedMode& m) {
    const double a = m.fiber.radius;
    const double omega = m.k * owt::constants::speed_of_light;
    const auto sz = [&](double r, double lo, double hi) {
        const auto e = std_profile(m, r);
        const double dr = 1e-12;
        const double r1 = std::max(r - dr, lo);
        const double r2 = std::min(r + dr, hi);
        const Complex dez = (std_profile(m, r2)[2] - std_profile(m, r1)[2]) / (r2 - r1);
        const Complex ez_r = r > 0 ? e[2] / r : 0.5 * m.h * 2 * m.q / m.beta *
                                                    std::cyl_bessel_k(1, m.q * a) /
                                                    std::cyl_bessel_j(1, m.h * a);
        const Complex hphi = m.beta * e[0] + Complex(0, 1) * dez;
        const Complex hr = ez_r - m.beta * e[1];
        return m.amplitude * m.amplitude * 0.5 *
               std::real(e[0] * std::conj(hphi) - e[1] * std::conj(hr)) /
               (omega * owt::constants::vacuum_permeability);
    };
    const auto simpson = [&](double lo, double hi, int n) {
        const double h = (hi - lo) / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double r = lo + i * h;
            const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
            sum += w * 2 * std::numbers::pi * r * sz(r, lo, hi);
        }
        return sum * h / 3;
    };
    const double outer = a * (1 + 1e-14);
    return simpson(0.0, a, 4000) + simpson(outer, a + 40.0 / m.q, 40000);
}

// Plain golden-section search for a minimum of f on [lo, hi].
inline double golden_argmin(const std::function<double(double)>& f, double lo, double hi,
                            double tol) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    while (hi - lo > tol) {
        if (f(x1) < f(x2)) {
            hi = x2;
        } else {
            lo = x1;
        }
        x1 = hi - g * (hi - lo);
        x2 = lo + g * (hi - lo);
    }
    return 0.5 * (lo + hi);
}

}  // namespace owt::oracle
