#include "owt/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "owt/errors.hpp"

namespace owt::numerics {

namespace {

constexpr double kJSeriesCrossover = 8.0;
constexpr double kKSeriesCrossover = 2.0;
constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

void check_order(int order) {
    if (order < 0 || order > 2)
        throw DomainError("Bessel order must be 0, 1 or 2, got " + std::to_string(order));
}

// sum_k (-t)^k / (k! (k+n)!) * (x/2)^n with t = x^2/4
double j_series(int order, double x) {
    const long double half = 0.5L * x;
    const long double t = half * half;
    long double term = 1.0L;
    for (int i = 1; i <= order; ++i) term *= half / i;
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -t / (static_cast<long double>(k) * (k + order));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

// Miller's backward recurrence normalized by J0 + 2 sum J_2k = 1.
std::array<double, 3> j_miller(double x) {
    const int start = 2 * ((static_cast<int>(x) + 60) / 2);
    double next = 0.0;      // J_{k+1}
    double current = 1e-30; // J_k
    double norm = 0.0;
    std::array<double, 3> low{};
    for (int k = start; k > 0; --k) {
        const double prev = 2.0 * k / x * current - next;  // J_{k-1}
        next = current;
        current = prev;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
        if (k - 1 <= 2) low[k - 1] = current;
        if (std::fabs(current) > 1e250) {
            next *= 1e-250;
            current *= 1e-250;
            norm *= 1e-250;
            for (auto& v : low) v *= 1e-250;
        }
    }
    norm += current;  // J_0 term
    for (auto& v : low) v /= norm;
    return low;
}

struct KPair {
    double k0;
    double k1;
};

KPair k_series(double x) {
    const long double lx = x;
    const long double t = 0.25L * lx * lx;
    const long double log_half = std::log(0.5L * lx);

    // K0
    long double term = 1.0L;  // t^k / (k!)^2
    long double harmonic = 0.0L;
    long double i0 = 1.0L;
    long double tail0 = 0.0L;
    // K1 pieces
    long double term1 = 1.0L;  // t^k / (k! (k+1)!)
    long double i1_sum = 1.0L;
    long double psi_sum = 1.0L - 2.0L * kEulerGamma;  // psi(1) + psi(2)
    long double tail1 = psi_sum;
    for (int k = 1; k < 200; ++k) {
        term *= t / (static_cast<long double>(k) * k);
        harmonic += 1.0L / k;
        i0 += term;
        tail0 += term * harmonic;

        term1 *= t / (static_cast<long double>(k) * (k + 1));
        psi_sum += 1.0L / k + 1.0L / (k + 1);
        i1_sum += term1;
        tail1 += term1 * psi_sum;
        if (term < 1e-22L * i0 && term1 < 1e-22L * i1_sum) break;
    }
    const long double k0 = -(log_half + kEulerGamma) * i0 + tail0;
    const long double i1 = 0.5L * lx * i1_sum;
    const long double k1 = 1.0L / lx + log_half * i1 - 0.25L * lx * tail1;
    return {static_cast<double>(k0), static_cast<double>(k1)};
}

// Steed's method (continued fraction CF2) for K_0, K_1 at x > 2.
KPair k_steed(double x) {
    constexpr double eps = 1e-17;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
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
        if (std::fabs(dels / s) < eps) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

KPair k01(double x) {
    return x <= kKSeriesCrossover ? k_series(x) : k_steed(x);
}

}  // namespace

double bessel_j(int order, double x) {
    check_order(order);
    if (!(x >= 0.0)) throw DomainError("bessel_j: x must be >= 0");
    if (x <= kJSeriesCrossover) return j_series(order, x);
    return j_miller(x)[order];
}

double bessel_j_prime(int order, double x) {
    check_order(order);
    switch (order) {
    case 0:
        return -bessel_j(1, x);
    case 1:
        return x == 0.0 ? 0.5 : bessel_j(0, x) - bessel_j(1, x) / x;
    default:
        return x == 0.0 ? 0.0 : bessel_j(1, x) - 2.0 * bessel_j(2, x) / x;
    }
}

double bessel_k(int order, double x) {
    check_order(order);
    if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
    const auto [k0, k1] = k01(x);
    switch (order) {
    case 0:
        return k0;
    case 1:
        return k1;
    default:
        return k0 + 2.0 * k1 / x;
    }
}

double bessel_k_prime(int order, double x) {
    check_order(order);
    if (!(x > 0.0)) throw DomainError("bessel_k_prime: x must be > 0");
    const auto [k0, k1] = k01(x);
    switch (order) {
    case 0:
        return -k1;
    case 1:
        return -k0 - k1 / x;
    default: {
        const double k2 = k0 + 2.0 * k1 / x;
        return -k1 - 2.0 * k2 / x;
    }
    }
}

BesselSet bessel_j_set(double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_j_set: x must be >= 0");
    BesselSet out{};
    if (x <= kJSeriesCrossover) {
        for (int n = 0; n < 3; ++n) out.value[n] = j_series(n, x);
    } else {
        out.value = j_miller(x);
    }
    const auto& j = out.value;
    out.derivative[0] = -j[1];
    out.derivative[1] = x == 0.0 ? 0.5 : j[0] - j[1] / x;
    out.derivative[2] = x == 0.0 ? 0.0 : j[1] - 2.0 * j[2] / x;
    return out;
}

BesselSet bessel_k_set(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k_set: x must be > 0");
    const auto [k0, k1] = k01(x);
    const double k2 = k0 + 2.0 * k1 / x;
    return {{k0, k1, k2}, {-k1, -k0 - k1 / x, -k1 - 2.0 * k2 / x}};
}

}  // namespace owt::numerics
