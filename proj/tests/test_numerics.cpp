#include <doctest.h>

#include <cmath>
#include <numbers>

#include "owt/errors.hpp"
#include "owt/numerics.hpp"

using namespace owt::numerics;

namespace {

// J_n(x) = (1/2pi) int_0^{2pi} cos(n t - x sin t) dt; the trapezoid rule is
// spectrally accurate for this periodic integrand.
double j_integral(int n, double x) {
    constexpr int N = 400;
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        const double t = 2.0 * std::numbers::pi * i / N;
        sum += std::cos(n * t - x * std::sin(t));
    }
    return sum / N;
}

// K_n(x) = int_0^inf exp(-x cosh t) cosh(n t) dt, trapezoid with a fine step.
double k_integral(int n, double x) {
    constexpr double h = 0.002;
    double sum = 0.5 * std::exp(-x);
    for (int i = 1;; ++i) {
        const double t = i * h;
        const double term = std::exp(-x * std::cosh(t)) * std::cosh(n * t);
        sum += term;
        if (term < 1e-30 * sum) break;
    }
    return sum * h;
}

}  // namespace

TEST_CASE("J_n agrees with the integral representation") {
    for (int n = 0; n <= 2; ++n) {
        for (double x : {0.0, 1e-6, 0.1, 0.5, 1.0, 2.404825557695773, 3.7, 6.0, 7.99, 8.01, 9.5,
                         12.0, 20.0, 35.0}) {
            const double expected = j_integral(n, x);
            CHECK(bessel_j(n, x) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("K_n agrees with the integral representation") {
    for (int n = 0; n <= 2; ++n) {
        for (double x : {0.05, 0.3, 0.9, 1.5, 1.99, 2.01, 3.0, 5.0, 10.0, 25.0}) {
            const double expected = k_integral(n, x);
            CHECK(bessel_k(n, x) == doctest::Approx(expected).epsilon(1e-11));
        }
    }
}

TEST_CASE("Bessel functions agree with the standard library") {
    for (double x = 0.05; x < 30.0; x *= 1.37) {
        for (int n = 0; n <= 2; ++n) {
            CHECK(bessel_j(n, x) == doctest::Approx(std::cyl_bessel_j(n, x)).epsilon(1e-12).scale(1e-3));
            CHECK(bessel_k(n, x) == doctest::Approx(std::cyl_bessel_k(n, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("modified Bessel Wronskian I_n K_{n+1} + I_{n+1} K_n = 1/x") {
    for (double x : {0.2, 1.0, 2.0, 2.5, 4.0, 9.0}) {
        for (int n = 0; n <= 1; ++n) {
            const double w = std::cyl_bessel_i(n, x) * bessel_k(n + 1, x) +
                             std::cyl_bessel_i(n + 1, x) * bessel_k(n, x);
            CHECK(w * x == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("Bessel derivatives match central differences") {
    const double h = 1e-5;
    for (double x : {0.4, 1.7, 3.3, 8.5, 11.0}) {
        for (int n = 0; n <= 2; ++n) {
            const double dj = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2 * h);
            const double dk = (bessel_k(n, x + h) - bessel_k(n, x - h)) / (2 * h);
            CHECK(bessel_j_prime(n, x) == doctest::Approx(dj).epsilon(1e-8).scale(1.0));
            CHECK(bessel_k_prime(n, x) == doctest::Approx(dk).epsilon(1e-8));
        }
    }
    CHECK(bessel_j_prime(1, 0.0) == 0.5);
}

TEST_CASE("batched Bessel sets equal the single-order functions") {
    for (double x : {0.3, 2.0, 7.9, 8.1, 15.0}) {
        const auto j = bessel_j_set(x);
        const auto k = bessel_k_set(x);
        for (int n = 0; n <= 2; ++n) {
            CHECK(j.value[n] == bessel_j(n, x));
            CHECK(j.derivative[n] == bessel_j_prime(n, x));
            CHECK(k.value[n] == bessel_k(n, x));
            CHECK(k.derivative[n] == bessel_k_prime(n, x));
        }
    }
}

TEST_CASE("Bessel domain errors") {
    CHECK_THROWS_AS(bessel_j(3, 1.0), owt::DomainError);
    CHECK_THROWS_AS(bessel_j(-1, 1.0), owt::DomainError);
    CHECK_THROWS_AS(bessel_j(0, -1.0), owt::DomainError);
    CHECK_THROWS_AS(bessel_k(0, 0.0), owt::DomainError);
    CHECK_THROWS_AS(bessel_k_prime(1, -2.0), owt::DomainError);
}

TEST_CASE("find_root on classic test functions") {
    const auto f = [](double x) { return std::cos(x) - x; };
    CHECK(find_root(f, Bracket::make(f, 0.0, 1.0), 1e-15) ==
          doctest::Approx(0.7390851332151607).epsilon(1e-15));

    const auto g = [](double x) { return x * x * x - 2.0 * x - 5.0; };
    CHECK(find_root(g, Bracket::make(g, 2.0, 3.0), 1e-14) ==
          doctest::Approx(2.0945514815423265).epsilon(1e-14));

    // Slowly converging secant case: very flat on one side.
    const auto h = [](double x) { return std::pow(x, 9) - 1e-9; };
    CHECK(find_root(h, Bracket::make(h, 0.0, 1.0), 1e-15) ==
          doctest::Approx(0.1).epsilon(1e-10));

    CHECK_THROWS_AS(Bracket::make(f, 1.0, 2.0), owt::NoRootError);
}

TEST_CASE("find_root is deterministic") {
    const auto f = [](double x) { return std::tanh(x - 0.3) + 0.1 * x; };
    const double a = find_root(f, Bracket::make(f, -2.0, 2.0), 1e-16);
    const double b = find_root(f, Bracket::make(f, -2.0, 2.0), 1e-16);
    CHECK(a == b);
}

TEST_CASE("golden section extrema") {
    const auto f = [](double x) { return (x - 1.25) * (x - 1.25) + 3.0; };
    const auto m = minimize_golden(f, -4.0, 7.0, 1e-12);
    // A minimum is located only to about sqrt(machine epsilon).
    CHECK(m.x == doctest::Approx(1.25).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(3.0));
    const auto g = [](double x) { return std::sin(x); };
    const auto M = maximize_golden(g, 0.0, 3.0, 1e-12);
    CHECK(M.x == doctest::Approx(std::numbers::pi / 2).epsilon(1e-7));
}

TEST_CASE("adaptive quadrature") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-11));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("finite-difference Hessian of a quadratic form") {
    const auto f = [](double x, double y) { return 3 * x * x + 2 * x * y + 5 * y * y + x - y; };
    const auto H = hessian_fd(f, {0.2, -0.1}, 1e-3);
    CHECK(H.xx == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(H.xy == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(H.yy == doctest::Approx(10.0).epsilon(1e-7));
    CHECK(H.positive_definite());

    const auto e = H.eigen();
    // eigenvalues of [[6,2],[2,10]] are 8 -+ sqrt(8)
    CHECK(e.values[0] == doctest::Approx(8.0 - std::sqrt(8.0)).epsilon(1e-7));
    CHECK(e.values[1] == doctest::Approx(8.0 + std::sqrt(8.0)).epsilon(1e-7));
    for (int i = 0; i < 2; ++i) {
        const auto& v = e.vectors[i];
        CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0));
        CHECK(H.xx * v[0] + H.xy * v[1] == doctest::Approx(e.values[i] * v[0]).epsilon(1e-7));
    }

    const Hessian2 saddle{1.0, 0.0, -1.0};
    CHECK_FALSE(saddle.positive_definite());
}
