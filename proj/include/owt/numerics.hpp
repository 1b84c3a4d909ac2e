#pragma once

#include <array>
#include <functional>
#include <utility>

namespace owt::numerics {

//
// Bessel functions of integer order 0..2.
//
// J_n uses the power series for x <= 8 and Miller's backward recurrence
// above; K_n uses the logarithmic power series for x <= 2 and Steed's
// continued fraction above. K_2 and all derivatives come from the standard
// recurrences, so they share the accuracy of the order-0/1 evaluations.
//

/// J_n(x) for n in {0,1,2}, x >= 0.
double bessel_j(int order, double x);
/// dJ_n/dx.
double bessel_j_prime(int order, double x);
/// K_n(x) for n in {0,1,2}, x > 0. Throws DomainError for x <= 0.
double bessel_k(int order, double x);
/// dK_n/dx.
double bessel_k_prime(int order, double x);

/// Orders 0..2 and their derivatives at one argument.
struct BesselSet {
    std::array<double, 3> value;
    std::array<double, 3> derivative;
};

/// J_0..J_2 and derivatives from a single evaluation.
BesselSet bessel_j_set(double x);
/// K_0..K_2 and derivatives from a single evaluation of K_0, K_1.
BesselSet bessel_k_set(double x);

/// Interval [lo, hi] known to enclose a sign change of some function.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    /// Evaluates f at both ends. Throws NoRootError when there is no sign change.
    static Bracket make(const std::function<double(double)>& f, double lo, double hi);

    double width() const { return hi - lo; }
};

/// Root of f inside the bracket, to absolute bracket width <= tol.
///
/// Bisection safeguarded secant (Illinois variant); every step keeps a
/// valid bracket so convergence never depends on the secant step.
/// Throws NoRootError when f_lo and f_hi have the same sign.
double find_root(const std::function<double(double)>& f, Bracket bracket, double tol);

/// Result of a one-dimensional line search.
struct LineExtremum {
    double x;
    double value;
};

/// Golden-section minimization of a unimodal f on [lo, hi].
LineExtremum minimize_golden(const std::function<double(double)>& f, double lo, double hi,
                             double tol);
/// Golden-section maximization.
LineExtremum maximize_golden(const std::function<double(double)>& f, double lo, double hi,
                             double tol);

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12, double abs_tol = 0.0);

/// Symmetric 2x2 matrix of second derivatives.
struct Hessian2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    struct Eigen {
        std::array<double, 2> values;                      // ascending
        std::array<std::array<double, 2>, 2> vectors;      // vectors[i]: unit eigenvector of values[i]
    };

    Eigen eigen() const;
    bool positive_definite() const;
};

using Point2 = std::pair<double, double>;

/// Central-difference Hessian of f at point with the given step.
Hessian2 hessian_fd(const std::function<double(double, double)>& f, Point2 point, double step);

}  // namespace owt::numerics
