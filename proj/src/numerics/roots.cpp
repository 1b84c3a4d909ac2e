#include <cmath>
#include <sstream>

#include "owt/errors.hpp"
#include "owt/numerics.hpp"

namespace owt::numerics {

namespace {

bool same_sign(double a, double b) {
    return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0);
}

}  // namespace

Bracket Bracket::make(const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo < hi)) throw NoRootError("bracket requires lo < hi");
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi) || same_sign(b.f_lo, b.f_hi)) {
        std::ostringstream msg;
        msg << "no sign change on [" << lo << ", " << hi << "]: f = " << b.f_lo << ", "
            << b.f_hi;
        throw NoRootError(msg.str());
    }
    return b;
}

double find_root(const std::function<double(double)>& f, Bracket bracket, double tol) {
    auto [lo, hi, f_lo, f_hi] = bracket;
    if (!(lo < hi) || same_sign(f_lo, f_hi)) throw NoRootError("find_root: invalid bracket");
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;

    // Illinois: secant on the bracket ends, halving the weight of an end
    // that is retained twice in a row. A bisection step is forced whenever
    // two consecutive steps fail to halve the bracket.
    int side = 0;
    double checkpoint = hi - lo;
    for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
        const bool force_bisect = iter % 3 == 2 && hi - lo > 0.5 * checkpoint;
        double x = force_bisect ? 0.5 * (lo + hi) : (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (same_sign(fx, f_hi)) {
            hi = x;
            f_hi = fx;
            if (side == -1) f_lo *= 0.5;
            side = -1;
        } else {
            lo = x;
            f_lo = fx;
            if (side == 1) f_hi *= 0.5;
            side = 1;
        }
        if (iter % 3 == 2) checkpoint = hi - lo;
    }
    return 0.5 * (lo + hi);
}

LineExtremum minimize_golden(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? LineExtremum{c, fc} : LineExtremum{d, fd};
}

LineExtremum maximize_golden(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
    const auto r = minimize_golden([&](double x) { return -f(x); }, lo, hi, tol);
    return {r.x, -r.value};
}

}  // namespace owt::numerics
