#include <array>
#include <cmath>

#include "owt/numerics.hpp"

namespace owt::numerics {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

Estimate gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += kKronrod[i] * sum;
        if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
    }
    return {kronrod * half, std::fabs((kronrod - gauss) * half)};
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double tol,
             Estimate whole, int depth) {
    if (whole.error <= tol || depth >= 50) return whole.value;
    const double mid = 0.5 * (lo + hi);
    const Estimate left = gk15(f, lo, mid);
    const Estimate right = gk15(f, mid, hi);
    return adapt(f, lo, mid, 0.5 * tol, left, depth + 1) +
           adapt(f, mid, hi, 0.5 * tol, right, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                 double abs_tol) {
    if (lo == hi) return 0.0;
    const Estimate whole = gk15(f, lo, hi);
    const double tol = std::max(abs_tol, rel_tol * std::fabs(whole.value));
    return adapt(f, lo, hi, tol, whole, 0);
}

}  // namespace owt::numerics
