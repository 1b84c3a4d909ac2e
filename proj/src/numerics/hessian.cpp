#include <cmath>

#include "owt/numerics.hpp"

namespace owt::numerics {

Hessian2::Eigen Hessian2::eigen() const {
    const double mean = 0.5 * (xx + yy);
    const double diff = 0.5 * (xx - yy);
    const double radius = std::hypot(diff, xy);
    Eigen e{};
    e.values = {mean - radius, mean + radius};
    if (xy == 0.0) {
        // Already diagonal; keep the axes in ascending eigenvalue order.
        if (xx <= yy) {
            e.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
        } else {
            e.vectors = {{{0.0, 1.0}, {1.0, 0.0}}};
        }
        return e;
    }
    for (int i = 0; i < 2; ++i) {
        // (H - lambda) v = 0  =>  v = (xy, lambda - xx)
        double vx = xy;
        double vy = e.values[i] - xx;
        if (std::hypot(vx, vy) < 1e-300) {
            vx = e.values[i] - yy;
            vy = xy;
        }
        const double n = std::hypot(vx, vy);
        e.vectors[i] = {vx / n, vy / n};
    }
    return e;
}

bool Hessian2::positive_definite() const {
    return xx > 0.0 && xx * yy - xy * xy > 0.0;
}

Hessian2 hessian_fd(const std::function<double(double, double)>& f, Point2 point, double step) {
    const auto [x, y] = point;
    const double h = step;
    const double f0 = f(x, y);
    Hessian2 out;
    out.xx = (f(x + h, y) - 2.0 * f0 + f(x - h, y)) / (h * h);
    out.yy = (f(x, y + h) - 2.0 * f0 + f(x, y - h)) / (h * h);
    out.xy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) /
             (4.0 * h * h);
    return out;
}

}  // namespace owt::numerics
