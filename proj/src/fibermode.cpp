#include "owt/fibermode.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "owt/constants.hpp"
#include "owt/errors.hpp"
#include "owt/numerics.hpp"

namespace owt::fibermode {

namespace nm = owt::numerics;
using namespace std::complex_literals;

namespace {

constexpr int kScanPoints = 2000;
constexpr double kSingleModeCutoff = 2.404825557695773;

struct Transverse {
    double h;
    double q;
};

Transverse transverse(const FiberSpec& fiber, double k, double beta) {
    const double n1k = fiber.core_index * k;
    const double n2k = fiber.cladding_index * k;
    return {std::sqrt(n1k * n1k - beta * beta), std::sqrt(beta * beta - n2k * n2k)};
}

// J1'(u)/(u J1(u)) and K1'(w)/(w K1(w)).
double j_ratio(double u) { return nm::bessel_j_prime(1, u) / (u * nm::bessel_j(1, u)); }
double k_ratio(double w) { return nm::bessel_k_prime(1, w) / (w * nm::bessel_k(1, w)); }

std::vector<double> scan_grid(const FiberSpec& fiber) {
    std::vector<double> grid(kScanPoints);
    const double lo = fiber.cladding_index;
    const double hi = fiber.core_index;
    // Open interval: skip the endpoints where h or q vanish.
    for (int i = 0; i < kScanPoints; ++i)
        grid[i] = lo + (hi - lo) * (i + 0.5) / kScanPoints;
    return grid;
}

// Sign changes of the eigenvalue function that are zeros rather than poles
// of the J1 ratio.
std::vector<double> dispersion_roots(const FiberSpec& fiber, double wavelength) {
    const auto f = [&](double n_eff) { return dispersion_function(fiber, wavelength, n_eff); };
    const auto grid = scan_grid(fiber);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = values[i];
        const double b = values[i + 1];
        if (!std::isfinite(a) || !std::isfinite(b) || (a > 0.0) == (b > 0.0)) continue;
        const auto bracket = nm::Bracket{grid[i], grid[i + 1], a, b};
        const double root = nm::find_root(f, bracket, 1e-15);
        // A pole flips sign with |f| growing toward the crossing.
        const double scale = std::max(std::fabs(a), std::fabs(b));
        if (std::fabs(f(root)) <= 1e-6 * scale + 1e-12) roots.push_back(root);
    }
    return roots;
}

}  // namespace

void FiberSpec::validate() const {
    if (!(radius > 0.0)) throw DomainError("fiber radius must be positive");
    if (!(cladding_index >= 1.0)) throw DomainError("cladding index must be >= 1");
    if (!(core_index > cladding_index))
        throw DomainError("core index must exceed cladding index");
}

double v_number(const FiberSpec& fiber, double wavelength) {
    const double k = 2.0 * constants::pi / wavelength;
    return k * fiber.radius *
           std::sqrt(fiber.core_index * fiber.core_index -
                     fiber.cladding_index * fiber.cladding_index);
}

double GuidedMode::v_number() const { return fibermode::v_number(fiber, wavelength); }

double dispersion_function(const FiberSpec& fiber, double wavelength, double effective_index) {
    const double k = 2.0 * constants::pi / wavelength;
    const auto [h, q] = transverse(fiber, k, effective_index * k);
    const double ha = h * fiber.radius;
    const double qa = q * fiber.radius;
    const double jr = j_ratio(ha);
    const double kr = k_ratio(qa);
    const double n1sq = fiber.core_index * fiber.core_index;
    const double n2sq = fiber.cladding_index * fiber.cladding_index;
    const double rhs = 1.0 / (ha * ha) + 1.0 / (qa * qa);
    return (jr + kr) * (n1sq * jr + n2sq * kr) - effective_index * effective_index * rhs * rhs;
}

int count_dispersion_roots(const FiberSpec& fiber, double wavelength) {
    fiber.validate();
    return static_cast<int>(dispersion_roots(fiber, wavelength).size());
}

GuidedMode solve_dispersion(const FiberSpec& fiber, double wavelength) {
    fiber.validate();
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    const auto roots = dispersion_roots(fiber, wavelength);
    if (roots.empty()) {
        std::ostringstream msg;
        msg << "no HE11 root for a = " << fiber.radius << " m at lambda = " << wavelength << " m";
        throw NoRootError(msg.str());
    }
    GuidedMode mode;
    mode.fiber = fiber;
    mode.wavelength = wavelength;
    mode.k = 2.0 * constants::pi / wavelength;
    mode.beta = roots.back() * mode.k;  // HE11 has the largest propagation constant
    const auto [h, q] = transverse(fiber, mode.k, mode.beta);
    mode.h = h;
    mode.q = q;
    const double ha = h * fiber.radius;
    const double qa = q * fiber.radius;
    mode.s = (1.0 / (ha * ha) + 1.0 / (qa * qa)) / (j_ratio(ha) + k_ratio(qa));
    mode.single_mode = v_number(fiber, wavelength) < kSingleModeCutoff;
    return mode;
}

Profile profile_outside(const GuidedMode& mode, double r) {
    if (!(r > mode.fiber.radius)) throw DomainError("profile_outside requires r > a");
    const double q = mode.q;
    const double s = mode.s;
    const auto kb = nm::bessel_k_set(q * r);
    const auto [k0, k1, k2] = kb.value;
    const double dk0 = q * kb.derivative[0];
    const double dk1 = q * kb.derivative[1];
    const double dk2 = q * kb.derivative[2];
    Profile p;
    p.e = {1i * ((1.0 - s) * k0 + (1.0 + s) * k2), -((1.0 - s) * k0 - (1.0 + s) * k2),
           Complex(2.0 * q / mode.beta * k1)};
    p.de_dr = {1i * ((1.0 - s) * dk0 + (1.0 + s) * dk2), -((1.0 - s) * dk0 - (1.0 + s) * dk2),
               Complex(2.0 * q / mode.beta * dk1)};
    return p;
}

Profile profile_inside(const GuidedMode& mode, double r) {
    const double a = mode.fiber.radius;
    if (!(r >= 0.0 && r <= a)) throw DomainError("profile_inside requires 0 <= r <= a");
    const double h = mode.h;
    const double q = mode.q;
    const double s = mode.s;
    // Continuity of e_phi and e_z at r = a fixes the interior scale.
    const double c = nm::bessel_k(1, q * a) / nm::bessel_j(1, h * a);
    const auto jb = nm::bessel_j_set(h * r);
    const auto [j0, j1, j2] = jb.value;
    const double dj0 = h * jb.derivative[0];
    const double dj1 = h * jb.derivative[1];
    const double dj2 = h * jb.derivative[2];
    const double t = q / h * c;
    Profile p;
    p.e = {1i * t * ((1.0 - s) * j0 - (1.0 + s) * j2), Complex(-t * ((1.0 - s) * j0 + (1.0 + s) * j2)),
           Complex(2.0 * q / mode.beta * c * j1)};
    p.de_dr = {1i * t * ((1.0 - s) * dj0 - (1.0 + s) * dj2),
               Complex(-t * ((1.0 - s) * dj0 + (1.0 + s) * dj2)),
               Complex(2.0 * q / mode.beta * c * dj1)};
    return p;
}

Profile profile(const GuidedMode& mode, double r) {
    return r > mode.fiber.radius ? profile_outside(mode, r) : profile_inside(mode, r);
}

double axial_poynting(const GuidedMode& mode, double r) {
    // H = curl E / (i omega mu0) for E ~ e(r) exp(i beta z + i phi - i omega t);
    // S_z = Re(E_r H_phi* - E_phi H_r*) / 2.
    const Profile p = profile(mode, r);
    const auto& [er, ephi, ez] = p.e;
    const Complex dez = p.de_dr[2];
    // e_z / r at the axis: e_z ~ J1(hr) -> (h/2) * coefficient.
    Complex ez_over_r;
    if (r > 0.0) {
        ez_over_r = ez / r;
    } else {
        const double c = nm::bessel_k(1, mode.q * mode.fiber.radius) /
                         nm::bessel_j(1, mode.h * mode.fiber.radius);
        ez_over_r = 2.0 * mode.q / mode.beta * c * 0.5 * mode.h;
    }
    const double omega = mode.k * constants::speed_of_light;
    const Complex h_phi = mode.beta * er + 1i * dez;
    const Complex h_r = ez_over_r - mode.beta * ephi;
    const double amp = mode.normalized() ? mode.amplitude : 1.0;
    return amp * amp * 0.5 * std::real(er * std::conj(h_phi) - ephi * std::conj(h_r)) /
           (omega * constants::vacuum_permeability);
}

double transverse_power(const GuidedMode& mode) {
    const double a = mode.fiber.radius;
    const double r_max = a + 12.0 / mode.q;
    const auto density = [&](double r) { return 2.0 * constants::pi * r * axial_poynting(mode, r); };
    return nm::integrate(density, 0.0, a, 1e-12) + nm::integrate(density, a, r_max, 1e-12);
}

GuidedMode normalize_to_power(const GuidedMode& mode, double power) {
    if (!(power >= 0.0)) throw DomainError("power must be non-negative");
    GuidedMode out = mode;
    out.amplitude = 0.0;
    out.power = 0.0;
    if (power == 0.0) return out;
    const double unit_power = transverse_power(out);
    out.amplitude = std::sqrt(power / unit_power);
    out.power = power;
    return out;
}

namespace {

void require_normalized(const GuidedMode& mode) {
    if (!mode.normalized())
        throw UnnormalizedModeError("field envelope requested from an unnormalized mode");
}

}  // namespace

FieldEnvelope envelope_quasi_circular(const GuidedMode& mode, int handedness,
                                      const Position& position) {
    require_normalized(mode);
    if (handedness != 1 && handedness != -1) throw DomainError("handedness must be +1 or -1");
    const Profile p = profile(mode, position.r);
    const double f = handedness;
    const Complex phase = std::exp(1i * (mode.beta * position.z + f * position.phi));
    const double A = mode.amplitude;
    FieldEnvelope env;
    env.position = position;
    env.polarization = QuasiCircular{handedness};
    env.components = {A * p.e[0] * phase, A * f * p.e[1] * phase, A * p.e[2] * phase};
    return env;
}

FieldEnvelope envelope_quasi_linear(const GuidedMode& mode, double orientation,
                                    const Position& position) {
    require_normalized(mode);
    const Profile p = profile(mode, position.r);
    // (E_+ e^{-i phi0} + E_- e^{+i phi0}) / sqrt(2)
    const double d = position.phi - orientation;
    const Complex phase = std::exp(1i * mode.beta * position.z);
    const double A = std::sqrt(2.0) * mode.amplitude;
    FieldEnvelope env;
    env.position = position;
    env.polarization = QuasiLinear{orientation};
    env.components = {A * p.e[0] * std::cos(d) * phase, A * 1i * p.e[1] * std::sin(d) * phase,
                      A * p.e[2] * std::cos(d) * phase};
    return env;
}

FieldEnvelope envelope(const GuidedMode& mode, const Polarization& pol, const Position& position) {
    if (const auto* circ = std::get_if<QuasiCircular>(&pol))
        return envelope_quasi_circular(mode, circ->handedness, position);
    return envelope_quasi_linear(mode, std::get<QuasiLinear>(pol).orientation, position);
}

double intensity(const FieldEnvelope& env) {
    double sum = 0.0;
    for (const auto& c : env.components) sum += std::norm(c);
    return 0.5 * constants::speed_of_light * constants::vacuum_permittivity * sum;
}

std::array<double, 3> spin_density(const FieldEnvelope& env) {
    const auto& [er, ephi, ez] = env.components;
    // Component a of i (E* x E) is 2 Im(E_b E_c*) for cyclic (a, b, c).
    return {2.0 * std::imag(ephi * std::conj(ez)), 2.0 * std::imag(ez * std::conj(er)),
            2.0 * std::imag(er * std::conj(ephi))};
}

double effective_area(const GuidedMode& mode, const Position& position) {
    return effective_area(mode, position, QuasiLinear{position.phi});
}

double effective_area(const GuidedMode& mode, const Position& position, const Polarization& pol) {
    const double I = intensity(envelope(mode, pol, position));
    if (!(I > 0.0)) throw DomainError("effective_area: zero intensity");
    return mode.power / I;
}

}  // namespace owt::fibermode
