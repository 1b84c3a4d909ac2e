#pragma once

#include <array>
#include <complex>
#include <variant>

namespace owt::fibermode {

using Complex = std::complex<double>;
/// Complex cylindrical components (r, phi, z).
using CVec3 = std::array<Complex, 3>;

/// Step-index cylinder of radius a, core index n1 in a cladding of index n2.
struct FiberSpec {
    double radius = 230e-9;
    double core_index = 1.45;
    double cladding_index = 1.0;

    /// Throws DomainError unless radius > 0 and core > cladding >= 1.
    void validate() const;
};

/// Solved HE11 mode. `amplitude` is zero until normalize_to_power().
struct GuidedMode {
    FiberSpec fiber;
    double wavelength = 0.0;  // m
    double k = 0.0;           // free-space wavenumber, 1/m
    double beta = 0.0;        // propagation constant, 1/m
    double h = 0.0;           // sqrt(n1^2 k^2 - beta^2)
    double q = 0.0;           // sqrt(beta^2 - n2^2 k^2)
    double s = 0.0;           // HE11 profile parameter
    double amplitude = 0.0;   // A, V/m
    double power = 0.0;       // W carried when amplitude was set
    bool single_mode = true;  // V < 2.405

    double effective_index() const { return beta / k; }
    double v_number() const;
    bool normalized() const { return power > 0.0; }
};

struct Position {
    double r = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

struct QuasiCircular {
    int handedness = +1;
};
struct QuasiLinear {
    double orientation = 0.0;  // phi_0, azimuth of maximum intensity
};
using Polarization = std::variant<QuasiCircular, QuasiLinear>;

/// Positive-frequency field envelope at a point, cylindrical components in V/m.
struct FieldEnvelope {
    Position position;
    CVec3 components{};
    Polarization polarization = QuasiCircular{};
};

/// Unnormalized mode profile e(r) and its radial derivative.
struct Profile {
    CVec3 e{};
    CVec3 de_dr{};
};

/// V = k a sqrt(n1^2 - n2^2).
double v_number(const FiberSpec& fiber, double wavelength);

/// HE11/EH eigenvalue function of effective index n_eff = beta/k; its
/// zeros in (n2, n1) are the hybrid guided modes.
double dispersion_function(const FiberSpec& fiber, double wavelength, double effective_index);

/// Number of distinct zeros of the eigenvalue function in (n2 k, n1 k).
int count_dispersion_roots(const FiberSpec& fiber, double wavelength);

/// Solves for the HE11 mode (largest-beta root). Throws NoRootError when no
/// root exists. A multimode V number only clears `single_mode`.
GuidedMode solve_dispersion(const FiberSpec& fiber, double wavelength);

/// Profile for r > a. Throws DomainError for r <= a.
Profile profile_outside(const GuidedMode& mode, double r);
/// Profile for 0 <= r <= a.
Profile profile_inside(const GuidedMode& mode, double r);
/// Dispatches on r; r == a uses the interior branch.
Profile profile(const GuidedMode& mode, double r);

/// Time-averaged axial Poynting flux (W/m^2) of the quasi-circular mode at
/// radius r, using the current amplitude (or 1 V/m if unnormalized).
double axial_poynting(const GuidedMode& mode, double r);

/// Power carried by the mode at its current amplitude (or 1 V/m), by
/// adaptive quadrature split at r = a and truncated at a + 12/q.
double transverse_power(const GuidedMode& mode);

/// Returns a copy with the amplitude set so that the carried power equals P.
GuidedMode normalize_to_power(const GuidedMode& mode, double power);

/// A (e_r, f e_phi, e_z) exp(i beta z + i f phi) with f = handedness.
FieldEnvelope envelope_quasi_circular(const GuidedMode& mode, int handedness,
                                      const Position& position);
/// Equal-weight superposition of the two quasi-circular envelopes; intensity
/// peaks on the azimuths orientation and orientation + pi.
FieldEnvelope envelope_quasi_linear(const GuidedMode& mode, double orientation,
                                    const Position& position);
FieldEnvelope envelope(const GuidedMode& mode, const Polarization& pol,
                       const Position& position);

/// (c eps0 / 2) |E|^2 in W/m^2.
double intensity(const FieldEnvelope& env);

/// i [E* x E] in cylindrical components (real vector, V^2/m^2).
std::array<double, 3> spin_density(const FieldEnvelope& env);

/// P / I at the position. Default polarization is quasi-linear oriented
/// along the position's azimuth (maximum intensity there). Throws
/// DomainError when the intensity vanishes.
double effective_area(const GuidedMode& mode, const Position& position);
double effective_area(const GuidedMode& mode, const Position& position, const Polarization& pol);

}  // namespace owt::fibermode
