#pragma once

#include <array>
#include <map>
#include <string>

#include "owt/atom.hpp"
#include "owt/fibermode.hpp"
#include "owt/numerics.hpp"

namespace owt::trap {

using Vec3 = std::array<double, 3>;
using fibermode::Position;

/// Surface coefficient the trap uses by default. The printed literature
/// value carries a positive exponent (5.6e49 J m^3), which cannot describe
/// an attractive ~100 nm range potential; the negative exponent is used.
inline constexpr double kDefaultC3 = 5.6e-49;

/// Everything that defines one optical wire trap.
struct TrapConfig {
    fibermode::FiberSpec fiber;
    double trap_wavelength = 880.25e-9;    // m
    double power = 1.2e-3;                 // W
    int handedness = +1;
    Vec3 external_field = {-22e-4, 0.0, 0.0};  // Cartesian, T
    atom::AtomSpec atom = atom::cesium();
    double c3 = kDefaultC3;                // J m^3
    double probe_wavelength = 852.347e-9;  // m
    bool include_vdw = true;

    /// Throws DomainError on negative power, non-positive C3, bad handedness,
    /// or a trap wavelength outside the polarizability window.
    void validate() const;
};

/// Field at one position, in cylindrical (r, phi, z) and Cartesian (x, y, z)
/// components, tesla.
struct BField {
    double phi = 0.0;  // azimuth of the evaluation point
    Vec3 cylindrical{};
    Vec3 cartesian{};

    static BField from_cylindrical(double phi, const Vec3& cyl);
    static BField from_cartesian(double phi, const Vec3& cart);
    double magnitude() const;
};

/// B_fict = alpha_v / (8 mu_B g_F F) i[E* x E] for the given envelope.
BField fictitious_field(const fibermode::FieldEnvelope& env, const atom::AtomSpec& atom,
                        double wavelength);

/// Same field from the componentwise form
/// alpha_v / (4 mu_B g_F F) [Im(E_z E_r*) phi + Im(E_r E_phi*) z], valid for
/// quasi-circular light; the radial component is taken as zero.
BField fictitious_field_components(const fibermode::FieldEnvelope& env,
                                   const atom::AtomSpec& atom, double wavelength);

/// Azimuthal and axial fictitious field of the quasi-circular trap light and
/// their radial derivatives. Both depend on r only.
struct RadialField {
    double b_phi = 0.0;
    double b_z = 0.0;
    double db_phi = 0.0;
    double db_z = 0.0;
};

struct TrapMinimum {
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double potential = 0.0;  // J, absolute (not offset)
    numerics::Hessian2 hessian;
};

enum class EscapeChannel { Asymptote, InwardBarrier, AzimuthalBarrier };

struct TrapDepth {
    double depth = 0.0;              // J
    double asymptote = 0.0;          // J, U(r -> inf)
    double inward_barrier = 0.0;     // J, max of U between surface and minimum
    double inward_barrier_r = 0.0;   // m
    double azimuthal_barrier = 0.0;  // J, max of U on the circle r = r0
    EscapeChannel limiting = EscapeChannel::Asymptote;
    bool open_toward_surface = false;
};

struct TrapFrequencies {
    double radial = 0.0;     // omega_r, rad/s
    double azimuthal = 0.0;  // omega_phi, rad/s
};

/// A configured trap. Solves and normalizes the trap and probe modes once;
/// all queries are const and safe to call concurrently.
///
/// Handedness +1 is the exp(+i phi) circulation. B_phi does not depend on
/// it (the transverse spin follows the propagation direction); B_z does.
class OpticalWireTrap {
public:
    explicit OpticalWireTrap(TrapConfig config);

    const TrapConfig& config() const { return config_; }
    const fibermode::GuidedMode& trap_mode() const { return trap_mode_; }
    const fibermode::GuidedMode& probe_mode() const { return probe_mode_; }
    double vector_polarizability() const { return alpha_v_; }
    /// Tune-out check applied to the atom data at construction.
    const atom::TuneOutCalibration& tune_out_calibration() const { return calibration_; }

    fibermode::FieldEnvelope trap_envelope(const Position& p) const;
    RadialField radial_field(double r) const;
    BField fictitious_field(const Position& p) const;
    /// Cartesian B_fict + B_ext.
    BField effective_field(const Position& p) const;

    /// Absolute potential mu_B g m_F |B_eff| - C3/(r-a)^3 (vdW per config,
    /// or forced off with include_vdw = false). Throws DomainError for r <= a.
    double potential(const Position& p) const;
    double potential(const Position& p, bool include_vdw) const;
    double potential_xy(double x, double y) const;
    /// U(r -> inf) = mu_B g m_F |B_ext|.
    double asymptote() const;
    /// potential() - asymptote(): the U(x=0, y->inf) = 0 convention.
    double potential_relative(const Position& p) const;

    /// Radial derivative of |B_eff|^2 / 2 along the ray at azimuth phi,
    /// (B_phi + B_ext,phi) dB_phi/dr + (B_z + B_ext,z) dB_z/dr (T^2/m).
    double radial_minimum_condition(double phi, double r) const;
    /// Root of radial_minimum_condition along phi: the surface-free minimum radius.
    double solve_radial_minimum_condition(double phi) const;

    /// Azimuth on which the bias cancels the azimuthal fictitious field.
    double trap_axis() const;

    TrapMinimum find_minimum() const;
    TrapDepth trap_depth(const TrapMinimum& m) const;
    TrapFrequencies trap_frequencies(const TrapMinimum& m) const;
    double spin_flip_rate(const TrapMinimum& m, const TrapFrequencies& w) const;
    /// Signed ellipticity of the trap light at p, |i E* x E| / |E|^2 with the
    /// sign of the axial spin component.
    double ellipticity(const Position& p) const;
    double excitation_rate(const TrapMinimum& m) const;
    double optical_depth_per_atom(const TrapMinimum& m) const;

    /// Step for finite-difference Hessians, m.
    double hessian_step = 1e-10;

private:
    double field_prefactor() const;

    TrapConfig config_;
    atom::TuneOutCalibration calibration_;
    fibermode::GuidedMode trap_mode_;
    fibermode::GuidedMode probe_mode_;
    double alpha_v_ = 0.0;
};

/// Excitation-rate coefficients in SI (s^-1 per W/m^2).
inline constexpr double kEtaScalar = 0.2446e-7;   // 0.2446 kHz cm^2 / MW
inline constexpr double kEtaVector = 2.860e-2 * 1e-7;

/// Resonant cross section 3 lambda^2 / (2 pi).
double resonant_cross_section(double wavelength);

/// (pi w/2) exp(-pi E0 / (2 hbar w)).
double landau_zener_spin_flip(double omega_t, double energy_gap);

/// One Table-I row.
struct TrapReport {
    bool ok = false;
    std::string error_stage;    // empty when ok
    std::string error_message;

    double x0 = 0.0;
    double y0 = 0.0;
    double surface_distance = 0.0;  // m
    double depth = 0.0;             // J
    double depth_temperature = 0.0; // K
    bool open_toward_surface = false;
    double omega_r = 0.0;  // rad/s
    double omega_phi = 0.0;
    double optical_depth = 0.0;
    double gamma_sf = 0.0;   // 1/s
    double gamma_exc = 0.0;  // 1/s
    double b_eff_at_minimum = 0.0;  // T

    std::map<std::string, std::string> metadata;
};

/// Input echo and numerical tolerances attached to every report.
std::map<std::string, std::string> report_metadata(const TrapConfig& config);

/// Full pipeline for one configuration. Never throws for physics failures;
/// those come back as ok = false with a stage label.
TrapReport report(const TrapConfig& config);

}  // namespace owt::trap
