#include "owt/trap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "owt/constants.hpp"
#include "owt/errors.hpp"

namespace owt::trap {

namespace nm = owt::numerics;
namespace fm = owt::fibermode;
using constants::pi;

namespace {

constexpr double kSurfaceMargin = 20e-9;      // minimizer keeps r > a + 20 nm
constexpr double kAxisScanExtent = 2000e-9;   // axis scan reaches a + 2 um
constexpr double kAxisScanStep = 1e-9;
constexpr double kBarrierStart = 0.5e-9;      // inward barrier search starts at a + 0.5 nm
constexpr double kBarrierStep = 0.1e-9;
constexpr int kAzimuthSamples = 3600;
constexpr double kGoldenTol = 1e-13;          // m
constexpr double kTuneOutTarget = 880.25e-9;
constexpr double kTuneOutTolerance = 0.5e-9;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

void TrapConfig::validate() const {
    fiber.validate();
    atom.validate();
    if (!(power >= 0.0) || !std::isfinite(power)) throw DomainError("trap power must be >= 0");
    if (!(c3 > 0.0)) throw DomainError("C3 must be positive");
    if (handedness != 1 && handedness != -1) throw DomainError("handedness must be +1 or -1");
    for (double b : external_field)
        if (!std::isfinite(b)) throw DomainError("external field must be finite");
    if (!(probe_wavelength > 0.0)) throw DomainError("probe wavelength must be positive");
    const double d2 = atom.line("D2").wavelength;
    const double d1 = atom.line("D1").wavelength;
    if (!(trap_wavelength > d2 && trap_wavelength < d1))
        throw DomainError("trap wavelength must lie between the D2 and D1 lines");
    // Pole exclusion is enforced by the polarizability itself.
    atom::vector_polarizability(atom, trap_wavelength, atom.f);
}

BField BField::from_cylindrical(double phi, const Vec3& cyl) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {phi, cyl, {cyl[0] * c - cyl[1] * s, cyl[0] * s + cyl[1] * c, cyl[2]}};
}

BField BField::from_cartesian(double phi, const Vec3& cart) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {phi, {cart[0] * c + cart[1] * s, -cart[0] * s + cart[1] * c, cart[2]}, cart};
}

double BField::magnitude() const { return norm3(cartesian); }

namespace {

double prefactor(const atom::AtomSpec& atom, double alpha_v) {
    return alpha_v / (8.0 * constants::bohr_magneton * atom.lande_g() * atom.f);
}

}  // namespace

BField fictitious_field(const fm::FieldEnvelope& env, const atom::AtomSpec& atom,
                        double wavelength) {
    const double pre = prefactor(atom, atom::vector_polarizability(atom, wavelength, atom.f));
    const auto spin = fm::spin_density(env);
    return BField::from_cylindrical(env.position.phi, {pre * spin[0], pre * spin[1], pre * spin[2]});
}

BField fictitious_field_components(const fm::FieldEnvelope& env, const atom::AtomSpec& atom,
                                   double wavelength) {
    const double pre = 2.0 * prefactor(atom, atom::vector_polarizability(atom, wavelength, atom.f));
    const auto& [er, ephi, ez] = env.components;
    return BField::from_cylindrical(env.position.phi, {0.0, pre * std::imag(ez * std::conj(er)),
                                                       pre * std::imag(er * std::conj(ephi))});
}

OpticalWireTrap::OpticalWireTrap(TrapConfig config) : config_(std::move(config)) {
    config_.validate();
    calibration_ = atom::pin_tune_out(config_.atom, kTuneOutTarget, kTuneOutTolerance);
    config_.atom = calibration_.atom;
    trap_mode_ = fm::normalize_to_power(fm::solve_dispersion(config_.fiber, config_.trap_wavelength),
                                        config_.power);
    probe_mode_ =
        fm::normalize_to_power(fm::solve_dispersion(config_.fiber, config_.probe_wavelength), 1e-3);
    alpha_v_ = atom::vector_polarizability(config_.atom, config_.trap_wavelength, config_.atom.f);
}

double OpticalWireTrap::field_prefactor() const { return prefactor(config_.atom, alpha_v_); }

fm::FieldEnvelope OpticalWireTrap::trap_envelope(const Position& p) const {
    return fm::envelope_quasi_circular(trap_mode_, config_.handedness, p);
}

RadialField OpticalWireTrap::radial_field(double r) const {
    if (trap_mode_.amplitude == 0.0) return {};
    // At r = a the radial component jumps; report the vacuum-side limit.
    const double a = config_.fiber.radius;
    const fm::Profile p = r == a ? fm::profile_outside(trap_mode_, std::nextafter(a, 2.0 * a))
                                 : fm::profile(trap_mode_, r);
    const auto& [er, ephi, ez] = p.e;
    const auto& [der, dephi, dez] = p.de_dr;
    // B_phi = 2 pre A^2 Im(e_z e_r*), B_z = 2 pre A^2 f Im(e_r e_phi*)
    const double A = trap_mode_.amplitude;
    const double scale = 2.0 * field_prefactor() * A * A;
    const double f = config_.handedness;
    RadialField out;
    out.b_phi = scale * std::imag(ez * std::conj(er));
    out.b_z = scale * f * std::imag(er * std::conj(ephi));
    out.db_phi = scale * std::imag(dez * std::conj(er) + ez * std::conj(der));
    out.db_z = scale * f * std::imag(der * std::conj(ephi) + er * std::conj(dephi));
    return out;
}

BField OpticalWireTrap::fictitious_field(const Position& p) const {
    const RadialField rf = radial_field(p.r);
    return BField::from_cylindrical(p.phi, {0.0, rf.b_phi, rf.b_z});
}

BField OpticalWireTrap::effective_field(const Position& p) const {
    const BField fict = fictitious_field(p);
    const auto& ext = config_.external_field;
    return BField::from_cartesian(p.phi, {fict.cartesian[0] + ext[0], fict.cartesian[1] + ext[1],
                                          fict.cartesian[2] + ext[2]});
}

double OpticalWireTrap::potential(const Position& p) const {
    return potential(p, config_.include_vdw);
}

double OpticalWireTrap::potential(const Position& p, bool include_vdw) const {
    const double a = config_.fiber.radius;
    if (!(p.r > a)) throw DomainError("potential requires r > a");
    double u = atom::zeeman_energy(config_.atom, effective_field(p).magnitude());
    if (include_vdw) {
        const double d = p.r - a;
        u -= config_.c3 / (d * d * d);
    }
    return u;
}

double OpticalWireTrap::potential_xy(double x, double y) const {
    return potential({std::hypot(x, y), std::atan2(y, x), 0.0});
}

double OpticalWireTrap::asymptote() const {
    return atom::zeeman_energy(config_.atom, norm3(config_.external_field));
}

double OpticalWireTrap::potential_relative(const Position& p) const {
    return potential(p) - asymptote();
}

double OpticalWireTrap::radial_minimum_condition(double phi, double r) const {
    if (!(r > config_.fiber.radius)) throw DomainError("radial condition requires r > a");
    const RadialField rf = radial_field(r);
    const auto& ext = config_.external_field;
    const double ext_phi = -ext[0] * std::sin(phi) + ext[1] * std::cos(phi);
    return (rf.b_phi + ext_phi) * rf.db_phi + (rf.b_z + ext[2]) * rf.db_z;
}

double OpticalWireTrap::solve_radial_minimum_condition(double phi) const {
    const double a = config_.fiber.radius;
    const auto g = [&](double r) { return radial_minimum_condition(phi, r); };
    // First sign change from negative to positive walking outward.
    double r_prev = a + kSurfaceMargin;
    double g_prev = g(r_prev);
    for (double step = 1; step * kAxisScanStep <= kAxisScanExtent; ++step) {
        const double r = a + kSurfaceMargin + step * kAxisScanStep;
        const double gr = g(r);
        if (g_prev < 0.0 && gr >= 0.0)
            return nm::find_root(g, nm::Bracket{r_prev, r, g_prev, gr}, 1e-15);
        r_prev = r;
        g_prev = gr;
    }
    throw NoMinimumError("radial minimum condition has no root along the ray");
}

double OpticalWireTrap::trap_axis() const {
    const auto& ext = config_.external_field;
    const double transverse = std::hypot(ext[0], ext[1]);
    if (transverse == 0.0) throw NoMinimumError("no transverse bias field");
    const double b_phi = radial_field(1.5 * config_.fiber.radius).b_phi;
    if (b_phi == 0.0) throw NoMinimumError("no azimuthal fictitious field (zero trap power)");
    const double theta = std::atan2(ext[1], ext[0]);
    double axis = theta + std::copysign(pi / 2.0, b_phi);
    if (axis > pi) axis -= 2.0 * pi;
    if (axis <= -pi) axis += 2.0 * pi;
    return axis;
}

TrapMinimum OpticalWireTrap::find_minimum() const {
    const double a = config_.fiber.radius;
    const double phi = trap_axis();
    const double ux = std::cos(phi);
    const double uy = std::sin(phi);
    const auto along = [&](double r) { return potential({r, phi, 0.0}); };

    // The global minimum is the vdW wall, so look for interior local minima.
    const int n = static_cast<int>(std::lround(kAxisScanExtent / kAxisScanStep));
    std::vector<double> rs(n + 1);
    std::vector<double> us(n + 1);
    for (int i = 0; i <= n; ++i) {
        rs[i] = a + kSurfaceMargin + i * kAxisScanStep;
        us[i] = along(rs[i]);
    }
    int best = -1;
    for (int i = 1; i < n; ++i) {
        if (us[i] < us[i - 1] && us[i] <= us[i + 1] && (best < 0 || us[i] < us[best])) best = i;
    }
    if (best < 0) throw NoMinimumError("potential has no local minimum beyond a + 20 nm");

    double r0 = nm::minimize_golden(along, rs[best - 1], rs[best + 1], kGoldenTol).x;
    double t0 = 0.0;
    // Off-axis polish; the configuration is usually mirror-symmetric about the
    // axis, so moves are accepted only if they strictly lower U.
    const auto at = [&](double r, double t) {
        return potential_xy(r * ux - t * uy, r * uy + t * ux);
    };
    for (int iter = 0; iter < 4; ++iter) {
        const auto perp = nm::minimize_golden([&](double t) { return at(r0, t); }, t0 - 1e-9,
                                              t0 + 1e-9, kGoldenTol);
        if (!(perp.value < at(r0, t0))) break;
        t0 = perp.x;
        const auto rad = nm::minimize_golden([&](double r) { return at(r, t0); }, r0 - 1e-9,
                                             r0 + 1e-9, kGoldenTol);
        if (rad.value < at(r0, t0)) r0 = rad.x;
    }

    TrapMinimum m;
    m.x = r0 * ux - t0 * uy;
    m.y = r0 * uy + t0 * ux;
    m.r = std::hypot(m.x, m.y);
    m.phi = t0 == 0.0 ? phi : std::atan2(m.y, m.x);
    if (t0 == 0.0) m.r = r0;
    m.potential = potential({m.r, m.phi, 0.0});
    if (!(m.r > a + kSurfaceMargin)) throw NoMinimumError("minimum collapsed onto the surface margin");
    m.hessian = nm::hessian_fd([this](double x, double y) { return potential_xy(x, y); },
                               {m.x, m.y}, hessian_step);
    if (!m.hessian.positive_definite())
        throw SaddlePointError("stationary point at r = " + fmt(m.r) + " m is not a minimum");
    return m;
}

TrapDepth OpticalWireTrap::trap_depth(const TrapMinimum& m) const {
    const double a = config_.fiber.radius;
    TrapDepth d;
    d.asymptote = asymptote();

    const auto along = [&](double r) { return potential({r, m.phi, 0.0}); };
    const double r_lo = a + kBarrierStart;
    const int n = static_cast<int>((m.r - r_lo) / kBarrierStep);
    int best = 0;
    double best_u = along(r_lo);
    for (int i = 1; i <= n; ++i) {
        const double u = along(r_lo + i * kBarrierStep);
        if (u > best_u) {
            best_u = u;
            best = i;
        }
    }
    d.inward_barrier = best_u;
    d.inward_barrier_r = r_lo + best * kBarrierStep;
    if (best > 0 && best < n) {
        const auto peak = nm::maximize_golden(along, r_lo + (best - 1) * kBarrierStep,
                                              r_lo + (best + 1) * kBarrierStep, kGoldenTol);
        if (peak.value > d.inward_barrier) {
            d.inward_barrier = peak.value;
            d.inward_barrier_r = peak.x;
        }
    }

    const auto around = [&](double phi) { return potential({m.r, phi, 0.0}); };
    const double dphi = 2.0 * pi / kAzimuthSamples;
    int best_k = 0;
    double best_a = around(m.phi);
    for (int k = 1; k < kAzimuthSamples; ++k) {
        const double u = around(m.phi + k * dphi);
        if (u > best_a) {
            best_a = u;
            best_k = k;
        }
    }
    const auto peak = nm::maximize_golden(around, m.phi + (best_k - 1) * dphi,
                                          m.phi + (best_k + 1) * dphi, 1e-12);
    d.azimuthal_barrier = std::max(best_a, peak.value);

    double escape = d.asymptote;
    d.limiting = EscapeChannel::Asymptote;
    if (d.inward_barrier < escape) {
        escape = d.inward_barrier;
        d.limiting = EscapeChannel::InwardBarrier;
    }
    if (d.azimuthal_barrier < escape) {
        escape = d.azimuthal_barrier;
        d.limiting = EscapeChannel::AzimuthalBarrier;
    }
    d.open_toward_surface = d.inward_barrier < d.asymptote;
    d.depth = escape - m.potential;
    return d;
}

TrapFrequencies OpticalWireTrap::trap_frequencies(const TrapMinimum& m) const {
    const auto eig = m.hessian.eigen();
    if (!(eig.values[0] > 0.0)) throw SaddlePointError("Hessian has a non-positive eigenvalue");
    const double mass = config_.atom.mass;
    const double w0 = std::sqrt(eig.values[0] / mass);
    const double w1 = std::sqrt(eig.values[1] / mass);
    const double cx = std::cos(m.phi);
    const double cy = std::sin(m.phi);
    const auto radial_overlap = [&](int i) {
        return std::fabs(eig.vectors[i][0] * cx + eig.vectors[i][1] * cy);
    };
    if (radial_overlap(1) >= radial_overlap(0)) return {w1, w0};
    return {w0, w1};
}

double OpticalWireTrap::spin_flip_rate(const TrapMinimum& m, const TrapFrequencies& w) const {
    const double omega_t = std::max(w.radial, w.azimuthal);
    const double gap = constants::bohr_magneton * std::fabs(config_.atom.lande_g()) *
                       effective_field({m.r, m.phi, 0.0}).magnitude();
    return landau_zener_spin_flip(omega_t, gap);
}

double OpticalWireTrap::ellipticity(const Position& p) const {
    if (trap_mode_.amplitude == 0.0) return 0.0;
    const auto env = trap_envelope(p);
    const auto spin = fm::spin_density(env);
    double e2 = 0.0;
    for (const auto& c : env.components) e2 += std::norm(c);
    if (e2 == 0.0) return 0.0;
    const double mag = std::sqrt(spin[0] * spin[0] + spin[1] * spin[1] + spin[2] * spin[2]);
    return std::copysign(mag / e2, spin[2]);
}

double OpticalWireTrap::excitation_rate(const TrapMinimum& m) const {
    if (trap_mode_.amplitude == 0.0) return 0.0;
    const Position p{m.r, m.phi, 0.0};
    const double I = fm::intensity(trap_envelope(p));
    const auto& at = config_.atom;
    const long exponent = std::lround(at.f - at.nuclear_spin + 0.5);
    const double sign = exponent % 2 == 0 ? 1.0 : -1.0;
    return I * (kEtaScalar + sign * at.m_f * ellipticity(p) * kEtaVector);
}

double OpticalWireTrap::optical_depth_per_atom(const TrapMinimum& m) const {
    const double area = fm::effective_area(probe_mode_, {m.r, m.phi, 0.0});
    return resonant_cross_section(config_.probe_wavelength) / area;
}

double resonant_cross_section(double wavelength) {
    return 3.0 * wavelength * wavelength / (2.0 * pi);
}

double landau_zener_spin_flip(double omega_t, double energy_gap) {
    if (!(omega_t > 0.0)) throw DomainError("trap frequency must be positive");
    if (!(energy_gap >= 0.0)) throw DomainError("energy gap must be non-negative");
    return pi * omega_t / 2.0 * std::exp(-pi * energy_gap / (2.0 * constants::hbar * omega_t));
}

std::map<std::string, std::string> report_metadata(const TrapConfig& c) {
    std::map<std::string, std::string> md;
    md["fiber.radius_m"] = fmt(c.fiber.radius);
    md["fiber.core_index"] = fmt(c.fiber.core_index);
    md["fiber.cladding_index"] = fmt(c.fiber.cladding_index);
    md["trap_wavelength_m"] = fmt(c.trap_wavelength);
    md["power_W"] = fmt(c.power);
    md["handedness"] = std::to_string(c.handedness);
    md["external_field_T"] =
        fmt(c.external_field[0]) + " " + fmt(c.external_field[1]) + " " + fmt(c.external_field[2]);
    md["c3_Jm3"] = fmt(c.c3);
    md["c3_correction"] = "printed exponent +49 replaced by -49";
    md["probe_wavelength_m"] = fmt(c.probe_wavelength);
    md["include_vdw"] = c.include_vdw ? "true" : "false";
    md["atom.species"] = c.atom.species;
    md["atom.data_version"] = c.atom.data_version;
    md["atom.F"] = std::to_string(c.atom.f);
    md["atom.m_F"] = std::to_string(c.atom.m_f);
    md["tol.dispersion_root_neff"] = "1e-15";
    md["tol.minimum_position_m"] = fmt(kGoldenTol);
    md["tol.hessian_step_m"] = "1e-10";
    md["tol.barrier_grid_m"] = fmt(kBarrierStep);
    return md;
}

TrapReport report(const TrapConfig& config) {
    TrapReport rep;
    rep.metadata = report_metadata(config);
    std::string stage = "config";
    try {
        stage = "config";
        config.validate();
        stage = "mode";
        const OpticalWireTrap trap(config);
        const auto& cal = trap.tune_out_calibration();
        rep.metadata["tune_out_m"] = fmt(cal.tune_out_after);
        rep.metadata["tune_out_rescaled"] = cal.rescaled ? "true" : "false";
        if (cal.rescaled) {
            rep.metadata["tune_out_before_m"] = fmt(cal.tune_out_before);
            rep.metadata["d2_dipole_scale"] = fmt(cal.d2_scale);
        }
        stage = "minimum";
        const TrapMinimum m = trap.find_minimum();
        rep.x0 = m.x;
        rep.y0 = m.y;
        rep.surface_distance = m.r - config.fiber.radius;
        rep.b_eff_at_minimum = trap.effective_field({m.r, m.phi, 0.0}).magnitude();
        stage = "depth";
        const TrapDepth d = trap.trap_depth(m);
        rep.depth = d.depth;
        rep.depth_temperature = d.depth / constants::boltzmann;
        rep.open_toward_surface = d.open_toward_surface;
        stage = "frequencies";
        const TrapFrequencies w = trap.trap_frequencies(m);
        rep.omega_r = w.radial;
        rep.omega_phi = w.azimuthal;
        stage = "rates";
        rep.gamma_sf = trap.spin_flip_rate(m, w);
        rep.gamma_exc = trap.excitation_rate(m);
        stage = "optical_depth";
        rep.optical_depth = trap.optical_depth_per_atom(m);
        rep.ok = true;
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error_stage = stage;
        rep.error_message = e.what();
    }
    return rep;
}

}  // namespace owt::trap
