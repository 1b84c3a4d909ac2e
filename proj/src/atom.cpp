#include "owt/atom.hpp"

#include <cmath>
#include <string>

#include "owt/constants.hpp"
#include "owt/errors.hpp"
#include "owt/keyvalue.hpp"
#include "owt/numerics.hpp"
#include "owt/units.hpp"

namespace owt::atom {

namespace {

constexpr double kPoleExclusion = 0.01e-9;

// Fraction of the fine-structure vector shift carried by a J = 1/2 -> J'
// line, relative to its scalar weight. D2 (J' = 3/2) pulls one way, D1
// (J' = 1/2) twice as hard the other way, so the two cancel at equal detuning.
double vector_weight(double upper_j) {
    if (std::fabs(upper_j - 1.5) < 1e-9) return 1.0;
    if (std::fabs(upper_j - 0.5) < 1e-9) return -2.0;
    throw DomainError("only J' = 1/2 and 3/2 lines are supported");
}

double line_strength(const AtomSpec& atom, const LineData& line) {
    const double scale = line.label == "D2" ? atom.d2_dipole_scale : 1.0;
    const double d = line.reduced_dipole * scale;
    return d * d;
}

void check_poles(const AtomSpec& atom, double wavelength) {
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    for (const auto& line : atom.lines) {
        if (std::fabs(wavelength - line.wavelength) < kPoleExclusion)
            throw DomainError("wavelength within 0.01 nm of the " + line.label + " line");
    }
}

bool is_integer_or_half(double v) { return std::fabs(2.0 * v - std::round(2.0 * v)) < 1e-12; }

}  // namespace

double LineData::angular_frequency() const {
    return 2.0 * constants::pi * constants::speed_of_light / wavelength;
}

double AtomSpec::lande_g(int hyperfine_f) const {
    const double F = hyperfine_f;
    const double ff = F * (F + 1.0);
    const double jj = j * (j + 1.0);
    const double ii = nuclear_spin * (nuclear_spin + 1.0);
    return g_j * (ff - ii + jj) / (2.0 * ff) + g_i * (ff + ii - jj) / (2.0 * ff);
}

void AtomSpec::validate() const {
    if (std::fabs(j - 0.5) > 1e-12) throw DomainError("ground state must have J = 1/2");
    if (!is_integer_or_half(nuclear_spin) || nuclear_spin < 0.0)
        throw DomainError("nuclear spin must be a non-negative half-integer");
    const double f_min = std::fabs(nuclear_spin - j);
    const double f_max = nuclear_spin + j;
    if (f < f_min - 1e-12 || f > f_max + 1e-12)
        throw DomainError("F = " + std::to_string(f) + " is not a ground hyperfine level");
    if (std::abs(m_f) > f) throw DomainError("|m_F| must not exceed F");
    if (!(mass > 0.0)) throw DomainError("atomic mass must be positive");
    if (lines.empty()) throw DomainError("no transition lines");
}

const LineData& AtomSpec::line(const std::string& label) const {
    for (const auto& l : lines)
        if (l.label == label) return l;
    throw DomainError("no line '" + label + "'");
}

AtomSpec cesium() {
    AtomSpec cs;
    cs.species = "Cs133";
    cs.data_version = "cs133-steck-2.2.1";
    cs.mass = 132.905451961 * constants::atomic_mass_unit;
    cs.nuclear_spin = 3.5;
    cs.n = 6;
    cs.j = 0.5;
    cs.g_j = 2.00254032;
    cs.g_i = -0.00039885395;
    cs.f = 4;
    cs.m_f = 4;
    const double ea0 = constants::elementary_charge * constants::bohr_radius;
    cs.lines = {{"D1", 894.59295986e-9, 0.5, 3.1822 * ea0},
                {"D2", 852.34727582e-9, 1.5, 4.4786 * ea0}};
    return cs;
}

namespace {

AtomSpec from_keyvalue(const KeyValueFile& kv) {
    using units::Dimension;
    const auto number = [&](const char* key) {
        const auto& e = kv.require(key);
        try {
            return units::parse_number(e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(std::string(key) + ": " + err.what(), e.line);
        }
    };
    const auto quantity = [&](const std::string& key, Dimension dim) {
        const auto& e = kv.require(key);
        try {
            return units::parse_quantity(e.value, dim);
        } catch (const ConfigError& err) {
            throw ConfigError(key + ": " + err.what(), e.line);
        }
    };

    AtomSpec atom;
    atom.data_version = kv.require("version").value;
    atom.species = kv.require("species").value;
    atom.mass = quantity("mass", Dimension::Mass);
    atom.nuclear_spin = number("nuclear_spin");
    atom.n = static_cast<int>(number("n"));
    atom.j = number("J");
    atom.g_j = number("g_J");
    atom.g_i = number("g_I");
    atom.f = static_cast<int>(number("F"));
    atom.m_f = static_cast<int>(number("m_F"));
    for (const std::string label : {"d1", "d2"}) {
        LineData line;
        line.label = label == "d1" ? "D1" : "D2";
        line.wavelength = quantity(label + ".wavelength", Dimension::Length);
        line.upper_j = number((label + ".upper_J").c_str());
        line.reduced_dipole = quantity(label + ".reduced_dipole", Dimension::DipoleMoment);
        atom.lines.push_back(line);
    }
    atom.validate();
    return atom;
}

}  // namespace

AtomSpec parse_atom_data(const std::string& text) {
    return from_keyvalue(KeyValueFile::parse_string(text));
}

AtomSpec load_atom_data(const std::string& path) { return from_keyvalue(KeyValueFile::load(path)); }

double scalar_polarizability(const AtomSpec& atom, double wavelength) {
    check_poles(atom, wavelength);
    const double omega = 2.0 * constants::pi * constants::speed_of_light / wavelength;
    double alpha = 0.0;
    for (const auto& line : atom.lines) {
        const double w0 = line.angular_frequency();
        // (2/3) |<J||d||J'>|^2 w0 / (hbar (w0^2 - w^2)), rotating + counter-rotating
        alpha += 2.0 / 3.0 * line_strength(atom, line) * w0 /
                 (constants::hbar * (w0 * w0 - omega * omega));
    }
    return alpha;
}

double vector_polarizability(const AtomSpec& atom, double wavelength, int hyperfine_f) {
    check_poles(atom, wavelength);
    const double omega = 2.0 * constants::pi * constants::speed_of_light / wavelength;
    // Electron-spin vector shift  K i(E* x E).S  with
    // K = sum_J' w_J' |d|^2 [1/(w0-w) - 1/(w0+w)] / (12 hbar).
    double k_spin = 0.0;
    for (const auto& line : atom.lines) {
        const double w0 = line.angular_frequency();
        k_spin += vector_weight(line.upper_j) * line_strength(atom, line) * 2.0 * omega /
                  (w0 * w0 - omega * omega);
    }
    k_spin /= 12.0 * constants::hbar;
    // Project S onto F and match  i alpha_v (E* x E).F / (8F).
    const double F = hyperfine_f;
    const double jj = atom.j * (atom.j + 1.0);
    const double ii = atom.nuclear_spin * (atom.nuclear_spin + 1.0);
    const double projection = (F * (F + 1.0) + jj - ii) / (2.0 * F * (F + 1.0));
    return 8.0 * F * projection * k_spin;
}

double tune_out(const AtomSpec& atom) {
    const double lo = atom.line("D2").wavelength + 2.0 * kPoleExclusion;
    const double hi = atom.line("D1").wavelength - 2.0 * kPoleExclusion;
    const auto f = [&](double lambda) { return scalar_polarizability(atom, lambda); };
    return numerics::find_root(f, numerics::Bracket::make(f, lo, hi), 1e-16);
}

TuneOutCalibration pin_tune_out(const AtomSpec& atom, double target, double tolerance) {
    TuneOutCalibration cal;
    cal.atom = atom;
    cal.tune_out_before = tune_out(atom);
    cal.tune_out_after = cal.tune_out_before;
    cal.d2_scale = atom.d2_dipole_scale;
    if (std::fabs(cal.tune_out_before - target) <= tolerance) return cal;

    // alpha_s is linear in the D2 line strength: solve for the strength that
    // cancels the rest at the target wavelength.
    AtomSpec no_d2 = atom;
    no_d2.d2_dipole_scale = 0.0;
    AtomSpec unit_d2 = atom;
    unit_d2.d2_dipole_scale = 1.0;
    const double rest = scalar_polarizability(no_d2, target);
    const double d2_part = scalar_polarizability(unit_d2, target) - rest;
    const double scale_sq = -rest / d2_part;
    if (!(scale_sq > 0.0)) throw DomainError("tune-out target not reachable by D2 rescaling");
    cal.atom.d2_dipole_scale = std::sqrt(scale_sq);
    cal.d2_scale = cal.atom.d2_dipole_scale;
    cal.tune_out_after = tune_out(cal.atom);
    cal.rescaled = true;
    return cal;
}

double zeeman_energy(const AtomSpec& atom, double field_magnitude) {
    if (!(field_magnitude >= 0.0)) throw DomainError("field magnitude must be non-negative");
    return constants::bohr_magneton * atom.lande_g() * atom.m_f * field_magnitude;
}

}  // namespace owt::atom
