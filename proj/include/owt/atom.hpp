#pragma once

#include <string>
#include <vector>

namespace owt::atom {

/// One fine-structure line out of the J = 1/2 ground state.
struct LineData {
    std::string label;            // "D1", "D2"
    double wavelength = 0.0;      // vacuum, m
    double upper_j = 0.0;         // J'
    double reduced_dipole = 0.0;  // |<J||er||J'>|, C m

    double angular_frequency() const;
};

/// Species constants plus the hyperfine Zeeman state being trapped.
struct AtomSpec {
    std::string species = "Cs133";
    std::string data_version;
    double mass = 0.0;  // kg
    double nuclear_spin = 3.5;
    int n = 6;
    double j = 0.5;
    double g_j = 2.0;
    double g_i = 0.0;
    int f = 4;
    int m_f = 4;
    std::vector<LineData> lines;
    /// Factor applied to the D2 reduced dipole element to pin the tune-out
    /// wavelength; 1 when no rescaling was needed.
    double d2_dipole_scale = 1.0;

    /// Landé factor g_F of hyperfine level F (F defaults to the trapped level).
    double lande_g() const { return lande_g(f); }
    double lande_g(int hyperfine_f) const;

    /// Throws DomainError unless |m_F| <= F, F in {|I-J|, ..., I+J} and J = 1/2.
    void validate() const;

    const LineData& line(const std::string& label) const;
};

/// Built-in cesium-133 data, identical to data/cesium.dat.
AtomSpec cesium();

/// Loads a key-value atomic data table (see data/cesium.dat).
AtomSpec load_atom_data(const std::string& path);
AtomSpec parse_atom_data(const std::string& text);

/// Scalar dynamic polarizability (C^2 m^2 / J) of the ground level, D1 + D2
/// with counter-rotating terms. Throws DomainError within 0.01 nm of a line.
double scalar_polarizability(const AtomSpec& atom, double wavelength);

/// Conventional vector polarizability of hyperfine level F (C^2 m^2 / J).
double vector_polarizability(const AtomSpec& atom, double wavelength, int hyperfine_f);

/// Zero of the scalar polarizability between the D2 and D1 lines.
double tune_out(const AtomSpec& atom);

struct TuneOutCalibration {
    AtomSpec atom;
    double tune_out_before = 0.0;
    double tune_out_after = 0.0;
    double d2_scale = 1.0;
    bool rescaled = false;
};

/// If the two-line tune-out misses `target` by more than `tolerance`,
/// rescales the D2 dipole element so the scalar polarizability vanishes at
/// `target`. Otherwise returns the atom unchanged.
TuneOutCalibration pin_tune_out(const AtomSpec& atom, double target, double tolerance);

/// mu_B g_F m_F |B| in joules (linear Zeeman regime). Throws for B < 0.
double zeeman_energy(const AtomSpec& atom, double field_magnitude);

}  // namespace owt::atom
