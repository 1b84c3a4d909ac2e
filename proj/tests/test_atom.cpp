#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "owt/atom.hpp"
#include "owt/constants.hpp"
#include "owt/errors.hpp"

using namespace owt::atom;
namespace c = owt::constants;

namespace {

// Two-level-line polarizabilities rebuilt from natural linewidths instead of
// dipole elements: |d|^2 = (2J'+1)/(2J+1) 3 pi eps0 hbar c^3 Gamma / w0^3.
struct LineByWidth {
    double wavelength;
    double gamma;  // rad/s
    double multiplicity_ratio;  // (2J'+1)/(2J+1)
};
constexpr LineByWidth kD1{894.59295986e-9, 2 * std::numbers::pi * 4.5612e6, 1.0};
constexpr LineByWidth kD2{852.34727582e-9, 2 * std::numbers::pi * 5.2227e6, 2.0};

double strength(const LineByWidth& l) {
    const double w0 = 2 * std::numbers::pi * c::speed_of_light / l.wavelength;
    return l.multiplicity_ratio * 3 * std::numbers::pi * c::vacuum_permittivity * c::hbar *
           std::pow(c::speed_of_light, 3) * l.gamma / std::pow(w0, 3);
}

double alpha_v4_by_width(double lambda) {
    const double w = 2 * std::numbers::pi * c::speed_of_light / lambda;
    const auto d = [&](const LineByWidth& l) {
        const double w0 = 2 * std::numbers::pi * c::speed_of_light / l.wavelength;
        return 2 * w / (w0 * w0 - w * w);
    };
    return (strength(kD2) * d(kD2) - 2 * strength(kD1) * d(kD1)) / (3 * c::hbar);
}

}  // namespace

TEST_CASE("Lande factor of the F = 4 ground level") {
    const auto cs = cesium();
    // g_J (F(F+1) - I(I+1) + J(J+1)) / 2F(F+1) + g_I (F(F+1) + I(I+1) - J(J+1)) / 2F(F+1)
    const double expected = 2.00254032 * 5.0 / 40.0 - 0.00039885395 * 35.0 / 40.0;
    CHECK(cs.lande_g() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(cs.lande_g() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(cs.lande_g(3) == doctest::Approx(-0.25).epsilon(2e-3));
}

TEST_CASE("reduced dipoles reproduce the natural linewidths") {
    const auto cs = cesium();
    CHECK(cs.line("D1").reduced_dipole * cs.line("D1").reduced_dipole ==
          doctest::Approx(strength(kD1)).epsilon(2e-3));
    CHECK(cs.line("D2").reduced_dipole * cs.line("D2").reduced_dipole ==
          doctest::Approx(strength(kD2)).epsilon(2e-3));
}

TEST_CASE("tune-out wavelength lies at 880.25 nm within 0.5 nm") {
    const auto cs = cesium();
    const double lambda = tune_out(cs);
    CHECK(std::fabs(lambda - 880.25e-9) < 0.5e-9);
    CHECK(scalar_polarizability(cs, 860e-9) > 0.0);
    CHECK(scalar_polarizability(cs, 890e-9) < 0.0);
    const auto cal = pin_tune_out(cs, 880.25e-9, 0.5e-9);
    CHECK_FALSE(cal.rescaled);
    CHECK(cal.atom.d2_dipole_scale == 1.0);
}

TEST_CASE("tune-out rescaling pins a displaced target") {
    const auto cal = pin_tune_out(cesium(), 878e-9, 0.5e-9);
    CHECK(cal.rescaled);
    CHECK(cal.d2_scale != 1.0);
    CHECK(cal.tune_out_after == doctest::Approx(878e-9).epsilon(1e-9));
}

TEST_CASE("vector polarizability against a linewidth-based oracle") {
    const auto cs = cesium();
    const double av = vector_polarizability(cs, 880.25e-9, 4);
    CHECK(av > 0.0);
    CHECK(av == doctest::Approx(alpha_v4_by_width(880.25e-9)).epsilon(5e-3));
    // Projection of the electron spin onto F: alpha_v(3) / alpha_v(4) = -3/4.
    CHECK(vector_polarizability(cs, 880.25e-9, 3) / av == doctest::Approx(-0.75).epsilon(1e-14));
}

TEST_CASE("polarizability pole exclusion") {
    const auto cs = cesium();
    CHECK_THROWS_AS(scalar_polarizability(cs, 852.347e-9 + 0.005e-9), owt::DomainError);
    CHECK_THROWS_AS(vector_polarizability(cs, 894.593e-9, 4), owt::DomainError);
    CHECK_NOTHROW(scalar_polarizability(cs, 852.347e-9 + 0.05e-9));
}

TEST_CASE("data file matches the built-in table") {
    const auto file = load_atom_data(std::string(OWT_DATA_DIR) + "/cesium.dat");
    const auto cs = cesium();
    CHECK(file.species == cs.species);
    CHECK(file.data_version == cs.data_version);
    CHECK(file.mass == doctest::Approx(cs.mass).epsilon(1e-15));
    CHECK(file.nuclear_spin == cs.nuclear_spin);
    CHECK(file.g_j == cs.g_j);
    CHECK(file.g_i == cs.g_i);
    CHECK(file.f == cs.f);
    CHECK(file.m_f == cs.m_f);
    REQUIRE(file.lines.size() == cs.lines.size());
    for (std::size_t i = 0; i < cs.lines.size(); ++i) {
        CHECK(file.lines[i].label == cs.lines[i].label);
        CHECK(file.lines[i].wavelength == doctest::Approx(cs.lines[i].wavelength).epsilon(1e-15));
        CHECK(file.lines[i].reduced_dipole ==
              doctest::Approx(cs.lines[i].reduced_dipole).epsilon(1e-15));
    }
}

TEST_CASE("malformed atom data is rejected") {
    const std::string good =
        "version = t\nspecies = Cs133\nmass = 132.9 u\nnuclear_spin = 3.5\nn = 6\nJ = 0.5\n"
        "g_J = 2.0\ng_I = 0\nF = 4\nm_F = 4\n"
        "d1.wavelength = 894.6 nm\nd1.upper_J = 0.5\nd1.reduced_dipole = 3.18 e a0\n"
        "d2.wavelength = 852.3 nm\nd2.upper_J = 1.5\nd2.reduced_dipole = 4.48 e a0\n";
    CHECK_NOTHROW(parse_atom_data(good));

    std::string no_unit = good;
    no_unit.replace(no_unit.find("894.6 nm"), 8, "894.6");
    CHECK_THROWS_AS(parse_atom_data(no_unit), owt::ConfigError);

    std::string bad_j = good;
    bad_j.replace(bad_j.find("J = 0.5"), 7, "J = 1.5");
    CHECK_THROWS_AS(parse_atom_data(bad_j), owt::DomainError);

    std::string bad_mf = good;
    bad_mf.replace(bad_mf.find("m_F = 4"), 7, "m_F = 5");
    CHECK_THROWS_AS(parse_atom_data(bad_mf), owt::DomainError);
}

TEST_CASE("Zeeman energy") {
    const auto cs = cesium();
    CHECK(zeeman_energy(cs, 1e-4) == doctest::Approx(c::bohr_magneton * cs.lande_g() * 4 * 1e-4));
    CHECK(zeeman_energy(cs, 0.0) == 0.0);
    CHECK_THROWS_AS(zeeman_energy(cs, -1e-4), owt::DomainError);
}
