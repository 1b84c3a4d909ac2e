#include "owt/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "owt/constants.hpp"
#include "owt/errors.hpp"

namespace owt::units {

namespace {

struct UnitEntry {
    std::string_view symbol;
    Dimension dim;
    double scale;
};

constexpr double kElectronBohr = constants::elementary_charge * constants::bohr_radius;

constexpr std::array kUnits = {
    UnitEntry{"m", Dimension::Length, 1.0},
    UnitEntry{"mm", Dimension::Length, 1e-3},
    UnitEntry{"um", Dimension::Length, 1e-6},
    UnitEntry{"μm", Dimension::Length, 1e-6},
    UnitEntry{"nm", Dimension::Length, 1e-9},
    UnitEntry{"W", Dimension::Power, 1.0},
    UnitEntry{"mW", Dimension::Power, 1e-3},
    UnitEntry{"uW", Dimension::Power, 1e-6},
    UnitEntry{"μW", Dimension::Power, 1e-6},
    UnitEntry{"T", Dimension::MagneticField, 1.0},
    UnitEntry{"mT", Dimension::MagneticField, 1e-3},
    UnitEntry{"G", Dimension::MagneticField, 1e-4},
    UnitEntry{"mG", Dimension::MagneticField, 1e-7},
    UnitEntry{"K", Dimension::Temperature, 1.0},
    UnitEntry{"mK", Dimension::Temperature, 1e-3},
    UnitEntry{"uK", Dimension::Temperature, 1e-6},
    UnitEntry{"μK", Dimension::Temperature, 1e-6},
    UnitEntry{"kg", Dimension::Mass, 1.0},
    UnitEntry{"u", Dimension::Mass, constants::atomic_mass_unit},
    UnitEntry{"C m", Dimension::DipoleMoment, 1.0},
    UnitEntry{"e a0", Dimension::DipoleMoment, kElectronBohr},
    UnitEntry{"J m^3", Dimension::VdwCoefficient, 1.0},
    UnitEntry{"rad", Dimension::Angle, 1.0},
    UnitEntry{"deg", Dimension::Angle, constants::pi / 180.0},
};

const char* dimension_name(Dimension dim) {
    switch (dim) {
    case Dimension::Length: return "length";
    case Dimension::Power: return "power";
    case Dimension::MagneticField: return "magnetic field";
    case Dimension::Temperature: return "temperature";
    case Dimension::Mass: return "mass";
    case Dimension::DipoleMoment: return "dipole moment";
    case Dimension::VdwCoefficient: return "van der Waals coefficient";
    case Dimension::Angle: return "angle";
    }
    return "?";
}

// Collapses runs of whitespace to a single space.
std::string normalize_unit(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

// Decimal prefixes shift the exponent of the literal instead of multiplying,
// so "880.25 nm" parses to the same double as 880.25e-9.
double apply_scale(std::string_view literal, double value, double scale) {
    const long shift = std::lround(std::log10(scale));
    if (std::fabs(scale / std::pow(10.0, shift) - 1.0) > 1e-12) return value * scale;
    long exponent = 0;
    std::string_view mantissa = literal;
    if (const auto e = literal.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = literal.substr(0, e);
        std::string_view exp_text = literal.substr(e + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    }
    const std::string shifted = std::string(mantissa) + "e" + std::to_string(exponent + shift);
    double out = 0.0;
    std::from_chars(shifted.data(), shifted.data() + shifted.size(), out);
    return out;
}

}  // namespace

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("expected a number, got '" + std::string(text) + "'");
    if (!std::isfinite(value)) throw ConfigError("non-finite number '" + std::string(text) + "'");
    return value;
}

double parse_quantity(std::string_view text, Dimension dim) {
    text = trim(text);
    // std::from_chars rejects a leading '+'.
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr == digits.data())
        throw ConfigError("expected '<number> <unit>', got '" + std::string(text) + "'");
    const std::string unit = normalize_unit(std::string_view(ptr, digits.data() + digits.size() - ptr));
    if (unit.empty())
        throw ConfigError("missing " + std::string(dimension_name(dim)) + " unit in '" +
                          std::string(text) + "'");
    for (const auto& entry : kUnits) {
        if (entry.symbol == unit) {
            if (entry.dim != dim)
                throw ConfigError("unit '" + unit + "' is not a " + dimension_name(dim) + " unit");
            return apply_scale(std::string_view(digits.data(), ptr - digits.data()), value,
                               entry.scale);
        }
    }
    throw ConfigError("unknown unit '" + unit + "'");
}

std::string_view display_unit(Dimension dim) {
    switch (dim) {
    case Dimension::Length: return "nm";
    case Dimension::Power: return "mW";
    case Dimension::MagneticField: return "G";
    case Dimension::Temperature: return "uK";
    case Dimension::Mass: return "kg";
    case Dimension::DipoleMoment: return "C m";
    case Dimension::VdwCoefficient: return "J m^3";
    case Dimension::Angle: return "rad";
    }
    return "";
}

double to_display(double si_value, Dimension dim) {
    const auto unit = display_unit(dim);
    for (const auto& entry : kUnits)
        if (entry.symbol == unit && entry.dim == dim) return si_value / entry.scale;
    return si_value;
}

}  // namespace owt::units
