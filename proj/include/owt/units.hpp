#pragma once

#include <string>
#include <string_view>

namespace owt::units {

enum class Dimension {
    Length,
    Power,
    MagneticField,
    Temperature,
    Mass,
    DipoleMoment,
    VdwCoefficient,  // J m^3
    Angle,
};

/// Parses "<number> <unit>" and returns the value in SI units.
/// Throws ConfigError when the unit is missing or does not match the dimension.
double parse_quantity(std::string_view text, Dimension dim);

/// Parses a plain number with no unit. Throws ConfigError on trailing text.
double parse_number(std::string_view text);

/// Canonical unit used when writing quantities back out (e.g. "nm" for lengths).
std::string_view display_unit(Dimension dim);
/// SI value -> value in display_unit(dim).
double to_display(double si_value, Dimension dim);

std::string_view trim(std::string_view s);

}  // namespace owt::units
