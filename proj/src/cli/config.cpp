#include "owt/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "owt/errors.hpp"
#include "owt/units.hpp"

namespace owt::cli {

using units::Dimension;

namespace {

constexpr std::pair<Axis, const char*> kAxisNames[] = {
    {Axis::PosX, "+x"}, {Axis::NegX, "-x"}, {Axis::PosY, "+y"},
    {Axis::NegY, "-y"}, {Axis::PosZ, "+z"}, {Axis::NegZ, "-z"},
};

const char* axis_name(Axis a) {
    for (const auto& [axis, name] : kAxisNames)
        if (axis == a) return name;
    return "?";
}

Axis parse_axis(std::string_view text) {
    text = units::trim(text);
    for (const auto& [axis, name] : kAxisNames)
        if (text == name) return axis;
    if (text == "x") return Axis::PosX;
    if (text == "y") return Axis::PosY;
    if (text == "z") return Axis::PosZ;
    throw ConfigError("unknown direction '" + std::string(text) + "' (use +x, -x, +y, -y, +z, -z)");
}

std::string quantity(double si, Dimension dim) {
    return format_number(units::to_display(si, dim)) + " " + std::string(units::display_unit(dim));
}

DirectedField parse_directed(std::string_view text) {
    const auto at = text.find('@');
    if (at == std::string_view::npos)
        throw ConfigError("expected '<value> <unit> @ <direction>', got '" + std::string(text) + "'");
    DirectedField f;
    f.magnitude = units::parse_quantity(text.substr(0, at), Dimension::MagneticField);
    f.axis = parse_axis(text.substr(at + 1));
    if (f.magnitude < 0.0) throw ConfigError("field magnitude must be non-negative");
    return f;
}

std::string emit_directed(const DirectedField& f) {
    return quantity(f.magnitude, Dimension::MagneticField) + " @ " + axis_name(f.axis);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(units::trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// "<start> .. <stop> step <d>" or "<start> .. <stop> points <n>"; start and
// stop carry units when dim is given.
Range parse_range(std::string_view text, std::optional<Dimension> dim) {
    const auto value = [&](std::string_view s) {
        return dim ? units::parse_quantity(s, *dim) : units::parse_number(s);
    };
    const auto dots = text.find("..");
    if (dots == std::string_view::npos)
        throw ConfigError("expected '<start> .. <stop> step <d>' or '... points <n>'");
    const std::string_view rest = text.substr(dots + 2);
    const auto step_pos = rest.find(" step ");
    const auto points_pos = rest.find(" points ");
    Range r;
    r.start = value(text.substr(0, dots));
    if (points_pos != std::string_view::npos) {
        r.stop = value(rest.substr(0, points_pos));
        const double n = units::parse_number(rest.substr(points_pos + 8));
        if (n < 1.0 || n != std::floor(n) || n > 1e8)
            throw ConfigError("points must be a positive integer");
        r.points = static_cast<int>(n);
    } else if (step_pos != std::string_view::npos) {
        r.stop = value(rest.substr(0, step_pos));
        const double step = value(rest.substr(step_pos + 6));
        if (!(step > 0.0)) throw ConfigError("range step must be positive");
        const double n = std::floor((r.stop - r.start) / step * (1.0 + 1e-12) + 1e-9);
        if (n > 1e8) throw ConfigError("range has too many points");
        r.points = static_cast<int>(n) + 1;
        r.stop = r.start + (r.points - 1) * step;
    } else {
        throw ConfigError("range needs 'step <d>' or 'points <n>'");
    }
    if (!(r.stop >= r.start)) throw ConfigError("range is empty (stop < start)");
    if (r.points > 1 && r.stop == r.start) throw ConfigError("range is empty");
    return r;
}

std::string emit_range(const Range& r, std::optional<Dimension> dim) {
    const auto value = [&](double v) { return dim ? quantity(v, *dim) : format_number(v); };
    return value(r.start) + " .. " + value(r.stop) + " points " + std::to_string(r.points);
}

// "bias 10 G .. 34 G step 3 G", "bias 16 G, 22 G", "kappa 0.5 .. 3 step 0.5".
Sweep parse_sweep(std::string_view text) {
    text = units::trim(text);
    Sweep s;
    std::optional<Dimension> dim;
    if (text.starts_with("bias ")) {
        s.kind = SweepKind::Bias;
        dim = Dimension::MagneticField;
        text.remove_prefix(5);
    } else if (text.starts_with("kappa ")) {
        s.kind = SweepKind::Kappa;
        text.remove_prefix(6);
    } else {
        throw ConfigError("sweep must start with 'bias' or 'kappa'");
    }
    if (text.find("..") != std::string_view::npos) {
        const Range r = parse_range(text, dim);
        for (int i = 0; i < r.points; ++i) s.values.push_back(r.at(i));
    } else {
        for (const auto& item : split(text, ','))
            s.values.push_back(dim ? units::parse_quantity(item, *dim) : units::parse_number(item));
    }
    for (double v : s.values)
        if (!(v >= 0.0)) throw ConfigError("sweep values must be non-negative");
    return s;
}

std::string emit_sweep(const Sweep& s) {
    std::string out = s.kind == SweepKind::Bias ? "bias " : "kappa ";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) out += ", ";
        out += s.kind == SweepKind::Bias ? quantity(s.values[i], Dimension::MagneticField)
                                         : format_number(s.values[i]);
    }
    return out;
}

bool parse_bool(std::string_view text) {
    text = units::trim(text);
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    throw ConfigError("expected true or false, got '" + std::string(text) + "'");
}

int parse_int(std::string_view text) {
    text = units::trim(text);
    if (text.starts_with('+')) text.remove_prefix(1);
    const double v = units::parse_number(text);
    if (v != std::floor(v) || std::fabs(v) > 1e6)
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    return static_cast<int>(v);
}

void apply_row_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    // row.<label>.<field>
    const auto dot = key.find('.', 4);
    if (dot == std::string::npos) throw ConfigError("malformed row key '" + key + "'");
    const std::string label = key.substr(4, dot - 4);
    const std::string field = key.substr(dot + 1);
    if (label.empty()) throw ConfigError("malformed row key '" + key + "'");
    RowOverride& row = cfg.rows[label];
    if (field == "power")
        row.power = units::parse_quantity(value, Dimension::Power);
    else if (field == "bias")
        row.bias = parse_directed(value);
    else if (field == "offset")
        row.offset = parse_directed(value);
    else
        throw ConfigError("unknown row field '" + field + "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "radius")
        cfg.fiber.radius = units::parse_quantity(value, Dimension::Length);
    else if (key == "core_index")
        cfg.fiber.core_index = units::parse_number(value);
    else if (key == "cladding_index")
        cfg.fiber.cladding_index = units::parse_number(value);
    else if (key == "trap_wavelength")
        cfg.trap_wavelength = units::parse_quantity(value, Dimension::Length);
    else if (key == "power")
        cfg.power = units::parse_quantity(value, Dimension::Power);
    else if (key == "handedness") {
        const int h = parse_int(value);
        if (h != 1 && h != -1) throw ConfigError("handedness must be +1 or -1");
        cfg.handedness = h;
    } else if (key == "bias")
        cfg.bias = parse_directed(value);
    else if (key == "offset")
        cfg.offset = parse_directed(value);
    else if (key == "c3")
        cfg.c3 = units::parse_quantity(value, Dimension::VdwCoefficient);
    else if (key == "probe_wavelength")
        cfg.probe_wavelength = units::parse_quantity(value, Dimension::Length);
    else if (key == "include_vdw")
        cfg.include_vdw = parse_bool(value);
    else if (key == "F")
        cfg.f = parse_int(value);
    else if (key == "m_F")
        cfg.m_f = parse_int(value);
    else if (key == "atom_data")
        cfg.atom_data = value;
    else if (key == "r_range")
        cfg.r_range = parse_range(value, Dimension::Length);
    else if (key == "x_range")
        cfg.x_range = parse_range(value, Dimension::Length);
    else if (key == "y_range")
        cfg.y_range = parse_range(value, Dimension::Length);
    else if (key == "sweep")
        cfg.sweep = parse_sweep(value);
    else if (key.starts_with("row."))
        apply_row_key(cfg, key, value);
    else
        throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

trap::Vec3 DirectedField::vector() const {
    trap::Vec3 v{0.0, 0.0, 0.0};
    switch (axis) {
    case Axis::PosX: v[0] = magnitude; break;
    case Axis::NegX: v[0] = -magnitude; break;
    case Axis::PosY: v[1] = magnitude; break;
    case Axis::NegY: v[1] = -magnitude; break;
    case Axis::PosZ: v[2] = magnitude; break;
    case Axis::NegZ: v[2] = -magnitude; break;
    }
    return v;
}

double Range::at(int i) const {
    if (points <= 1) return start;
    if (i == points - 1) return stop;
    return start + (stop - start) * i / (points - 1);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

RunConfig parse_config(const KeyValueFile& kv) {
    RunConfig cfg;
    for (const auto& e : kv.entries()) {
        try {
            apply_key(cfg, e.key, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(e.key + ": " + err.what(), e.line);
        }
    }
    return cfg;
}

RunConfig parse_config_string(const std::string& text) {
    return parse_config(KeyValueFile::parse_string(text));
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    // Output files of any subcommand are accepted as configurations.
    if (text.str().starts_with("# owt ")) return parse_header(text.str());
    return parse_config_string(text.str());
}

std::vector<std::pair<std::string, std::string>> emit_config(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("radius", quantity(cfg.fiber.radius, Dimension::Length));
    out.emplace_back("core_index", format_number(cfg.fiber.core_index));
    out.emplace_back("cladding_index", format_number(cfg.fiber.cladding_index));
    out.emplace_back("trap_wavelength", quantity(cfg.trap_wavelength, Dimension::Length));
    out.emplace_back("power", quantity(cfg.power, Dimension::Power));
    out.emplace_back("handedness", cfg.handedness > 0 ? "+1" : "-1");
    out.emplace_back("bias", emit_directed(cfg.bias));
    out.emplace_back("offset", emit_directed(cfg.offset));
    out.emplace_back("c3", quantity(cfg.c3, Dimension::VdwCoefficient));
    out.emplace_back("probe_wavelength", quantity(cfg.probe_wavelength, Dimension::Length));
    out.emplace_back("include_vdw", cfg.include_vdw ? "true" : "false");
    if (cfg.f) out.emplace_back("F", std::to_string(*cfg.f));
    if (cfg.m_f) out.emplace_back("m_F", std::to_string(*cfg.m_f));
    if (!cfg.atom_data.empty()) out.emplace_back("atom_data", cfg.atom_data);
    if (cfg.r_range) out.emplace_back("r_range", emit_range(*cfg.r_range, Dimension::Length));
    if (cfg.x_range) out.emplace_back("x_range", emit_range(*cfg.x_range, Dimension::Length));
    if (cfg.y_range) out.emplace_back("y_range", emit_range(*cfg.y_range, Dimension::Length));
    if (cfg.sweep) out.emplace_back("sweep", emit_sweep(*cfg.sweep));
    for (const auto& [label, row] : cfg.rows) {
        const std::string prefix = "row." + label + ".";
        if (row.power) out.emplace_back(prefix + "power", quantity(*row.power, Dimension::Power));
        if (row.bias) out.emplace_back(prefix + "bias", emit_directed(*row.bias));
        if (row.offset) out.emplace_back(prefix + "offset", emit_directed(*row.offset));
    }
    return out;
}

RunConfig parse_header(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream body;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.starts_with("# ")) continue;
        const std::string content = line.substr(2);
        if (content.find('=') == std::string::npos) continue;
        body << content << '\n';
    }
    return parse_config_string(body.str());
}

atom::AtomSpec resolve_atom(const RunConfig& cfg) {
    atom::AtomSpec a = cfg.atom_data.empty() ? atom::cesium() : atom::load_atom_data(cfg.atom_data);
    if (cfg.f) a.f = *cfg.f;
    if (cfg.m_f) a.m_f = *cfg.m_f;
    try {
        a.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return a;
}

trap::TrapConfig trap_config(const RunConfig& cfg, const atom::AtomSpec& atom) {
    trap::TrapConfig t;
    t.fiber = cfg.fiber;
    t.trap_wavelength = cfg.trap_wavelength;
    t.power = cfg.power;
    t.handedness = cfg.handedness;
    const auto b = cfg.bias.vector();
    const auto o = cfg.offset.vector();
    t.external_field = {b[0] + o[0], b[1] + o[1], b[2] + o[2]};
    t.atom = atom;
    t.c3 = cfg.c3;
    t.probe_wavelength = cfg.probe_wavelength;
    t.include_vdw = cfg.include_vdw;
    return t;
}

Range field_scan_range(const RunConfig& cfg) {
    if (cfg.r_range) return *cfg.r_range;
    const double a = cfg.fiber.radius;
    return {a, a + 1000e-9, 1001};
}

Range contour_x_range(const RunConfig& cfg) {
    return cfg.x_range ? *cfg.x_range : Range{-600e-9, 600e-9, 401};
}

Range contour_y_range(const RunConfig& cfg) {
    return cfg.y_range ? *cfg.y_range : Range{-600e-9, 600e-9, 401};
}

Range line_scan_range(const RunConfig& cfg) {
    if (cfg.y_range) return *cfg.y_range;
    const double a = cfg.fiber.radius;
    return {a, a + 600e-9, 601};
}

Sweep line_scan_sweep(const RunConfig& cfg) {
    if (cfg.sweep) return *cfg.sweep;
    Sweep s;
    for (int b = 10; b <= 34; b += 3) s.values.push_back(b * 1e-4);
    return s;
}

}  // namespace owt::cli
