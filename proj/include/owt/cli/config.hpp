#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "owt/keyvalue.hpp"
#include "owt/trap.hpp"

namespace owt::cli {

enum class Axis { PosX, NegX, PosY, NegY, PosZ, NegZ };

/// Uniform field of given magnitude along a coordinate axis ("22 G @ -x").
struct DirectedField {
    double magnitude = 0.0;  // T
    Axis axis = Axis::NegX;

    trap::Vec3 vector() const;
};

/// Inclusive, evenly spaced grid of `points` samples.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    double at(int i) const;
};

enum class SweepKind { Bias, Kappa };

/// Line-scan sweep: bias magnitudes (T) or joint power/field scale factors.
struct Sweep {
    SweepKind kind = SweepKind::Bias;
    std::vector<double> values;
};

/// Per-row overrides for the built-in table configurations.
struct RowOverride {
    std::optional<double> power;
    std::optional<DirectedField> bias;
    std::optional<DirectedField> offset;
};

struct RunConfig {
    fibermode::FiberSpec fiber;
    double trap_wavelength = 880.25e-9;
    double power = 1.2e-3;
    int handedness = +1;
    DirectedField bias{22e-4, Axis::NegX};
    DirectedField offset{0.0, Axis::NegZ};
    double c3 = trap::kDefaultC3;
    double probe_wavelength = 852.347e-9;
    bool include_vdw = true;
    std::optional<int> f;
    std::optional<int> m_f;
    std::string atom_data;  // path; empty selects the built-in cesium table

    std::optional<Range> r_range;  // field-scan
    std::optional<Range> x_range;  // contour
    std::optional<Range> y_range;  // contour and line-scan
    std::optional<Sweep> sweep;    // line-scan
    std::map<std::string, RowOverride> rows;  // table
};

/// Parses a flat key-value configuration. Every dimensioned value must carry
/// a unit; unknown keys are rejected. Throws ConfigError with line numbers.
RunConfig parse_config(const KeyValueFile& kv);
RunConfig parse_config_string(const std::string& text);
/// Accepts a plain configuration or any file written by the tool (its
/// `# key = value` header is read back).
RunConfig load_config(const std::string& path);

/// Canonical `key = value` lines; parse_config of these reproduces `cfg`.
std::vector<std::pair<std::string, std::string>> emit_config(const RunConfig& cfg);

/// Rebuilds a RunConfig from the `# key = value` lines of an emitted file.
RunConfig parse_header(const std::string& text);

/// Atom table selected by the configuration (built-in or loaded), with F and
/// m_F overrides applied.
atom::AtomSpec resolve_atom(const RunConfig& cfg);

/// Physics configuration; `atom` should come from resolve_atom.
trap::TrapConfig trap_config(const RunConfig& cfg, const atom::AtomSpec& atom);

/// Effective grids, with defaults derived from the fiber radius.
Range field_scan_range(const RunConfig& cfg);
Range contour_x_range(const RunConfig& cfg);
Range contour_y_range(const RunConfig& cfg);
Range line_scan_range(const RunConfig& cfg);
Sweep line_scan_sweep(const RunConfig& cfg);

std::string format_number(double v);

}  // namespace owt::cli
