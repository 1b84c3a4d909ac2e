#pragma once

#include <array>
#include <string>
#include <vector>

#include "owt/cli/config.hpp"
#include "owt/cli/output.hpp"

namespace owt::cli {

/// The seven figures of merit of a table row, in column order.
enum class Figure { SurfaceDistance, Depth, OmegaR, OmegaPhi, OpticalDepth, SpinFlip, Excitation };
inline constexpr int kFigureCount = 7;

struct FigureInfo {
    const char* column;  // e.g. "U0_uK"
    const char* tolerance;
};
const FigureInfo& figure_info(Figure f);

/// Reference configuration and published figures of merit, display units
/// (nm, uK, kHz, -, 1/s, 1/s).
struct TableReference {
    std::string label;
    double power_mw = 0.0;
    double bias_g = 0.0;
    double offset_z_g = 0.0;  // along -z
    std::array<double, kFigureCount> values{};
};
const std::vector<TableReference>& table_references();

/// Pass/fail for one figure: +-10 nm, +-15 %, +-0.05 absolute, +-30 %, or
/// within a factor 1e3 depending on the figure.
bool within_tolerance(Figure f, double computed, double reference);

/// Figures of a successful report in display units, in Figure order.
std::array<double, kFigureCount> figures(const trap::TrapReport& rep);

struct TableRowResult {
    TableReference reference;
    trap::TrapConfig config;
    trap::TrapReport report;
    std::array<double, kFigureCount> computed{};
    std::array<bool, kFigureCount> pass{};
    bool all_pass = false;
};

struct TableOutcome {
    ScanResult result;
    std::vector<TableRowResult> rows;
    bool spin_flip_ordering = false;  // computed Gamma_sf ranks rows like the reference
    bool all_pass = false;
    bool any_error = false;
};

/// Runs rows (a)-(e). Fiber, wavelengths, handedness, C3, vdW and atom come
/// from `cfg`; power, bias (along -x) and offset come from the row, unless
/// overridden with `row.<label>.power|bias|offset`.
TableOutcome run_table(const RunConfig& cfg);

}  // namespace owt::cli
