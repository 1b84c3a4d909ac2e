#pragma once

#include <string>
#include <vector>

#include "owt/cli/config.hpp"
#include "owt/cli/output.hpp"

namespace owt::cli {

/// Columns r_nm, B_phi_G, B_z_G of the fictitious field along a ray.
ScanResult field_scan(const RunConfig& cfg);

/// U/k_B in uK on a transverse grid, offset to zero far from the fiber.
/// Cells with r <= a are masked (NaN, masked = 1).
ScanResult contour(const RunConfig& cfg);

/// U(x = 0, y)/k_B in uK, one column per sweep value, each offset to zero at
/// large y. Per-value trap summaries go into the info header.
ScanResult line_scan(const RunConfig& cfg);

/// Figures of merit for one configuration.
struct ReportOutcome {
    ScanResult result;
    bool ok = false;
    std::string error_stage;
};
ReportOutcome report_scan(const RunConfig& cfg);

/// Trap configuration for one sweep value: the bias magnitude replaced
/// (direction kept), or power, bias and offset all scaled by kappa.
trap::TrapConfig sweep_config(const RunConfig& cfg, const atom::AtomSpec& atom, SweepKind kind,
                              double value);
std::string sweep_label(SweepKind kind, double value);

/// Report columns shared by `report` and `table`.
const std::vector<std::string>& report_columns();
std::vector<Cell> report_cells(const trap::TrapReport& rep);

}  // namespace owt::cli
