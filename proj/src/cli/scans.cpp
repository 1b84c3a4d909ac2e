#include "owt/cli/scans.hpp"

#include <cmath>
#include <limits>

#include "owt/constants.hpp"
#include "owt/errors.hpp"

namespace owt::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMicroKelvin = 1e-6 * constants::boltzmann;

// Builds the physics configuration, turning validation failures into config errors.
trap::OpticalWireTrap make_trap(const trap::TrapConfig& tc) {
    try {
        tc.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return trap::OpticalWireTrap(tc);
}

ScanResult start(const std::string& command, const RunConfig& cfg,
                 const trap::OpticalWireTrap& trap) {
    ScanResult r;
    r.command = command;
    r.config = emit_config(cfg);
    const auto& tc = trap.config();
    const auto& cal = trap.tune_out_calibration();
    r.info.emplace_back("atom.data_version", tc.atom.data_version);
    r.info.emplace_back("tune_out_nm", format_number(cal.tune_out_after * 1e9));
    r.info.emplace_back("tune_out_rescaled", cal.rescaled ? "true" : "false");
    if (cal.rescaled) r.info.emplace_back("d2_dipole_scale", format_number(cal.d2_scale));
    r.info.emplace_back("c3_correction", "printed exponent +49 replaced by -49");
    r.info.emplace_back("v_number", format_number(trap.trap_mode().v_number()));
    r.info.emplace_back("effective_index", format_number(trap.trap_mode().effective_index()));
    return r;
}

}  // namespace

std::string sweep_label(SweepKind kind, double value) {
    if (kind == SweepKind::Bias) return "B=" + format_number(value * 1e4) + "G";
    return "kappa=" + format_number(value);
}

trap::TrapConfig sweep_config(const RunConfig& cfg, const atom::AtomSpec& atom, SweepKind kind,
                              double value) {
    RunConfig swept = cfg;
    if (kind == SweepKind::Bias) {
        swept.bias.magnitude = value;
    } else {
        swept.power *= value;
        swept.bias.magnitude *= value;
        swept.offset.magnitude *= value;
    }
    return trap_config(swept, atom);
}

ScanResult field_scan(const RunConfig& cfg) {
    const auto tc = trap_config(cfg, resolve_atom(cfg));
    const auto trap = make_trap(tc);
    const Range range = field_scan_range(cfg);
    ScanResult r = start("field-scan", cfg, trap);
    r.info.emplace_back("r_range", format_number(range.start * 1e9) + " .. " +
                                       format_number(range.stop * 1e9) + " nm, " +
                                       std::to_string(range.points) + " points");
    r.columns = {"r_nm", "B_phi_G", "B_z_G"};
    for (int i = 0; i < range.points; ++i) {
        const double rr = range.at(i);
        if (rr < cfg.fiber.radius) {
            r.add_row({rr * 1e9, kNaN, kNaN});
            continue;
        }
        const auto f = trap.radial_field(rr);
        r.add_row({rr * 1e9, f.b_phi * 1e4, f.b_z * 1e4});
    }
    return r;
}

ScanResult contour(const RunConfig& cfg) {
    const auto tc = trap_config(cfg, resolve_atom(cfg));
    const auto trap = make_trap(tc);
    const Range xs = contour_x_range(cfg);
    const Range ys = contour_y_range(cfg);
    ScanResult r = start("contour", cfg, trap);
    r.info.emplace_back("offset", "U(x=0, y->inf) = 0");
    r.info.emplace_back("grid", std::to_string(xs.points) + " x " + std::to_string(ys.points));
    r.columns = {"x_nm", "y_nm", "U_uK", "masked"};
    const double a = cfg.fiber.radius;
    const double u_inf = trap.asymptote();
    for (int j = 0; j < ys.points; ++j) {
        for (int i = 0; i < xs.points; ++i) {
            const double x = xs.at(i);
            const double y = ys.at(j);
            if (std::hypot(x, y) <= a) {
                r.add_row({x * 1e9, y * 1e9, kNaN, 1.0});
                continue;
            }
            r.add_row({x * 1e9, y * 1e9, (trap.potential_xy(x, y) - u_inf) / kMicroKelvin, 0.0});
        }
    }
    return r;
}

ScanResult line_scan(const RunConfig& cfg) {
    const auto atom = resolve_atom(cfg);
    const auto reference = make_trap(trap_config(cfg, atom));
    const Range ys = line_scan_range(cfg);
    const Sweep sweep = line_scan_sweep(cfg);
    if (sweep.values.empty()) throw ConfigError("sweep has no values");

    ScanResult r = start("line-scan", cfg, reference);
    r.info.emplace_back("offset", "U(x=0, y->inf) = 0 for each column");
    std::vector<std::vector<double>> columns;
    r.columns = {"y_nm"};
    for (double v : sweep.values) {
        const auto tc = sweep_config(cfg, atom, sweep.kind, v);
        const auto trap = make_trap(tc);
        const std::string label = sweep_label(sweep.kind, v);
        r.columns.push_back("U_uK[" + label + "]");
        const double u_inf = trap.asymptote();
        std::vector<double> col(ys.points);
        for (int i = 0; i < ys.points; ++i) {
            const double y = ys.at(i);
            col[i] = y <= cfg.fiber.radius ? kNaN
                                           : (trap.potential({y, constants::pi / 2.0, 0.0}) - u_inf) /
                                                 kMicroKelvin;
        }
        columns.push_back(std::move(col));

        const auto rep = trap::report(tc);
        std::string summary;
        if (rep.ok) {
            summary = "y0-a " + format_number(rep.surface_distance * 1e9) + " nm, depth " +
                      format_number(rep.depth_temperature * 1e6) + " uK, open_toward_surface " +
                      (rep.open_toward_surface ? "true" : "false");
        } else {
            summary = "error (" + rep.error_stage + "): " + rep.error_message;
        }
        r.info.emplace_back("minimum[" + label + "]", summary);
    }
    for (int i = 0; i < ys.points; ++i) {
        std::vector<Cell> row{ys.at(i) * 1e9};
        for (const auto& col : columns) row.emplace_back(col[i]);
        r.add_row(std::move(row));
    }
    return r;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "status",         "error",           "x0_nm",          "y0_nm",
        "y0_minus_a_nm",  "U0_uK",           "open_toward_surface",
        "omega_r_2pi_kHz", "omega_phi_2pi_kHz", "sigma0_over_Aeff", "Gamma_sf_per_s",
        "Gamma_exc_per_s", "B_eff_G"};
    return cols;
}

std::vector<Cell> report_cells(const trap::TrapReport& rep) {
    if (!rep.ok) {
        std::vector<Cell> row{std::string("error"), rep.error_stage + ": " + rep.error_message};
        while (row.size() < report_columns().size()) row.emplace_back(kNaN);
        return row;
    }
    const double khz = 2.0 * constants::pi * 1e3;
    return {std::string("ok"),
            std::string(""),
            rep.x0 * 1e9,
            rep.y0 * 1e9,
            rep.surface_distance * 1e9,
            rep.depth_temperature * 1e6,
            rep.open_toward_surface ? 1.0 : 0.0,
            rep.omega_r / khz,
            rep.omega_phi / khz,
            rep.optical_depth,
            rep.gamma_sf,
            rep.gamma_exc,
            rep.b_eff_at_minimum * 1e4};
}

ReportOutcome report_scan(const RunConfig& cfg) {
    const auto tc = trap_config(cfg, resolve_atom(cfg));
    const auto trap = make_trap(tc);
    ReportOutcome out;
    out.result = start("report", cfg, trap);
    const auto rep = trap::report(tc);
    for (const auto& [k, v] : rep.metadata)
        if (k.starts_with("tol.")) out.result.info.emplace_back(k, v);
    out.result.columns = report_columns();
    out.result.add_row(report_cells(rep));
    out.ok = rep.ok;
    out.error_stage = rep.error_stage;
    return out;
}

}  // namespace owt::cli
