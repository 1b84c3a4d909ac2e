#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "owt/cli/config.hpp"
#include "owt/cli/output.hpp"
#include "owt/cli/scans.hpp"
#include "owt/cli/table.hpp"
#include "owt/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::string atom_data;
    bool strict = false;
    bool no_vdw = false;
};

void emit(const owt::cli::ScanResult& result, const Options& opt) {
    const auto format = owt::cli::parse_format(opt.format);
    if (opt.out_path.empty()) {
        owt::cli::write(std::cout, result, format);
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw owt::ConfigError("cannot write '" + opt.out_path + "'");
    owt::cli::write(out, result, format);
}

int run(const std::string& command, const Options& opt) {
    using namespace owt::cli;
    parse_format(opt.format);  // reject a bad format before computing anything
    RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
    if (!opt.atom_data.empty()) cfg.atom_data = opt.atom_data;
    if (opt.no_vdw) cfg.include_vdw = false;

    if (command == "field-scan") {
        emit(field_scan(cfg), opt);
    } else if (command == "contour") {
        emit(contour(cfg), opt);
    } else if (command == "line-scan") {
        emit(line_scan(cfg), opt);
    } else if (command == "report") {
        const auto outcome = report_scan(cfg);
        emit(outcome.result, opt);
        if (!outcome.ok) {
            std::cerr << "owt: report failed at stage '" << outcome.error_stage << "'\n";
            return outcome.error_stage == "config" ? kExitConfig : kExitPhysics;
        }
    } else if (command == "table") {
        const auto outcome = run_table(cfg);
        emit(outcome.result, opt);
        if (outcome.any_error) {
            bool config_error = false;
            for (const auto& row : outcome.rows) {
                if (row.report.ok) continue;
                std::cerr << "owt: row (" << row.reference.label << ") failed at stage '"
                          << row.report.error_stage << "': " << row.report.error_message << '\n';
                config_error = config_error || row.report.error_stage == "config";
            }
            if (opt.strict) return config_error ? kExitConfig : kExitPhysics;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical wire trap calculator: fields, potentials and trap figures of merit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "Key-value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", opt.out_path, "Output file (default: stdout)");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--strict", opt.strict, "Exit nonzero when any table row fails");
    app.add_option("--atom-data", opt.atom_data, "Atomic data table")->check(CLI::ExistingFile);
    app.add_flag("--no-vdw", opt.no_vdw, "Exclude the surface van der Waals potential");

    app.add_subcommand("field-scan", "Fictitious field components versus r");
    app.add_subcommand("contour", "Potential on a transverse grid");
    app.add_subcommand("line-scan", "Potential along x = 0 for a bias or kappa sweep");
    app.add_subcommand("table", "Reference configurations (a)-(e) with pass/fail");
    app.add_subcommand("report", "Figures of merit for one configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opt);
    } catch (const owt::ConfigError& e) {
        std::cerr << "owt: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const owt::DomainError& e) {
        std::cerr << "owt: invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "owt: physics error: " << e.what() << '\n';
        return kExitPhysics;
    }
}
