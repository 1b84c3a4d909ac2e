#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "owt/cli/config.hpp"
#include "owt/cli/output.hpp"
#include "owt/cli/scans.hpp"
#include "owt/cli/table.hpp"
#include "owt/errors.hpp"

using namespace owt::cli;

namespace {

std::string csv(const ScanResult& r) {
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

std::string json(const ScanResult& r) {
    std::ostringstream out;
    write_json(out, r);
    return out.str();
}

double num(const Cell& c) { return std::get<double>(c); }

std::string tmp_path(const std::string& name) { return std::string(OWT_TEST_TMP) + "/" + name; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(OWT_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config values require units") {
    CHECK(parse_config_string("power = 1.2 mW\n").power == doctest::Approx(1.2e-3));
    CHECK(parse_config_string("radius = 0.23 um\n").fiber.radius == doctest::Approx(230e-9));
    CHECK_THROWS_AS(parse_config_string("power = 1.2\n"), owt::ConfigError);
    CHECK_THROWS_AS(parse_config_string("radius = 230 G\n"), owt::ConfigError);
    CHECK_THROWS_AS(parse_config_string("c3 = 5.6e-49\n"), owt::ConfigError);
    CHECK(parse_config_string("c3 = 5.6e-49 J m^3\n").c3 == doctest::Approx(5.6e-49));
}

TEST_CASE("config errors carry the line number") {
    try {
        parse_config_string("power = 1 mW\n\nfrobnicate = 3 nm\n");
        FAIL("expected ConfigError");
    } catch (const owt::ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
    }
}

TEST_CASE("directed fields and handedness") {
    const auto cfg = parse_config_string("bias = 16 G @ -x\noffset = 1 G @ -z\nhandedness = -1\n");
    CHECK(cfg.bias.vector()[0] == doctest::Approx(-16e-4));
    CHECK(cfg.offset.vector()[2] == doctest::Approx(-1e-4));
    CHECK(cfg.handedness == -1);
    CHECK(parse_config_string("handedness = +1\n").handedness == 1);
    CHECK_THROWS_AS(parse_config_string("handedness = 2\n"), owt::ConfigError);
    CHECK_THROWS_AS(parse_config_string("bias = 16 G @ -w\n"), owt::ConfigError);
    const auto tc = trap_config(cfg, resolve_atom(cfg));
    CHECK(tc.external_field[0] == doctest::Approx(-16e-4));
    CHECK(tc.external_field[1] == 0.0);
    CHECK(tc.external_field[2] == doctest::Approx(-1e-4));
}

TEST_CASE("ranges and sweeps") {
    const auto cfg = parse_config_string(
        "y_range = 230 nm .. 830 nm step 2 nm\nsweep = bias 10 G .. 34 G step 3 G\n");
    REQUIRE(cfg.y_range);
    CHECK(cfg.y_range->points == 301);
    CHECK(cfg.y_range->at(300) == doctest::Approx(830e-9));
    REQUIRE(cfg.sweep);
    CHECK(cfg.sweep->values.size() == 9);
    CHECK(cfg.sweep->values.back() == doctest::Approx(34e-4));
    const auto k = parse_config_string("sweep = kappa 0.5 .. 3 step 0.5\n");
    CHECK(k.sweep->kind == SweepKind::Kappa);
    CHECK(k.sweep->values.size() == 6);
    CHECK(parse_config_string("sweep = bias 16 G, 22 G\n").sweep->values.size() == 2);
}

TEST_CASE("emitted header round-trips to the same configuration") {
    const std::string text =
        "radius = 230 nm\npower = 0.15 mW\nhandedness = -1\nbias = 2.6 G @ -x\n"
        "offset = 1 G @ -z\ninclude_vdw = false\nm_F = 3\nr_range = 240 nm .. 900 nm points 12\n"
        "sweep = kappa 0.5, 1.5\nrow.b.power = 2 mW\nrow.d.bias = 40 G @ +y\n";
    const auto cfg = parse_config_string(text);
    const auto emitted = emit_config(cfg);

    std::string as_config;
    for (const auto& [k, v] : emitted) as_config += k + " = " + v + "\n";
    const auto again = parse_config_string(as_config);
    CHECK(emit_config(again) == emitted);

    ScanResult r;
    r.command = "report";
    r.config = emitted;
    r.info = {{"note", "x"}};
    r.columns = {"a"};
    r.add_row({1.0});
    const auto from_header = parse_header(csv(r));
    CHECK(emit_config(from_header) == emitted);
    CHECK(from_header.power == cfg.power);
    CHECK(from_header.rows.at("d").bias->axis == Axis::PosY);
}

TEST_CASE("csv layout") {
    ScanResult r;
    r.command = "demo";
    r.config = {{"power", "1.2 mW"}};
    r.info = {{"v", "1"}};
    r.columns = {"x", "label"};
    r.add_row({1.0 / 3.0, std::string("a,b")});
    r.add_row({std::nan(""), std::string("ok")});
    CHECK_THROWS(r.add_row({1.0}));
    const std::string text = csv(r);
    CHECK(text == "# owt demo\n# power = 1.2 mW\n#% v = 1\nx,label\n0.333333333,\"a,b\"\nnan,ok\n");
    CHECK(text.find('\r') == std::string::npos);

    const auto j = nlohmann::json::parse(json(r));
    CHECK(j["command"] == "demo");
    CHECK(j["columns"].size() == 2);
    CHECK(j["rows"][1][0].is_null());
    CHECK(j["rows"][0][0].get<double>() == 0.333333333);
    CHECK(j["config"]["power"] == "1.2 mW");
}

TEST_CASE("field scan decays outward and scales with power") {
    auto cfg = parse_config_string("r_range = 240 nm .. 1230 nm points 100\n");
    const auto r1 = field_scan(cfg);
    REQUIRE(r1.rows.size() == 100);
    CHECK(r1.columns == std::vector<std::string>{"r_nm", "B_phi_G", "B_z_G"});
    for (std::size_t i = 1; i < r1.rows.size(); ++i)
        CHECK(std::fabs(num(r1.rows[i][1])) < std::fabs(num(r1.rows[i - 1][1])));
    cfg.power *= 2;
    const auto r2 = field_scan(cfg);
    for (std::size_t i = 0; i < r1.rows.size(); ++i)
        CHECK(num(r2.rows[i][1]) == doctest::Approx(2 * num(r1.rows[i][1])).epsilon(1e-8));
}

TEST_CASE("scan output is byte deterministic") {
    RunConfig cfg;
    cfg.r_range = Range{240e-9, 600e-9, 37};
    CHECK(csv(field_scan(cfg)) == csv(field_scan(cfg)));
    CHECK(json(field_scan(cfg)) == json(field_scan(cfg)));
    CHECK(csv(report_scan(cfg).result) == csv(report_scan(cfg).result));
}

TEST_CASE("default contour grid for the 1.2 mW, 22 G trap") {
    const RunConfig cfg;
    const auto r = contour(cfg);
    REQUIRE(r.rows.size() == 401u * 401u);
    double best = INFINITY;
    double bx = 0;
    double by = 0;
    std::size_t masked = 0;
    for (const auto& row : r.rows) {
        if (num(row[3]) == 1.0) {
            ++masked;
            CHECK(std::isnan(num(row[2])));
            continue;
        }
        // Beyond the surface attraction, the trap is the global minimum.
        if (std::hypot(num(row[0]), num(row[1])) < 230.0 + 60.0) continue;
        if (num(row[2]) < best) {
            best = num(row[2]);
            bx = num(row[0]);
            by = num(row[1]);
        }
    }
    CHECK(masked > 0);
    CHECK(bx == doctest::Approx(0.0).scale(1.0));
    CHECK(std::fabs(by - 230.0 - 148.0) < 4.0);
    CHECK(best == doctest::Approx(-310).epsilon(0.15));
    // Rows run over x fastest. Grid step is 3 nm, so (0, 231 nm) is index 277.
    const std::size_t n = 401;
    CHECK(num(r.rows[277 * n + 200][2]) < best);
    // Mirror symmetry about x = 0 for a bias along x.
    for (std::size_t iy : {250u, 330u, 390u}) {
        for (std::size_t ix : {10u, 100u, 190u}) {
            const double u = num(r.rows[iy * n + ix][2]);
            const double v = num(r.rows[iy * n + (n - 1 - ix)][2]);
            if (!std::isnan(u)) CHECK(u == doctest::Approx(v).epsilon(1e-9));
        }
    }
}

TEST_CASE("bias sweep line scan: minimum moves inward, trap opens at high bias") {
    const RunConfig cfg;
    const auto r = line_scan(cfg);
    REQUIRE(r.columns.size() == 10);
    REQUIRE(r.rows.size() == 601);
    std::set<std::string> open;
    double prev = INFINITY;
    for (const auto& [k, v] : r.info) {
        if (!k.starts_with("minimum[")) continue;
        REQUIRE(v.starts_with("y0-a "));
        const double d = std::stod(v.substr(5));
        CHECK(d < prev);
        prev = d;
        if (v.ends_with("open_toward_surface true")) open.insert(k);
    }
    CHECK(open == std::set<std::string>{"minimum[B=25G]", "minimum[B=28G]", "minimum[B=31G]",
                                        "minimum[B=34G]"});
}

TEST_CASE("kappa sweep without the surface term scales the potential") {
    auto cfg = parse_config_string("sweep = kappa 0.5 .. 3 step 0.5\ninclude_vdw = false\n");
    const auto r = line_scan(cfg);
    REQUIRE(r.columns.size() == 7);
    for (std::size_t i = 1; i < r.rows.size(); i += 37) {
        const double u1 = num(r.rows[i][2]);  // kappa = 1
        for (std::size_t c = 1; c < 7; ++c)
            CHECK(num(r.rows[i][c]) == doctest::Approx(0.5 * c * u1).epsilon(1e-8));
    }
}

TEST_CASE("table rows against the reference values") {
    const auto out = run_table(RunConfig{});
    REQUIRE(out.rows.size() == 5);
    CHECK_FALSE(out.any_error);
    CHECK(out.spin_flip_ordering);
    CHECK(out.rows[1].all_pass);
    CHECK(out.result.rows.size() == 5);
    CHECK(std::get<std::string>(out.result.rows[0][0]) == "a");
}

TEST_CASE("a corrupted table row fails on its own") {
    const auto out = run_table(parse_config_string("row.b.power = -1 mW\n"));
    CHECK(out.any_error);
    CHECK_FALSE(out.rows[1].report.ok);
    CHECK(out.rows[1].report.error_stage == "config");
    CHECK(std::get<std::string>(out.result.rows[1][4]) == "error");
    CHECK(out.rows[0].report.ok);
    CHECK(out.rows[2].report.ok);
    CHECK_THROWS_AS(run_table(parse_config_string("row.q.power = 1 mW\n")), owt::ConfigError);
}

TEST_CASE("command-line exit codes") {
    const std::string good = tmp_path("cli_good.cfg");
    write_file(good, "power = 1.2 mW\nbias = 22 G @ -x\n");
    const std::string out = tmp_path("cli_report.csv");
    CHECK(run_tool("report --config " + good + " --out " + out) == 0);
    const std::string first = read_file(out);
    CHECK(first.starts_with("# owt report\n"));
    CHECK(run_tool("report --config " + good + " --out " + out) == 0);
    CHECK(read_file(out) == first);

    // The written header is itself a valid configuration.
    const std::string echoed = tmp_path("cli_echo.cfg");
    write_file(echoed, first);
    CHECK(run_tool("report --config " + echoed + " --out " + tmp_path("cli_echo.csv")) == 0);
    CHECK(read_file(tmp_path("cli_echo.csv")) == first);

    CHECK(run_tool("report --config " + good + " --format json --out " + tmp_path("cli.json")) == 0);
    CHECK(nlohmann::json::parse(read_file(tmp_path("cli.json")))["command"] == "report");

    const std::string no_unit = tmp_path("cli_no_unit.cfg");
    write_file(no_unit, "power = 1.2\n");
    CHECK(run_tool("report --config " + no_unit) == 2);
    CHECK(run_tool("report --format xml") == 2);
    CHECK(run_tool("") == 2);

    const std::string dark = tmp_path("cli_dark.cfg");
    write_file(dark, "power = 0 mW\n");
    CHECK(run_tool("report --config " + dark) == 3);

    const std::string bad_row = tmp_path("cli_bad_row.cfg");
    write_file(bad_row, "row.c.power = -1 mW\n");
    CHECK(run_tool("table --config " + bad_row) == 0);
    CHECK(run_tool("table --strict --config " + bad_row) == 2);
}
