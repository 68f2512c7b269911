#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <iomanip>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hgflow/config.hpp"
#include "hgflow/errors.hpp"
#include "hgflow/flow.hpp"
#include "hgflow/io.hpp"
#include "hgflow/shapes.hpp"

using namespace hgflow;

namespace {

std::string trace_to_string(const FlowTrace& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const TraceRow& row : trace.rows) {
        out += format_trace_row(row);
        out += '\n';
    }
    return out;
}

} // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("trace header is byte-exact and rows carry 15 columns") {
    CHECK(std::string(kTraceHeader)
          == "t,dt,rho_min,rho_max,osc,vol,area,A_nm2,af_gap,Q,K_max,kappa_min,"
             "grad_gamma_sq_max,mink_res_0,mink_res_nm1");
    TraceRow row;
    row.t = 1.0 / 3.0;
    row.vol = std::numbers::pi;
    const std::string line = format_trace_row(row);
    CHECK(std::count(line.begin(), line.end(), ',') == 14);
    // full-precision round trip of a representative value
    CHECK(line.find("0.33333333333333331") != std::string::npos);
    CHECK(line.find("3.1415926535897931") != std::string::npos);
}

TEST_CASE("snapshot round trip reproduces rho bit-exactly") {
    StepControl ctrl;
    FlowState s = make_state(make_shape(CosineShape{1.0, 0.2, 1}, make_grid(2, 64)));
    for (int i = 0; i < 17; ++i) s = step(s, ctrl);
    const std::string text = snapshot_to_json(s);
    const RadialField back = snapshot_from_json(text);
    REQUIRE(back.rho.size() == s.field.rho.size());
    CHECK(back.time == s.t);
    for (std::size_t j = 0; j < back.rho.size(); ++j) {
        CHECK(back.rho[j] == s.field.rho[j]); // bitwise
    }
}

TEST_CASE("report JSON carries all QuermassReport fields") {
    const RadialField f = make_shape(SphereShape{1.0}, make_grid(3, 128));
    const QuermassReport rep = quermass_all(compute_geometry(f), f);
    const std::string text = report_to_json(rep, 128);
    for (const char* key : {"\"n\"", "\"m\"", "\"A\"", "\"mink_res\"", "\"af_gap\"", "\"r_equiv\""}) {
        CHECK(text.find(key) != std::string::npos);
    }
}

TEST_CASE("parse_config fills defaults from a minimal config") {
    const RunConfig cfg = parse_config(
        R"({"n":2, "m":256, "shape":{"kind":"cosine", "params":{"r0":1, "eps":0.2, "mode":1}}})");
    CHECK(cfg.n == 2);
    CHECK(cfg.m == 256);
    CHECK(cfg.ctrl.cfl_safety == 0.2);
    CHECK(cfg.ctrl.osc_tol == 1e-7);
    CHECK(cfg.ctrl.t_max == 100.0);
    CHECK(cfg.outputs.snapshot_every == 0);
    const auto* cosine = std::get_if<CosineShape>(&cfg.shape);
    REQUIRE(cosine != nullptr);
    CHECK(cosine->r0 == 1.0);
    CHECK(cosine->eps == 0.2);
    CHECK(cosine->mode == 1);
}

TEST_CASE("parse_config rejects bad inputs with named keys") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"n":1, "m":256})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"n":2, "m":8})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"n":2, "m":256, "bogus":1})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"n":2, "m":256, "shape":{"kind":"cosine", "params":{"r0":1, "eps":1.5}}})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"n":2, "m":256, "ctrl":{"cfl_safety":1.5}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"n":2, "m":256, "ctrl":{"nope":1}})"), ConfigError);
    // messages name the key
    try {
        parse_config(R"({"n":2, "m":256, "bogus":1})");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
}

TEST_CASE("make_shape: spheres and reductions") {
    auto grid = make_grid(2, 64);
    const RadialField sphere = make_shape(SphereShape{1.0}, grid);
    for (double r : sphere.rho) CHECK(r == 1.0);
    const RadialField centered = make_shape(OffcenterShape{1.0, 0.0}, grid);
    for (double r : centered.rho) CHECK(r == 1.0);
}

TEST_CASE("make_shape: offcenter solves the law of cosines") {
    auto grid = make_grid(2, 512);
    const RadialField f = make_shape(OffcenterShape{1.0, 0.3}, grid);
    const double cd = std::cosh(0.3);
    const double sd = std::sinh(0.3);
    for (int j = 0; j < grid->m; ++j) {
        const double rho = f.rho[j];
        const double lhs = cd * std::cosh(rho) - sd * std::sinh(rho) * std::cos(grid->psi[j]);
        CHECK(std::abs(lhs - std::cosh(1.0)) <= 1e-11);
    }
    // poles approach r + d and r - d
    CHECK(std::abs(f.rho.front() - 1.3) < 2e-3);
    CHECK(std::abs(f.rho.back() - 0.7) < 2e-3);
}

TEST_CASE("make_shape: custom table interpolates and validates") {
    auto grid = make_grid(2, 64);
    TableShape table;
    const int samples = 33;
    for (int i = 0; i < samples; ++i) {
        const double psi = std::numbers::pi * i / (samples - 1);
        table.psi.push_back(psi);
        table.rho.push_back(1.0 + 0.1 * std::cos(psi));
    }
    const RadialField f = make_shape(table, grid);
    for (int j = 0; j < grid->m; ++j) {
        CHECK(f.rho[j] == doctest::Approx(1.0 + 0.1 * std::cos(grid->psi[j])).epsilon(1e-4));
    }
    TableShape bad = table;
    std::swap(bad.psi[3], bad.psi[4]);
    CHECK_THROWS_AS(make_shape(bad, grid), ConfigError);
}

TEST_CASE("shape rejection names the violated hypothesis and node") {
    auto grid = make_grid(2, 64);
    // convexity violation via a deep mode-2 dimple fed through custom-table
    TableShape dimple;
    const int samples = 65;
    for (int i = 0; i < samples; ++i) {
        const double psi = std::numbers::pi * i / (samples - 1);
        dimple.psi.push_back(psi);
        dimple.rho.push_back(1.0 + 0.8 * std::cos(2.0 * psi));
    }
    try {
        make_shape(dimple, grid);
        FAIL("expected rejection");
    } catch (const ShapeRejectionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("convexity") != std::string::npos);
        CHECK(msg.find("node") != std::string::npos);
    }
}

TEST_CASE("identical configs produce byte-identical traces") {
    StepControl ctrl;
    ctrl.t_max = 0.05;
    auto run_once = [&]() {
        return run(make_shape(CosineShape{1.0, 0.2, 1}, make_grid(2, 64)), ctrl);
    };
    const RunResult a = run_once();
    const RunResult b = run_once();
    CHECK(trace_to_string(a.trace) == trace_to_string(b.trace));
    CHECK(snapshot_to_json(a.state) == snapshot_to_json(b.state));
}

TEST_CASE("file sink writes header, rows, and snapshots") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hgflow_sink_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string trace_path = (dir / "trace.csv").string();
    const std::string snap_dir = (dir / "snaps").string();
    {
        FileTraceSink sink(trace_path, snap_dir);
        StepControl ctrl;
        ctrl.t_max = 0.02;
        run(make_shape(CosineShape{1.0, 0.2, 1}, make_grid(2, 64)), ctrl, &sink, 10, false);
        sink.close();
    }
    std::ifstream in(trace_path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == kTraceHeader);
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows > 2);
    int snaps = 0;
    for (const auto& entry : fs::directory_iterator(snap_dir)) {
        ++snaps;
        const RadialField f = load_snapshot(entry.path().string());
        CHECK(f.grid->m == 64);
    }
    CHECK(snaps > 0);
    fs::remove_all(dir);
}

TEST_CASE("positivity rejection names the hypothesis and node") {
    auto grid = make_grid(2, 64);
    TableShape sunk;
    const int samples = 33;
    for (int i = 0; i < samples; ++i) {
        const double psi = std::numbers::pi * i / (samples - 1);
        sunk.psi.push_back(psi);
        sunk.rho.push_back(0.4 - 0.5 * std::cos(psi)); // negative near psi = 0
    }
    try {
        make_shape(sunk, grid);
        FAIL("expected rejection");
    } catch (const ShapeRejectionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("positivity") != std::string::npos);
        CHECK(msg.find("node") != std::string::npos);
    }
}

TEST_CASE("trace time is strictly increasing") {
    StepControl ctrl;
    ctrl.t_max = 0.05;
    const RunResult res = run(make_shape(CosineShape{1.0, 0.2, 1}, make_grid(2, 64)), ctrl);
    for (std::size_t i = 1; i < res.trace.rows.size(); ++i) {
        CHECK(res.trace.rows[i].t > res.trace.rows[i - 1].t);
    }
}

#ifdef HGFLOW_CLI_PATH
TEST_CASE("CLI exit codes: usage errors and successful tabulation") {
    const std::string cli = HGFLOW_CLI_PATH;
    auto run_cli = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(run_cli("ball --n 2 --r-min 0.5 --r-max 2 --count 3") == 0);
    CHECK(run_cli("--definitely-not-a-flag") == 1);
    CHECK(run_cli("ball") == 1);                     // missing required --n
    CHECK(run_cli("run --n 1") == 1);                // config range error
    CHECK(run_cli("run --shape cosine --eps 2.0") == 1); // eps >= r0
}

TEST_CASE("CLI exit codes: degeneracy (3) and CFL collapse (4)") {
    namespace fs = std::filesystem;
    const std::string cli = HGFLOW_CLI_PATH;
    const fs::path dir = fs::temp_directory_path() / "hgflow_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto run_cli = [&](const std::string& args) {
        const std::string cmd = "cd " + dir.string() + " && " + cli + " " + args
                                + " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WEXITSTATUS(raw);
    };

    // non-convex custom table -> shape rejection -> exit 3
    {
        std::ofstream cfg(dir / "nonconvex.json");
        cfg << std::setprecision(17);
        cfg << R"({"n":2, "m":64, "shape":{"kind":"custom-table", "params":{"psi":[)";
        const int samples = 33;
        for (int i = 0; i < samples; ++i) {
            cfg << (i ? "," : "") << std::numbers::pi * i / (samples - 1);
        }
        cfg << R"(], "rho":[)";
        for (int i = 0; i < samples; ++i) {
            const double psi = std::numbers::pi * i / (samples - 1);
            cfg << (i ? "," : "") << 1.0 + 0.8 * std::cos(2.0 * psi);
        }
        cfg << "]}}}";
    }
    CHECK(run_cli("run --config nonconvex.json") == 3);

    // dt floor above the stability limit -> CFL collapse -> exit 4
    {
        std::ofstream cfg(dir / "cfl.json");
        cfg << R"({"n":2, "m":256, "shape":{"kind":"cosine", "params":{"r0":1, "eps":0.2, "mode":1}},)"
            << R"( "ctrl":{"dt_min":0.5, "dt_max":1.0}})";
    }
    CHECK(run_cli("run --config cfl.json") == 4);
    fs::remove_all(dir);
}
#endif

TEST_SUITE_END();
