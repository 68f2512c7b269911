// hgflow: locally constrained Gauss-curvature-type flow in hyperbolic space,
// run as a radial graph over S^n, plus verification sweeps for the monotone
// functionals and the A_{n-2} vs volume inequality.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgflow/config.hpp"
#include "hgflow/driver.hpp"
#include "hgflow/errors.hpp"
#include "hgflow/flow.hpp"
#include "hgflow/geometry.hpp"
#include "hgflow/hyperbolic.hpp"
#include "hgflow/io.hpp"
#include "hgflow/quermass.hpp"
#include "hgflow/shapes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // usage / config errors
constexpr int kExitInvariant = 2;   // invariant-flag violation or failed verification
constexpr int kExitDegeneracy = 3;  // convexity loss / degeneracy / shape rejection
constexpr int kExitCfl = 4;         // CFL collapse

struct RunFlags {
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<int> n, m, mode, snapshot_every;
    std::optional<std::string> shape;
    std::optional<double> r, eps, d, tmax, osc_tol, cfl;
};

hgflow::RunConfig resolve_config(const RunFlags& flags) {
    hgflow::RunConfig cfg;
    if (flags.config_path) cfg = hgflow::load_config_file(*flags.config_path);
    if (flags.n) cfg.n = *flags.n;
    if (flags.m) cfg.m = *flags.m;
    if (flags.tmax) cfg.ctrl.t_max = *flags.tmax;
    if (flags.osc_tol) cfg.ctrl.osc_tol = *flags.osc_tol;
    if (flags.cfl) cfg.ctrl.cfl_safety = *flags.cfl;
    if (flags.snapshot_every) cfg.outputs.snapshot_every = *flags.snapshot_every;

    if (flags.shape) {
        const std::string& kind = *flags.shape;
        if (kind == "sphere") {
            cfg.shape = hgflow::SphereShape{flags.r.value_or(1.0)};
        } else if (kind == "cosine") {
            cfg.shape = hgflow::CosineShape{flags.r.value_or(1.0), flags.eps.value_or(0.2),
                                            flags.mode.value_or(1)};
        } else if (kind == "offcenter") {
            cfg.shape = hgflow::OffcenterShape{flags.r.value_or(1.0), flags.d.value_or(0.0)};
        } else {
            throw hgflow::ConfigError("--shape must be sphere|cosine|offcenter "
                                      "(custom-table shapes come from a config file)");
        }
    } else {
        // flag-level overrides of the active shape's parameters
        if (auto* sphere = std::get_if<hgflow::SphereShape>(&cfg.shape)) {
            if (flags.r) sphere->r = *flags.r;
        } else if (auto* cosine = std::get_if<hgflow::CosineShape>(&cfg.shape)) {
            if (flags.r) cosine->r0 = *flags.r;
            if (flags.eps) cosine->eps = *flags.eps;
            if (flags.mode) cosine->mode = *flags.mode;
        } else if (auto* off = std::get_if<hgflow::OffcenterShape>(&cfg.shape)) {
            if (flags.r) off->r = *flags.r;
            if (flags.d) off->d = *flags.d;
        }
    }

    // revalidate via the JSON path so flag overrides obey the same constraints
    if (cfg.n < 2 || cfg.n > 5) throw hgflow::ConfigError("config: n must lie in [2, 5]");
    if (cfg.m < 16 || cfg.m > 8192) throw hgflow::ConfigError("config: m must lie in [16, 8192]");
    return cfg;
}

int cmd_run(const RunFlags& flags) {
    namespace fs = std::filesystem;
    const hgflow::RunConfig cfg = resolve_config(flags);

    std::string trace_path = cfg.outputs.trace_path;
    std::string snapshot_dir = cfg.outputs.snapshot_dir;
    std::string report_path = "report.json";
    if (flags.out_dir) {
        fs::create_directories(*flags.out_dir);
        trace_path = (fs::path(*flags.out_dir) / fs::path(trace_path).filename()).string();
        snapshot_dir = (fs::path(*flags.out_dir) / fs::path(snapshot_dir).filename()).string();
        report_path = (fs::path(*flags.out_dir) / report_path).string();
    }

    auto grid = hgflow::make_grid(cfg.n, cfg.m);
    hgflow::RadialField initial = hgflow::make_shape(cfg.shape, grid);

    hgflow::FileTraceSink sink(trace_path, snapshot_dir);
    hgflow::RunResult result = hgflow::run(std::move(initial), cfg.ctrl, &sink,
                                           cfg.outputs.snapshot_every, /*keep_trace=*/false);
    sink.close();

    const hgflow::QuermassReport rep =
        hgflow::quermass_all(result.state.geom, result.state.field);
    std::ofstream report(report_path);
    if (!report) throw hgflow::ConfigError("cannot open " + report_path + " for writing");
    report << hgflow::report_to_json(rep, cfg.m) << '\n';

    std::printf("run: n=%d m=%d shape=%s\n", cfg.n, cfg.m, hgflow::shape_kind(cfg.shape).c_str());
    std::printf("  converged: %s\n", result.status.converged ? "yes" : "no (hit t_max)");
    std::printf("  t_final:   %.6f  steps: %ld\n", result.status.t_final, result.status.steps);
    std::printf("  rho_inf:   %.12f\n", result.status.rho_inf);
    std::printf("  trace:     %s\n", trace_path.c_str());
    std::printf("  report:    %s\n", report_path.c_str());
    if (result.status.flags_union != 0) {
        std::printf("  MONITOR FLAGS RAISED: 0x%x\n", result.status.flags_union);
        return kExitInvariant;
    }
    if (!result.status.converged) {
        std::printf("  did not converge before t_max\n");
        return kExitInvariant;
    }
    return kExitOk;
}

int cmd_verify_af(int m) {
    const hgflow::AfSweepResult result = hgflow::verify_af_sweep(m);
    std::printf("verify-af: m=%d, %zu family members over n in {2,3,4}\n", result.m,
                result.entries.size());
    for (const auto& e : result.entries) {
        std::printf("  n=%d %-24s vol=%-14.8g A_nm2=%-14.8g af_gap=%-13.6g rel=%-12.4g%s\n",
                    e.n, e.label.c_str(), e.vol, e.a_nm2, e.af_gap, e.gap_rel,
                    e.is_ball ? " [ball]" : "");
    }
    std::printf("  min gap (relative): %.6g   max ball |gap| (relative): %.6g\n",
                result.min_gap_rel, result.max_ball_gap_rel);
    std::printf("verify-af: %s\n", result.pass ? "PASS" : "FAIL");
    return result.pass ? kExitOk : kExitInvariant;
}

int cmd_ball(int n, double r_min, double r_max, int count) {
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw hgflow::ConfigError("ball: require 0 < r-min < r-max");
    }
    if (count < 2) throw hgflow::ConfigError("ball: require at least 2 samples");
    std::printf("r");
    for (int k = -1; k <= n - 1; ++k) std::printf(",xi_%d", k);
    std::printf("\n");
    for (int i = 0; i < count; ++i) {
        const double r = r_min + (r_max - r_min) * i / (count - 1);
        std::printf("%.17g", r);
        for (int k = -1; k <= n - 1; ++k) {
            std::printf(",%.17g", hgflow::ball_quermass(n, k, r));
        }
        std::printf("\n");
    }
    return kExitOk;
}

int cmd_identities(const std::vector<int>& ms, const std::vector<int>& ns) {
    const hgflow::IdentityStudyResult result = hgflow::identities_study(ms, ns);
    std::printf("identities: rho = 1 + 0.2 cos(psi)\n");
    for (const auto& row : result.rows) {
        std::printf("  n=%d m=%-5d |mink_res_0|=%-12.4e |mink_res_nm1|=%-12.4e grad_res=%-10.3e\n",
                    row.n, row.m, row.mink_res_0, row.mink_res_nm1, row.grad_res);
    }
    for (const auto& order : result.orders) {
        std::printf("  n=%d k=%d observed order %.3f\n", order.n, order.k, order.order);
    }
    std::printf("  min order %.3f (gate 1.9), max gradient-identity residual %.3e\n",
                result.min_order, result.max_grad_res);
    std::printf("identities: %s\n", result.pass ? "PASS" : "FAIL");
    return result.pass ? kExitOk : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally constrained Gauss-curvature flow in H^{n+1} (radial graphs over S^n)"};
    app.require_subcommand(1);

    RunFlags flags;
    int af_m = 2048;
    int ball_n = 2;
    double ball_r_min = 0.25, ball_r_max = 2.0;
    int ball_count = 8;
    std::vector<int> id_ms = {128, 256, 512};
    std::vector<int> id_ns = {2, 3};

    CLI::App* run_cmd = app.add_subcommand("run", "evolve a shape and write trace/snapshots/report");
    run_cmd->add_option("--config", flags.config_path, "JSON config file");
    run_cmd->add_option("--out", flags.out_dir, "output directory");
    run_cmd->add_option("--n", flags.n, "hypersurface dimension (2..5)");
    run_cmd->add_option("--m", flags.m, "grid nodes (16..8192)");
    run_cmd->add_option("--shape", flags.shape, "sphere|cosine|offcenter");
    run_cmd->add_option("--r", flags.r, "sphere/offcenter radius, or cosine r0");
    run_cmd->add_option("--eps", flags.eps, "cosine amplitude");
    run_cmd->add_option("--mode", flags.mode, "cosine mode (1 or 2)");
    run_cmd->add_option("--d", flags.d, "offcenter displacement");
    run_cmd->add_option("--tmax", flags.tmax, "time horizon");
    run_cmd->add_option("--osc-tol", flags.osc_tol, "stopping oscillation tolerance");
    run_cmd->add_option("--cfl", flags.cfl, "CFL safety factor in (0,1]");
    run_cmd->add_option("--snapshot-every", flags.snapshot_every, "snapshot cadence (0 = off)");

    CLI::App* af_cmd = app.add_subcommand("verify-af", "sweep the built-in family and check the A_{n-2} vs volume inequality");
    af_cmd->add_option("--m", af_m, "grid nodes for the sweep");

    CLI::App* ball_cmd = app.add_subcommand("ball", "tabulate geodesic-ball quermassintegrals xi_k");
    ball_cmd->add_option("--n", ball_n, "hypersurface dimension")->required();
    ball_cmd->add_option("--r-min", ball_r_min, "smallest radius");
    ball_cmd->add_option("--r-max", ball_r_max, "largest radius");
    ball_cmd->add_option("--count", ball_count, "number of samples");

    CLI::App* id_cmd = app.add_subcommand("identities", "grid-refinement study of the Minkowski and gradient identities");
    id_cmd->add_option("--m", id_ms, "grid resolutions");
    id_cmd->add_option("--n", id_ns, "dimensions");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return cmd_run(flags);
        if (af_cmd->parsed()) return cmd_verify_af(af_m);
        if (ball_cmd->parsed()) return cmd_ball(ball_n, ball_r_min, ball_r_max, ball_count);
        if (id_cmd->parsed()) return cmd_identities(id_ms, id_ns);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const hgflow::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const hgflow::CflCollapseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCfl;
    } catch (const hgflow::ShapeRejectionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegeneracy;
    } catch (const hgflow::DegeneracyError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegeneracy;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
