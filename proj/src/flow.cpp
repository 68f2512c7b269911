#include "hgflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hgflow/errors.hpp"
#include "hgflow/hyperbolic.hpp"
#include "hgflow/quermass.hpp"

namespace hgflow {

namespace {

constexpr int kMaxStepRetries = 8;

bool positive_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0) return false;
    }
    return true;
}

void require_convex(const GeometryFields& geom, const char* op) {
    if (!geom.convex()) {
        const ConvexityLoss& loss = *geom.convexity_loss;
        std::ostringstream msg;
        msg << op << ": state is not uniformly convex at node " << loss.node
            << " (kappa_m = " << loss.kappa_m << ", kappa_o = " << loss.kappa_o << ")";
        throw DegeneracyError(msg.str());
    }
}

void validate_ctrl(const StepControl& ctrl) {
    if (!(ctrl.cfl_safety > 0.0 && ctrl.cfl_safety <= 1.0)) {
        throw ConfigError("StepControl: cfl_safety must lie in (0, 1]");
    }
    if (!(ctrl.dt_min > 0.0 && ctrl.dt_min <= ctrl.dt_max)) {
        throw ConfigError("StepControl: require 0 < dt_min <= dt_max");
    }
    if (!(ctrl.t_max > 0.0)) throw ConfigError("StepControl: t_max must be positive");
    if (!(ctrl.osc_tol > 0.0)) throw ConfigError("StepControl: osc_tol must be positive");
}

struct StepWorkspace {
    std::vector<double> f0, f1;
};

// One Heun step with rejection/halving; writes the accepted state into `out`.
void step_into(const FlowState& in, const StepControl& ctrl, double dt_cap,
               StepWorkspace& ws, FlowState& out, double& dt_used) {
    require_convex(in.geom, "step");
    double dt = stable_dt(in, ctrl);
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    const int m = in.geom.m;
    ws.f0.resize(m);
    ws.f1.resize(m);
    speed_into(in.geom, ws.f0);
    out.field.grid = in.field.grid;
    out.field.rho.resize(m);

    for (int attempt = 0; attempt <= kMaxStepRetries; ++attempt) {
        // predictor
        for (int j = 0; j < m; ++j) {
            out.field.rho[j] = in.field.rho[j] + dt * ws.f0[j];
        }
        bool ok = positive_finite(out.field.rho);
        if (ok) {
            compute_geometry(out.field, out.geom);
            ok = out.geom.convex();
        }
        if (ok) {
            // corrector
            speed_into(out.geom, ws.f1);
            for (int j = 0; j < m; ++j) {
                out.field.rho[j] = in.field.rho[j] + 0.5 * dt * (ws.f0[j] + ws.f1[j]);
            }
            ok = positive_finite(out.field.rho);
            if (ok) {
                compute_geometry(out.field, out.geom);
                ok = out.geom.convex();
            }
        }
        if (ok) {
            out.field.time = in.t + dt;
            out.t = in.t + dt;
            out.step_index = in.step_index + 1;
            dt_used = dt;
            return;
        }
        dt *= 0.5;
        // accepted steps must respect dt_min (a final capped step near t_max
        // may be shorter, but a *rejected* cascade below the floor is fatal)
        if (dt < ctrl.dt_min && dt_cap > ctrl.dt_min) {
            std::ostringstream msg;
            msg << "step: retries drove dt below dt_min = " << ctrl.dt_min
                << " at t = " << in.t;
            throw DegeneracyError(msg.str());
        }
    }
    std::ostringstream msg;
    msg << "step: rejected " << kMaxStepRetries + 1
        << " times (convexity loss or non-finite update) at t = " << in.t;
    throw DegeneracyError(msg.str());
}

} // namespace

FlowState make_state(RadialField field) {
    FlowState s;
    s.t = field.time;
    s.field = std::move(field);
    compute_geometry(s.field, s.geom);
    if (!s.geom.convex()) {
        const ConvexityLoss& loss = *s.geom.convexity_loss;
        std::ostringstream msg;
        msg << "initial hypersurface is not uniformly convex at node " << loss.node
            << " (kappa_m = " << loss.kappa_m << ", kappa_o = " << loss.kappa_o << ")";
        throw ShapeRejectionError(msg.str());
    }
    return s;
}

void speed_into(const GeometryFields& geom, std::span<double> out) {
    require_convex(geom, "speed");
    for (int j = 0; j < geom.m; ++j) {
        out[j] = -geom.phi[j] * geom.K_inv_n[j] + geom.phi_prime[j] * geom.w[j];
    }
}

std::vector<double> speed(const GeometryFields& geom) {
    std::vector<double> out(static_cast<std::size_t>(geom.m));
    speed_into(geom, out);
    return out;
}

std::vector<double> normal_speed(const GeometryFields& geom) {
    require_convex(geom, "normal_speed");
    std::vector<double> out(static_cast<std::size_t>(geom.m));
    for (int j = 0; j < geom.m; ++j) {
        out[j] = geom.phi_prime[j] - geom.theta[j];
    }
    return out;
}

double speed_pointwise(int n, double rho, double rho_p, double rho_pp, double cot_psi) {
    const double s = std::sinh(rho);
    const double c = std::cosh(rho);
    const double s2 = s * s;
    const double v = std::sqrt(s2 + rho_p * rho_p);
    const double w = v / s;
    const double inv_den = 1.0 / (s2 * v);
    const double kappa_o = (s2 * c - s * cot_psi * rho_p) * inv_den;
    const double proj = 1.0 - (rho_p * rho_p) / (v * v);
    const double kappa_m = proj * (-s * rho_pp + 2.0 * c * rho_p * rho_p + s2 * c) * inv_den;
    const double K = sigma_k_axisym(kappa_m, kappa_o, n, n);
    if (K <= 0.0) {
        throw DegeneracyError("speed_pointwise: non-convex input (K <= 0)");
    }
    return -s * std::exp(std::log(K) / n) + c * w;
}

double diffusion_pointwise(int n, double rho, double rho_p, double rho_pp, double cot_psi) {
    const double s = std::sinh(rho);
    const double c = std::cosh(rho);
    const double s2 = s * s;
    const double v = std::sqrt(s2 + rho_p * rho_p);
    const double inv_den = 1.0 / (s2 * v);
    const double kappa_o = (s2 * c - s * cot_psi * rho_p) * inv_den;
    const double proj = 1.0 - (rho_p * rho_p) / (v * v);
    const double kappa_m = proj * (-s * rho_pp + 2.0 * c * rho_p * rho_p + s2 * c) * inv_den;
    const double K = sigma_k_axisym(kappa_m, kappa_o, n, n);
    if (K <= 0.0) {
        throw DegeneracyError("diffusion_pointwise: non-convex input (K <= 0)");
    }
    const double K_inv_n = std::exp(std::log(K) / n);
    return K_inv_n / (n * kappa_m) * proj / v;
}

double stable_dt(const FlowState& state, const StepControl& ctrl) {
    validate_ctrl(ctrl);
    require_convex(state.geom, "stable_dt");
    const GeometryFields& g = state.geom;
    double max_diff = 0.0;
    for (int j = 0; j < g.m; ++j) {
        const double proj = 1.0 - (g.rho_p[j] * g.rho_p[j]) / (g.v[j] * g.v[j]);
        const double d = g.K_inv_n[j] / (g.n * g.kappa_m[j]) * proj / g.v[j];
        max_diff = std::max(max_diff, d);
    }
    const double dpsi = state.field.grid->dpsi;
    const double dt_raw = ctrl.cfl_safety * dpsi * dpsi / max_diff;
    if (dt_raw < ctrl.dt_min) {
        std::ostringstream msg;
        msg << "stable_dt: CFL collapse, dt = " << dt_raw << " < dt_min = " << ctrl.dt_min
            << " at t = " << state.t;
        throw CflCollapseError(msg.str());
    }
    return std::min(dt_raw, ctrl.dt_max);
}

FlowState step(const FlowState& state, const StepControl& ctrl, double* dt_used) {
    StepWorkspace ws;
    FlowState out;
    double dt = 0.0;
    step_into(state, ctrl, 0.0, ws, out, dt);
    if (dt_used) *dt_used = dt;
    return out;
}

FlowState advance(FlowState state, const StepControl& ctrl, double t_end, long max_steps) {
    validate_ctrl(ctrl);
    StepWorkspace ws;
    FlowState next;
    long taken = 0;
    const double t_slack = 1e-12 * std::max(1.0, std::abs(t_end));
    while (state.t < t_end - t_slack && (max_steps < 0 || taken < max_steps)) {
        double dt_used = 0.0;
        step_into(state, ctrl, t_end - state.t, ws, next, dt_used);
        std::swap(state, next);
        ++taken;
    }
    return state;
}

TraceRow Monitor::observe(const FlowState& state, double dt) {
    const GeometryFields& g = state.geom;
    const AxiGrid& grid = *state.field.grid;
    const int m = g.m;

    TraceRow row;
    row.t = state.t;
    row.dt = dt;

    auto [min_it, max_it] = std::minmax_element(state.field.rho.begin(), state.field.rho.end());
    row.rho_min = *min_it;
    row.rho_max = *max_it;
    row.osc = row.rho_max - row.rho_min;

    const QuermassReport rep = has_prev_
        ? quermass_all(g, state.field, r_equiv_prev_)
        : quermass_all(g, state.field);
    row.vol = rep.a(-1);
    row.area = rep.a(0);
    row.a_nm2 = rep.a(g.n - 2);
    row.af_gap = rep.af_gap;
    row.mink_res_0 = rep.mink_res[0];
    row.mink_res_nm1 = rep.mink_res[static_cast<std::size_t>(g.n) - 1];

    // Q through the AM-GM gap: ∫ u (H/n − K^{1/n}) dμ equals
    // ∫ (phi' − u K^{1/n}) dμ in the continuum by the k = 0 Minkowski
    // identity, and the integrand is sign-definite node by node, so the
    // discrete Q cannot go negative by discretization error.
    scratch_.resize(static_cast<std::size_t>(m));
    const double inv_n = 1.0 / g.n;
    for (int j = 0; j < m; ++j) {
        scratch_[j] = g.u[j] * (g.H[j] * inv_n - g.K_inv_n[j]);
    }
    row.q = integrate_weighted(grid, scratch_, g.dmu);

    double k_max = -std::numeric_limits<double>::infinity();
    double kappa_min = std::numeric_limits<double>::infinity();
    double grad_max = 0.0;
    for (int j = 0; j < m; ++j) {
        k_max = std::max(k_max, g.K[j]);
        kappa_min = std::min(kappa_min, std::min(g.kappa_m[j], g.kappa_o[j]));
        const double gamma_p = g.rho_p[j] / g.phi[j];
        grad_max = std::max(grad_max, gamma_p * gamma_p);
    }
    row.k_max = k_max;
    row.kappa_min = kappa_min;
    row.grad_gamma_sq_max = grad_max;

    const double slack = 1e-8 * (1.0 + std::abs(dt));
    if (has_prev_) {
        if (row.rho_max > prev_rho_max_ + slack) row.flags |= kFlagRhoMaxIncreased;
        if (row.rho_min < prev_rho_min_ - slack) row.flags |= kFlagRhoMinDecreased;
        if (row.vol < prev_vol_ - slack) row.flags |= kFlagVolumeDecreased;
        if (row.a_nm2 > prev_anm2_ + slack) row.flags |= kFlagAnm2Increased;
    }
    if (row.kappa_min <= 0.0) row.flags |= kFlagConvexityLost;
    if (row.q < -1e-8 * row.area) row.flags |= kFlagNegativeQ;

    has_prev_ = true;
    prev_rho_min_ = row.rho_min;
    prev_rho_max_ = row.rho_max;
    prev_vol_ = row.vol;
    prev_anm2_ = row.a_nm2;
    r_equiv_prev_ = rep.r_equiv;
    return row;
}

RunResult run(RadialField initial, const StepControl& ctrl, TraceSink* sink,
              int snapshot_every, bool keep_trace) {
    validate_ctrl(ctrl);
    RunResult result;
    FlowState cur = make_state(std::move(initial));
    FlowState next;
    StepWorkspace ws;
    Monitor monitor;

    auto emit = [&](const TraceRow& row, const FlowState& state) {
        result.status.flags_union |= row.flags;
        if (keep_trace) result.trace.rows.push_back(row);
        if (sink) {
            sink->on_row(row);
            if (snapshot_every > 0 && state.step_index % snapshot_every == 0) {
                sink->on_snapshot(state);
            }
        }
    };

    TraceRow row = monitor.observe(cur, 0.0);
    emit(row, cur);

    const double t_slack = 1e-12 * std::max(1.0, ctrl.t_max);
    while (true) {
        if (row.osc < ctrl.osc_tol) {
            result.status.converged = true;
            break;
        }
        if (cur.t >= ctrl.t_max - t_slack) break;
        const double dt_cap = ctrl.t_max - cur.t;
        double dt_used = 0.0;
        step_into(cur, ctrl, dt_cap, ws, next, dt_used);
        std::swap(cur, next);
        row = monitor.observe(cur, dt_used);
        emit(row, cur);
    }

    const double area = integrate(*cur.field.grid, cur.geom.dmu);
    result.status.rho_inf =
        integrate_weighted(*cur.field.grid, cur.field.rho, cur.geom.dmu) / area;
    result.status.t_final = cur.t;
    result.status.steps = cur.step_index;
    result.state = std::move(cur);
    return result;
}

RateFit rate_fit(const FlowTrace& trace, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw DomainError("rate_fit: tail_fraction must lie in (0, 1]");
    }
    constexpr double kFloor = 1e-14;
    // usable prefix: rows before grad_gamma_sq_max first reaches the floor
    std::size_t usable = 0;
    for (const TraceRow& row : trace.rows) {
        if (!(row.grad_gamma_sq_max > kFloor)) break;
        ++usable;
    }
    const auto window = static_cast<std::size_t>(std::floor(tail_fraction * usable));
    if (window < 10) {
        throw InsufficientDataError("rate_fit: fewer than 10 usable rows in the tail window");
    }
    const std::size_t start = usable - window;

    double st = 0.0, sy = 0.0;
    for (std::size_t i = start; i < usable; ++i) {
        st += trace.rows[i].t;
        sy += std::log(trace.rows[i].grad_gamma_sq_max);
    }
    const double count = static_cast<double>(window);
    const double mean_t = st / count;
    const double mean_y = sy / count;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = start; i < usable; ++i) {
        const double dtm = trace.rows[i].t - mean_t;
        const double dym = std::log(trace.rows[i].grad_gamma_sq_max) - mean_y;
        stt += dtm * dtm;
        sty += dtm * dym;
        syy += dym * dym;
    }
    if (stt == 0.0) {
        throw InsufficientDataError("rate_fit: degenerate time window");
    }
    const double slope = sty / stt;
    RateFit fit;
    fit.alpha = -slope;
    fit.rows_used = static_cast<int>(window);
    const double ss_res = syy - slope * sty;
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 0.0;
    return fit;
}

} // namespace hgflow
