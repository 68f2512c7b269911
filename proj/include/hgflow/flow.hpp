#pragma once

#include <span>
#include <vector>

#include "hgflow/geometry.hpp"
#include "hgflow/grid.hpp"

namespace hgflow {

/// Time-stepper configuration. dt is chosen per step as
/// cfl_safety Δψ² / max|∂F/∂ρ''| and clamped to [dt_min, dt_max].
struct StepControl {
    double cfl_safety = 0.2;
    double dt_min = 1e-12;
    double dt_max = 1.0;
    double t_max = 100.0;
    double osc_tol = 1e-7;
};

/// One flow state: the radial field with its geometry cache. The cache is
/// rebuilt whenever the field changes; use make_state / step so no stale
/// geometry is observable.
struct FlowState {
    RadialField field;
    GeometryFields geom;
    long step_index = 0;
    double t = 0.0;
};

/// Computes the geometry cache. Throws ShapeRejectionError when the field is
/// not uniformly convex.
FlowState make_state(RadialField field);

/// Graph speed dρ/dt = −phi K^{1/n} + phi' w per node.
void speed_into(const GeometryFields& geom, std::span<double> out);
std::vector<double> speed(const GeometryFields& geom);

/// Normal speed f = phi' − u K^{1/n} per node (dρ/dt = f w).
std::vector<double> normal_speed(const GeometryFields& geom);

/// Pointwise graph speed from raw (ρ, ρ', ρ'', cot ψ) values.
double speed_pointwise(int n, double rho, double rho_p, double rho_pp, double cot_psi);

/// Analytic diffusion coefficient ∂F/∂ρ'' of the graph speed,
/// (1/n) (K^{1/n}/κ_m) (1 − ρ'²/v²) / v. Unit-tested against a central
/// finite difference of speed_pointwise in ρ''.
double diffusion_pointwise(int n, double rho, double rho_p, double rho_pp, double cot_psi);

/// Stability-limited dt for the current state; throws CflCollapseError when
/// the unclamped value falls below ctrl.dt_min.
double stable_dt(const FlowState& state, const StepControl& ctrl);

/// One explicit Heun (trapezoidal predictor-corrector) step. On convexity
/// loss or non-finite values the step is rejected and retried with halved dt,
/// up to 8 times, then DegeneracyError. Returns the dt actually taken via
/// dt_used when non-null.
FlowState step(const FlowState& state, const StepControl& ctrl, double* dt_used = nullptr);

/// Steps without monitors until t reaches t_end (the final step is capped to
/// land there) or max_steps steps were taken (when max_steps >= 0).
FlowState advance(FlowState state, const StepControl& ctrl, double t_end,
                  long max_steps = -1);

enum TraceFlag : unsigned {
    kFlagRhoMaxIncreased = 1u << 0,
    kFlagRhoMinDecreased = 1u << 1,
    kFlagVolumeDecreased = 1u << 2,
    kFlagAnm2Increased = 1u << 3,
    kFlagConvexityLost = 1u << 4,
    kFlagNegativeQ = 1u << 5,
};

/// One diagnostics row. The CSV column order is exactly the field order up
/// to `mink_res_nm1`; flags are engine metadata, not a CSV column.
struct TraceRow {
    double t = 0, dt = 0;
    double rho_min = 0, rho_max = 0, osc = 0;
    double vol = 0, area = 0, a_nm2 = 0, af_gap = 0;
    double q = 0;
    double k_max = 0, kappa_min = 0;
    double grad_gamma_sq_max = 0;
    double mink_res_0 = 0, mink_res_nm1 = 0;
    unsigned flags = 0;
};

struct FlowTrace {
    std::vector<TraceRow> rows;
};

/// Emits TraceRows and raises flags when a proved estimate is violated
/// beyond rounding slack 1e-8 (1+|dt|): ρ_max up, ρ_min down, volume down,
/// A_{n-2} up, κ_min <= 0, or Q < −1e-8 · area.
class Monitor {
public:
    TraceRow observe(const FlowState& state, double dt);

private:
    bool has_prev_ = false;
    double prev_rho_min_ = 0.0;
    double prev_rho_max_ = 0.0;
    double prev_vol_ = 0.0;
    double prev_anm2_ = 0.0;
    double r_equiv_prev_ = 0.0;
    std::vector<double> scratch_;
};

/// Receives rows/snapshots as the run produces them (file sinks in io.hpp).
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void on_row(const TraceRow&) {}
    virtual void on_snapshot(const FlowState&) {}
};

struct RunStatus {
    bool converged = false;
    double rho_inf = 0.0;
    double t_final = 0.0;
    long steps = 0;
    unsigned flags_union = 0;
};

struct RunResult {
    FlowState state;
    FlowTrace trace;
    RunStatus status;
};

/// Steps the flow until osc(ρ) < ctrl.osc_tol or t >= ctrl.t_max, emitting a
/// monitor row per step (plus one for the initial state). rho_inf is the
/// area-weighted mean of the final field.
RunResult run(RadialField initial, const StepControl& ctrl, TraceSink* sink = nullptr,
              int snapshot_every = 0, bool keep_trace = true);

struct RateFit {
    double alpha = 0.0;
    double r_squared = 0.0;
    int rows_used = 0;
};

/// Least-squares decay rate of grad_gamma_sq_max over the trailing
/// tail_fraction of rows, truncated where the value reaches the 1e-14
/// rounding floor. Throws InsufficientDataError below 10 usable rows.
RateFit rate_fit(const FlowTrace& trace, double tail_fraction = 0.5);

} // namespace hgflow
