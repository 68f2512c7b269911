#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hgflow/errors.hpp"
#include "hgflow/flow.hpp"
#include "hgflow/geometry.hpp"
#include "hgflow/grid.hpp"
#include "hgflow/hyperbolic.hpp"
#include "hgflow/quermass.hpp"
#include "hgflow/shapes.hpp"
#include "oracles.hpp"

using namespace hgflow;

TEST_SUITE_BEGIN("quermass");

TEST_CASE("volume of the unit-radius sphere at n=2") {
    const RadialField f = constant_field(make_grid(2, 256), 1.0);
    const double oracle = 4.0 * std::numbers::pi
        * oracles::adaptive_simpson([](double s) { return std::sinh(s) * std::sinh(s); }, 0.0, 1.0);
    CHECK(volume(f) == doctest::Approx(oracle).epsilon(2e-5));
}

TEST_CASE("volume matches ball_quermass across dimensions") {
    // two code paths on the same integrand; n = 2 carries the midpoint-rule
    // weight deficit of the sin^{n-1} factor (~6e-6 at m = 256), higher n
    // have vanishing endpoint corrections
    for (double r : {0.5, 1.0, 2.0}) {
        const RadialField f2 = constant_field(make_grid(2, 256), r);
        CHECK(volume(f2) == doctest::Approx(ball_quermass(2, -1, r)).epsilon(1e-5));
        const RadialField f3 = constant_field(make_grid(3, 256), r);
        CHECK(volume(f3) == doctest::Approx(ball_quermass(3, -1, r)).epsilon(1e-6));
        const RadialField f4 = constant_field(make_grid(4, 256), r);
        CHECK(volume(f4) == doctest::Approx(ball_quermass(4, -1, r)).epsilon(1e-6));
    }
}

TEST_CASE("volume is monotone under pointwise domination") {
    auto grid = make_grid(2, 64);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> bump(0.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        RadialField a;
        a.grid = grid;
        a.rho.resize(64);
        RadialField b = a;
        b.grid = grid;
        b.rho.resize(64);
        for (int j = 0; j < 64; ++j) {
            a.rho[j] = 0.8 + 0.1 * std::cos(grid->psi[j]);
            b.rho[j] = a.rho[j] + bump(rng);
        }
        CHECK(volume(a) <= volume(b));
    }
}

TEST_CASE("quermass_all on balls reproduces xi_k at 1e-5 (m = 256)") {
    for (int n : {2, 3, 4, 5}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const RadialField f = constant_field(make_grid(n, 256), r);
            const GeometryFields g = compute_geometry(f);
            const QuermassReport rep = quermass_all(g, f);
            for (int k = -1; k <= n - 1; ++k) {
                const double want = ball_quermass(n, k, r);
                CHECK(std::abs(rep.a(k) - want) <= 1e-5 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("ball af_gap is tiny and r_equiv recovers the radius") {
    const RadialField f = constant_field(make_grid(2, 1024), 1.0);
    const GeometryFields g = compute_geometry(f);
    const QuermassReport rep = quermass_all(g, f);
    CHECK(std::abs(rep.af_gap) <= 1e-6 * rep.a(0));
    CHECK(rep.r_equiv == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("n=3 ball: A_1 equals the closed-form curvature integral minus 3|Omega|") {
    const double r = 1.0;
    const RadialField f = constant_field(make_grid(3, 256), r);
    const GeometryFields g = compute_geometry(f);
    const QuermassReport rep = quermass_all(g, f);
    const double omega3 = unit_sphere_area(3);
    const double s = std::sinh(r);
    const double curv = 3.0 * (std::cosh(r) / s) * omega3 * s * s * s;
    const double want = curv - 3.0 * ball_quermass(3, -1, r);
    CHECK(rep.a(1) == doctest::Approx(want).epsilon(1e-6));
    CHECK(rep.a(1) == doctest::Approx(ball_quermass(3, 1, r)).epsilon(1e-6));
}

TEST_CASE("af_gap is positive on perturbed convex states") {
    for (int n : {2, 3}) {
        const RadialField f = make_shape(CosineShape{1.0, 0.2, 1}, make_grid(n, 256));
        const GeometryFields g = compute_geometry(f);
        const QuermassReport rep = quermass_all(g, f);
        CHECK(rep.af_gap > 0.0);
        CHECK(rep.r_equiv >= *std::min_element(f.rho.begin(), f.rho.end()));
        CHECK(rep.r_equiv <= *std::max_element(f.rho.begin(), f.rho.end()));
    }
}

TEST_CASE("r_equiv is bracketed by the field range on random states") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> amp(-0.1, 0.1);
    auto grid = make_grid(2, 128);
    for (int trial = 0; trial < 10; ++trial) {
        RadialField f;
        f.grid = grid;
        f.rho.resize(128);
        const double a1 = amp(rng);
        const double a2 = amp(rng);
        for (int j = 0; j < 128; ++j) {
            const double p = grid->psi[j];
            f.rho[j] = 1.2 + a1 * std::cos(p) + a2 * std::cos(2 * p);
        }
        const GeometryFields g = compute_geometry(f);
        const QuermassReport rep = quermass_all(g, f);
        CHECK(rep.r_equiv >= *std::min_element(f.rho.begin(), f.rho.end()) - 1e-12);
        CHECK(rep.r_equiv <= *std::max_element(f.rho.begin(), f.rho.end()) + 1e-12);
    }
}

TEST_CASE("variation_check: stationary sphere gives zero residuals") {
    const RadialField f = constant_field(make_grid(2, 128), 1.0);
    const GeometryFields g = compute_geometry(f);
    const std::vector<double> zero_speed(128, 0.0);
    const auto [res_vol, res_a] = variation_check(g, f, g, f, zero_speed, 1e-3);
    CHECK(res_vol <= 1e-10);
    CHECK(res_a <= 1e-10);
}

TEST_CASE("variation_check volume residual is first order in dt") {
    // the volume identity has no spatial mismatch (the discrete volume's
    // time derivative is exactly the discrete flux), so halving dt halves
    // the residual
    for (int n : {2, 3}) {
        const RadialField f0 = make_shape(CosineShape{1.0, 0.1, 1}, make_grid(n, 128));
        FlowState s0 = make_state(f0);
        const std::vector<double> f_speed = normal_speed(s0.geom);

        StepControl ctrl;
        double res_prev = 0.0;
        for (double dt_max : {2e-4, 1e-4}) {
            ctrl.dt_max = dt_max;
            ctrl.cfl_safety = 1.0; // force the dt_max clamp
            double dt_used = 0.0;
            FlowState s1 = step(s0, ctrl, &dt_used);
            CHECK(dt_used == doctest::Approx(dt_max).epsilon(1e-12));
            const auto [res_vol, res_a] =
                variation_check(s0.geom, s0.field, s1.geom, s1.field, f_speed, dt_used);
            CHECK(res_vol < 0.01);
            CHECK(res_a < 0.1);
            if (res_prev > 0.0) {
                CHECK(res_vol < 0.75 * res_prev);
            }
            res_prev = res_vol;
        }
    }
}

TEST_CASE("variation_check A_{n-2} residual refines jointly in (dt, dpsi)") {
    // inside the explicit stability region dt scales with dpsi^2, so the
    // O(dt) and O(dpsi^2) parts refine together: m -> 2m with dt -> dt/4
    // should quarter the residual
    for (int n : {2, 3}) {
        double res_coarse = 0.0;
        double res_fine = 0.0;
        int which = 0;
        for (int m : {128, 256}) {
            const RadialField f0 = make_shape(CosineShape{1.0, 0.1, 1}, make_grid(n, m));
            FlowState s0 = make_state(f0);
            const std::vector<double> f_speed = normal_speed(s0.geom);
            StepControl ctrl;
            ctrl.cfl_safety = 1.0;
            ctrl.dt_max = (m == 128) ? 2e-4 : 5e-5;
            double dt_used = 0.0;
            FlowState s1 = step(s0, ctrl, &dt_used);
            const auto [res_vol, res_a] =
                variation_check(s0.geom, s0.field, s1.geom, s1.field, f_speed, dt_used);
            (void)res_vol;
            (which++ == 0 ? res_coarse : res_fine) = res_a;
        }
        const double ratio = res_coarse / res_fine;
        CHECK(ratio >= 2.5);
        CHECK(ratio <= 6.5);
    }
}

TEST_SUITE_END();
