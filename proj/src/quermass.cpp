#include "hgflow/quermass.hpp"

#include <cmath>

#include "hgflow/errors.hpp"
#include "hgflow/hyperbolic.hpp"
#include "hgflow/kernels.hpp"

namespace hgflow {

namespace {

// A_{-1}..A_k from the recursion; curvature integrals evaluated on the
// discrete state.
std::vector<double> quermass_chain(const GeometryFields& geom,
                                   const RadialField& field, int k_max) {
    const int n = geom.n;
    const AxiGrid& grid = *geom.grid;
    std::vector<double> a(static_cast<std::size_t>(k_max) + 2, 0.0);
    a[0] = volume(field);
    if (k_max >= 0) a[1] = integrate(grid, geom.dmu);
    if (k_max >= 1) {
        a[2] = integrate_weighted(grid, geom.sigma[1], geom.dmu) - n * a[0];
    }
    for (int k = 2; k <= k_max; ++k) {
        const double s_k = integrate_weighted(grid, geom.sigma[k], geom.dmu);
        a[static_cast<std::size_t>(k) + 1] =
            s_k - static_cast<double>(n - k + 1) / static_cast<double>(k - 1)
                      * a[static_cast<std::size_t>(k) - 1];
    }
    return a;
}

QuermassReport build_report(const GeometryFields& geom, const RadialField& field,
                            const double* r_guess) {
    const int n = geom.n;
    QuermassReport rep;
    rep.n = n;
    rep.A = quermass_chain(geom, field, n - 1);
    rep.mink_res.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        rep.mink_res[static_cast<std::size_t>(k)] = minkowski_residual(geom, k);
    }
    const double vol = rep.a(-1);
    try {
        rep.r_equiv = r_guess ? xi_volume_radius(n, vol, *r_guess) : xi_inverse(n, -1, vol);
    } catch (const RangeError& err) {
        throw RangeError(std::string("quermass_all: volume-equivalent radius failed: ")
                         + err.what());
    }
    rep.af_gap = rep.a(n - 2) - ball_quermass(n, n - 2, rep.r_equiv);
    return rep;
}

} // namespace

double volume(const RadialField& field) {
    const AxiGrid& grid = *field.grid;
    if (static_cast<int>(field.rho.size()) != grid.m) {
        throw ShapeError("volume: field length does not match grid");
    }
    std::vector<double> inner(field.rho.size());
    kernels::sinh_pow_cumulative(grid.n, grid.m, field.rho.data(), inner.data());
    return integrate(grid, inner);
}

double quermass_value(const GeometryFields& geom, const RadialField& field, int k) {
    if (k < -1 || k > geom.n - 1) {
        throw DomainError("quermass_value: index must satisfy -1 <= k <= n-1");
    }
    return quermass_chain(geom, field, k)[static_cast<std::size_t>(k) + 1];
}

QuermassReport quermass_all(const GeometryFields& geom, const RadialField& field) {
    return build_report(geom, field, nullptr);
}

QuermassReport quermass_all(const GeometryFields& geom, const RadialField& field,
                            double r_guess) {
    return build_report(geom, field, &r_guess);
}

std::pair<double, double> variation_check(const GeometryFields& geom0,
                                          const RadialField& field0,
                                          const GeometryFields& geom1,
                                          const RadialField& field1,
                                          std::span<const double> normal_speed,
                                          double dt) {
    const int n = geom0.n;
    const AxiGrid& grid = *geom0.grid;
    if (static_cast<int>(normal_speed.size()) != grid.m) {
        throw ShapeError("variation_check: speed length does not match grid");
    }
    constexpr double kTiny = 1e-300;

    const double dvol = (volume(field1) - volume(field0)) / dt;
    const double i_vol = integrate_weighted(grid, normal_speed, geom0.dmu);
    const double res_vol = std::abs(dvol - i_vol) / std::max(std::abs(i_vol), kTiny);

    const double da = (quermass_value(geom1, field1, n - 2)
                       - quermass_value(geom0, field0, n - 2)) / dt;
    std::vector<double> fsig(normal_speed.size());
    for (int j = 0; j < grid.m; ++j) {
        fsig[j] = normal_speed[j] * geom0.sigma[static_cast<std::size_t>(n) - 1][j];
    }
    const double i_a = (n - 1) * integrate_weighted(grid, fsig, geom0.dmu);
    const double res_a = std::abs(da - i_a) / std::max(std::abs(i_a), kTiny);
    return {res_vol, res_a};
}

} // namespace hgflow
