#include "hgflow/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hgflow/errors.hpp"
#include "hgflow/hyperbolic.hpp"

namespace hgflow {

namespace {

void require_length(const AxiGrid& grid, std::span<const double> f, const char* op) {
    if (static_cast<int>(f.size()) != grid.m) {
        std::ostringstream msg;
        msg << op << ": field length " << f.size() << " does not match grid m = " << grid.m;
        throw ShapeError(msg.str());
    }
}

double powi(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

} // namespace

AxiGrid build_grid(int n, int m) {
    if (n < 2) throw ConfigError("build_grid: dimension n must be >= 2");
    if (m < 16) throw ConfigError("build_grid: node count m must be >= 16");
    AxiGrid g;
    g.n = n;
    g.m = m;
    g.dpsi = std::numbers::pi / m;
    g.psi.resize(m);
    g.cot_psi.resize(m);
    g.quad_w.resize(m);
    const double omega_eq = unit_sphere_area(n - 1);
    for (int j = 0; j < m; ++j) {
        const double psi = (j + 0.5) * g.dpsi;
        g.psi[j] = psi;
        const double s = std::sin(psi);
        g.cot_psi[j] = std::cos(psi) / s;
        g.quad_w[j] = omega_eq * powi(s, n - 1) * g.dpsi;
    }
    return g;
}

std::shared_ptr<const AxiGrid> make_grid(int n, int m) {
    return std::make_shared<const AxiGrid>(build_grid(n, m));
}

void d_psi(const AxiGrid& grid, std::span<const double> f, std::span<double> out) {
    require_length(grid, f, "d_psi");
    require_length(grid, std::span<const double>(out.data(), out.size()), "d_psi");
    const int m = grid.m;
    const double inv = 1.0 / (2.0 * grid.dpsi);
    for (int j = 0; j < m; ++j) {
        const double fm = (j == 0) ? f[0] : f[j - 1];
        const double fp = (j == m - 1) ? f[m - 1] : f[j + 1];
        out[j] = (fp - fm) * inv;
    }
}

std::vector<double> d_psi(const AxiGrid& grid, std::span<const double> f) {
    std::vector<double> out(f.size());
    d_psi(grid, f, out);
    return out;
}

void d2_psi(const AxiGrid& grid, std::span<const double> f, std::span<double> out) {
    require_length(grid, f, "d2_psi");
    require_length(grid, std::span<const double>(out.data(), out.size()), "d2_psi");
    const int m = grid.m;
    const double inv = 1.0 / (grid.dpsi * grid.dpsi);
    for (int j = 0; j < m; ++j) {
        const double fm = (j == 0) ? f[0] : f[j - 1];
        const double fp = (j == m - 1) ? f[m - 1] : f[j + 1];
        out[j] = (fp - 2.0 * f[j] + fm) * inv;
    }
}

std::vector<double> d2_psi(const AxiGrid& grid, std::span<const double> f) {
    std::vector<double> out(f.size());
    d2_psi(grid, f, out);
    return out;
}

void sphere_hessian(const AxiGrid& grid, std::span<const double> f,
                    std::span<double> meridian, std::span<double> orth) {
    d2_psi(grid, f, meridian);
    const int m = grid.m;
    const double inv = 1.0 / (2.0 * grid.dpsi);
    for (int j = 0; j < m; ++j) {
        const double fm = (j == 0) ? f[0] : f[j - 1];
        const double fp = (j == m - 1) ? f[m - 1] : f[j + 1];
        orth[j] = grid.cot_psi[j] * (fp - fm) * inv;
    }
}

SphereHessian sphere_hessian(const AxiGrid& grid, std::span<const double> f) {
    SphereHessian h;
    h.meridian.resize(f.size());
    h.orth.resize(f.size());
    sphere_hessian(grid, f, h.meridian, h.orth);
    return h;
}

double integrate(const AxiGrid& grid, std::span<const double> values) {
    require_length(grid, values, "integrate");
    // Neumaier compensated sum in fixed node order.
    double sum = 0.0;
    double comp = 0.0;
    for (int j = 0; j < grid.m; ++j) {
        const double term = values[j] * grid.quad_w[j];
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double integrate_weighted(const AxiGrid& grid, std::span<const double> values,
                          std::span<const double> weight) {
    require_length(grid, values, "integrate_weighted");
    require_length(grid, weight, "integrate_weighted");
    double sum = 0.0;
    double comp = 0.0;
    for (int j = 0; j < grid.m; ++j) {
        const double term = values[j] * weight[j] * grid.quad_w[j];
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

RadialField constant_field(std::shared_ptr<const AxiGrid> grid, double r) {
    RadialField f;
    f.rho.assign(grid->m, r);
    f.grid = std::move(grid);
    return f;
}

} // namespace hgflow
