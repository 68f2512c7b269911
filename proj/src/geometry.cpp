#include "hgflow/geometry.hpp"

#include <cmath>
#include <limits>

#include "hgflow/errors.hpp"
#include "hgflow/hyperbolic.hpp"
#include "hgflow/kernels.hpp"

namespace hgflow {

void GeometryFields::resize(int n_dim, int m_nodes) {
    n = n_dim;
    m = m_nodes;
    const auto sz = static_cast<std::size_t>(m_nodes);
    for (auto* vec : {&rho, &rho_p, &rho_pp, &phi, &phi_prime, &v, &w, &u,
                      &kappa_m, &kappa_o, &H, &K, &K_inv_n, &dmu, &theta}) {
        vec->resize(sz);
    }
    sigma.resize(static_cast<std::size_t>(n_dim) + 1);
    for (auto& s : sigma) s.resize(sz);
    convexity_loss.reset();
}

void compute_geometry(const RadialField& field, GeometryFields& out) {
    const AxiGrid& grid = *field.grid;
    const int n = grid.n;
    const int m = grid.m;
    if (static_cast<int>(field.rho.size()) != m) {
        throw ShapeError("compute_geometry: field length does not match grid");
    }
    out.resize(n, m);
    out.grid = field.grid;
    out.rho = field.rho;
    d_psi(grid, field.rho, out.rho_p);
    d2_psi(grid, field.rho, out.rho_pp);

    kernels::curvature(n, m, out.rho.data(), out.rho_p.data(), out.rho_pp.data(),
                       grid.cot_psi.data(), out.phi.data(), out.phi_prime.data(),
                       out.v.data(), out.w.data(), out.u.data(), out.kappa_m.data(),
                       out.kappa_o.data(), out.dmu.data());

    // σ_k(κ_m, κ_o, ..., κ_o) via running powers of κ_o
    std::vector<double> b_orth(static_cast<std::size_t>(n) + 1);
    std::vector<double> b_merid(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        b_orth[k] = binomial(n - 1, k);
        b_merid[k] = binomial(n - 1, k - 1);
    }
    for (int j = 0; j < m; ++j) {
        const double km = out.kappa_m[j];
        const double ko = out.kappa_o[j];
        double ko_pow = 1.0; // κ_o^{k-1} at loop entry
        out.sigma[0][j] = 1.0;
        for (int k = 1; k <= n; ++k) {
            out.sigma[k][j] = b_orth[k] * ko_pow * ko + b_merid[k] * km * ko_pow;
            ko_pow *= ko;
        }
        out.H[j] = out.sigma[1][j];
        out.K[j] = out.sigma[n][j];
    }

    kernels::pow_inv_n(n, m, out.K.data(), out.K_inv_n.data());

    out.convexity_loss.reset();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j < m; ++j) {
        if (out.kappa_m[j] <= 0.0 || out.kappa_o[j] <= 0.0 || out.K[j] <= 0.0) {
            if (!out.convexity_loss) {
                out.convexity_loss = ConvexityLoss{j, out.kappa_m[j], out.kappa_o[j]};
            }
            out.K_inv_n[j] = nan;
            out.theta[j] = nan;
        } else {
            out.theta[j] = out.u[j] * out.K_inv_n[j];
        }
    }
}

GeometryFields compute_geometry(const RadialField& field) {
    GeometryFields out;
    compute_geometry(field, out);
    return out;
}

double minkowski_residual(const GeometryFields& geom, int k, bool* absolute_flag) {
    const int n = geom.n;
    if (k < 0 || k > n - 1) {
        throw DomainError("minkowski_residual: index must satisfy 0 <= k <= n-1");
    }
    if (absolute_flag) *absolute_flag = false;
    const AxiGrid& grid = *geom.grid;
    const int m = geom.m;
    std::vector<double> lhs(static_cast<std::size_t>(m));
    std::vector<double> rhs(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        lhs[j] = geom.phi_prime[j] * geom.sigma[k][j];
        rhs[j] = geom.u[j] * geom.sigma[k + 1][j];
    }
    const double i_lhs = integrate_weighted(grid, lhs, geom.dmu);
    const double i_rhs = integrate_weighted(grid, rhs, geom.dmu);
    const double num = (n - k) * i_lhs - (k + 1) * i_rhs;
    const double den = (n - k) * i_lhs;
    if (std::abs(den) < 1e-300) {
        if (absolute_flag) *absolute_flag = true;
        return std::abs(num);
    }
    return num / den;
}

double gradient_identity_residual(const GeometryFields& geom) {
    double worst = 0.0;
    for (int j = 0; j < geom.m; ++j) {
        const double rp2 = geom.rho_p[j] * geom.rho_p[j];
        const double phi2 = geom.phi[j] * geom.phi[j];
        const double lhs = rp2 / (phi2 + rp2);
        const double ratio = geom.u[j] / geom.phi[j];
        const double rhs = 1.0 - ratio * ratio;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

} // namespace hgflow
