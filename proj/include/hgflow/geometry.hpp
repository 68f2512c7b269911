#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hgflow/grid.hpp"

namespace hgflow {

/// First node (in ψ order) where uniform convexity fails, with its
/// principal curvatures. A signal, not an error: monitors must be able to
/// observe the failing state.
struct ConvexityLoss {
    int node;
    double kappa_m;
    double kappa_o;
};

/// Per-node extrinsic geometry of the radial graph over an AxiGrid.
/// kappa_m is the meridian principal curvature, kappa_o the orthogonal one
/// (multiplicity n-1); both are the closed-form eigenvalues of the
/// Weingarten matrix specialized to axisymmetric fields. sigma[k][j] holds
/// σ_k at node j, K = σ_n, H = σ_1, dmu = phi^{n-1} v (area element per unit
/// S^n measure), theta = u K^{1/n} (NaN on non-convex nodes).
struct GeometryFields {
    int n = 0;
    int m = 0;
    std::shared_ptr<const AxiGrid> grid;
    std::vector<double> rho, rho_p, rho_pp;
    std::vector<double> phi, phi_prime, v, w, u;
    std::vector<double> kappa_m, kappa_o;
    std::vector<double> H, K, K_inv_n; // K_inv_n = K^{1/n}
    std::vector<double> dmu, theta;
    std::vector<std::vector<double>> sigma; // sigma[k], k = 0..n
    std::optional<ConvexityLoss> convexity_loss;

    bool convex() const { return !convexity_loss.has_value(); }
    void resize(int n_dim, int m_nodes);
};

void compute_geometry(const RadialField& field, GeometryFields& out);
GeometryFields compute_geometry(const RadialField& field);

/// Relative residual of the Minkowski identity
/// (n-k) ∫ phi' σ_k dμ = (k+1) ∫ u σ_{k+1} dμ, 0 <= k <= n-1.
/// When the denominator degenerates the absolute residual is returned and
/// *absolute_flag (if given) is set.
double minkowski_residual(const GeometryFields& geom, int k,
                          bool* absolute_flag = nullptr);

/// max_j | ρ'²/(phi²+ρ'²) − (1 − (u/phi)²) |; an algebraic identity of the
/// discrete formulas, so this is a pure rounding check.
double gradient_identity_residual(const GeometryFields& geom);

} // namespace hgflow
