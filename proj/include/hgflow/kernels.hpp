#pragma once

namespace hgflow::kernels {

// Hot per-node loops, kept free of branching on data so the translation unit
// can be compiled with vectorized math. All pointers address arrays of
// length m; inputs must be finite and rho strictly positive (callers
// validate).

/// Extrinsic geometry core of the radial graph. Writes, per node:
///   phi = sinh ρ, phi_prime = cosh ρ,
///   v = sqrt(phi² + ρ'²), w = v/phi, u = phi²/v,
///   kappa_o = (phi² phi' − phi cotψ ρ') / (phi² v),
///   kappa_m = (1 − ρ'²/v²)(−phi ρ'' + 2 phi' ρ'² + phi² phi') / (phi² v),
///   dmu = phi^{n−1} v.
void curvature(int n, int m, const double* rho, const double* rho_p,
               const double* rho_pp, const double* cot_psi, double* phi,
               double* phi_prime, double* v, double* w, double* u,
               double* kappa_m, double* kappa_o, double* dmu);

/// out_j = K_j^{1/n} as exp(log K_j / n). Nodes with K_j <= 0 receive a
/// placeholder value of 1; callers overwrite those after the convexity scan.
void pow_inv_n(int n, int m, const double* K, double* out);

/// out_j = ∫_0^{rho_j} sinh^n s ds by a fixed 32-point Gauss-Legendre rule
/// rescaled to [0, rho_j].
void sinh_pow_cumulative(int n, int m, const double* rho, double* out);

} // namespace hgflow::kernels
