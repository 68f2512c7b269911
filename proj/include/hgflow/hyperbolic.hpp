#pragma once

#include <span>
#include <vector>

namespace hgflow {

/// Warp-factor bundle of the hyperbolic metric dρ² + sinh²ρ g_{S^n} at one
/// radius: phi = sinh ρ, phi_prime = cosh ρ, Phi = cosh ρ − 1 (the primitive
/// of phi vanishing at 0).
struct WarpEval {
    double rho;
    double phi;
    double phi_prime;
    double Phi;
};

WarpEval warp(double rho);

/// γ(ρ) with dγ/dρ = 1/sinh ρ, normalized to the antiderivative
/// log tanh(ρ/2); strictly increasing bijection (0,∞) -> (-∞,0).
double gamma_of_rho(double rho);
double rho_of_gamma(double gamma);

/// Area of the unit n-sphere, 2 π^{(n+1)/2} / Γ((n+1)/2).
double unit_sphere_area(int n);

double binomial(int n, int k);

/// Elementary symmetric polynomials σ_0..σ_n of a principal-curvature vector.
struct SymFuncTable {
    int n = 0;
    std::vector<double> values; // values[k] = σ_k, k = 0..n
};

double sigma_k(std::span<const double> kappa, int k);
SymFuncTable sigma_all(std::span<const double> kappa);

/// σ_k for the axisymmetric spectrum κ = (κ_m, κ_o, ..., κ_o):
/// C(n−1,k) κ_o^k + C(n−1,k−1) κ_m κ_o^{k−1}.
double sigma_k_axisym(double kappa_m, double kappa_o, int n, int k);

/// ∫_0^r sinh^n s ds by adaptive Gauss-Legendre quadrature.
double sinh_pow_integral(int n, double r);

/// Quermassintegral ξ_k(r) of the geodesic ball of radius r in H^{n+1},
/// k in {-1, 0, ..., n-1}. Seeded with the volume and area quadratures and
/// closed by the curvature-integral recursion.
double ball_quermass(int n, int k, double r);

/// One tabulated value of ξ_k.
struct BallReference {
    int n;
    int k;
    double r;
    double value;
};

BallReference ball_reference(int n, int k, double r);

inline constexpr double kXiBracketLo = 1e-6;
inline constexpr double kXiBracketHi = 20.0;

/// Inverse of the monotone ξ_k by bisection on [kXiBracketLo, kXiBracketHi].
/// Throws RangeError (reporting the evaluated bracket values) when the target
/// lies outside the bracket's range.
double xi_inverse(int n, int k, double target);

/// Warm-started Newton inverse of ξ_{-1} (derivative ω_n sinh^n r is closed
/// form). Falls back to xi_inverse when the iteration leaves the bracket.
double xi_volume_radius(int n, double target, double r_guess);

} // namespace hgflow
