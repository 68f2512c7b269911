#pragma once

#include <memory>
#include <span>
#include <vector>

namespace hgflow {

/// Axisymmetric discretization of S^n by polar angle ψ in (0, π):
/// cell-centered uniform nodes ψ_j = (j+1/2) Δψ, Δψ = π/m, with midpoint
/// quadrature weights ω_{n-1} sin^{n-1}(ψ_j) Δψ against the S^n measure.
/// No node sits on a pole, so cot ψ stays finite everywhere.
struct AxiGrid {
    int n = 0; // hypersurface dimension
    int m = 0; // interior node count
    double dpsi = 0.0;
    std::vector<double> psi;
    std::vector<double> cot_psi;
    std::vector<double> quad_w;
};

AxiGrid build_grid(int n, int m);
std::shared_ptr<const AxiGrid> make_grid(int n, int m);

/// Second-order centered first derivative in ψ with even-reflection ghosts
/// across both poles (the smooth axisymmetric extension has ρ'(0)=ρ'(π)=0).
void d_psi(const AxiGrid& grid, std::span<const double> f, std::span<double> out);
std::vector<double> d_psi(const AxiGrid& grid, std::span<const double> f);

/// Second-order centered second derivative, same ghost treatment.
void d2_psi(const AxiGrid& grid, std::span<const double> f, std::span<double> out);
std::vector<double> d2_psi(const AxiGrid& grid, std::span<const double> f);

/// Spherical Hessian of an axisymmetric function: meridian component f'' and
/// orthogonal component cot(ψ) f' (multiplicity n-1). The orthogonal part is
/// evaluated from the reflected stencil, which keeps it finite and
/// second-order accurate up to the poles since f' = O(ψ) there.
struct SphereHessian {
    std::vector<double> meridian;
    std::vector<double> orth;
};

SphereHessian sphere_hessian(const AxiGrid& grid, std::span<const double> f);
void sphere_hessian(const AxiGrid& grid, std::span<const double> f,
                    std::span<double> meridian, std::span<double> orth);

/// ∫_{S^n} f dσ for axisymmetric f (compensated fixed-order sum, so results
/// are bit-reproducible regardless of how callers partition node work).
double integrate(const AxiGrid& grid, std::span<const double> values);

/// Compensated dot product Σ values_j · weight_j · quad_w_j.
double integrate_weighted(const AxiGrid& grid, std::span<const double> values,
                          std::span<const double> weight);

/// Radial-graph field ρ(ψ_j) over an AxiGrid at one simulation time.
struct RadialField {
    std::shared_ptr<const AxiGrid> grid;
    std::vector<double> rho;
    double time = 0.0;
};

RadialField constant_field(std::shared_ptr<const AxiGrid> grid, double r);

} // namespace hgflow
