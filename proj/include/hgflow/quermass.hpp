#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hgflow/geometry.hpp"
#include "hgflow/grid.hpp"

namespace hgflow {

/// Quermassintegrals of one state plus its Minkowski residuals and
/// Alexandrov-Fenchel gap. A holds A_{-1}..A_{n-1} (use a(k)); mink_res
/// holds the relative residuals for k = 0..n-1; r_equiv is the
/// volume-equivalent ball radius ξ_{-1}^{-1}(A_{-1}) and
/// af_gap = A_{n-2} − ξ_{n-2}(r_equiv).
struct QuermassReport {
    int n = 0;
    std::vector<double> A;
    std::vector<double> mink_res;
    double af_gap = 0.0;
    double r_equiv = 0.0;

    double a(int k) const { return A[static_cast<std::size_t>(k) + 1]; }
};

/// |Ω| for the star-shaped domain under ρ: ∫_{S^n} ∫_0^{ρ(ψ)} sinh^n s ds dσ,
/// inner integral by 32-point Gauss-Legendre per node.
double volume(const RadialField& field);

/// A_k for one k via the curvature-integral recursion seeded with the volume
/// and area quadratures.
double quermass_value(const GeometryFields& geom, const RadialField& field, int k);

QuermassReport quermass_all(const GeometryFields& geom, const RadialField& field);

/// Same report, but r_equiv found by Newton warm-started at r_guess (used by
/// per-step monitors; identical result to the bisection path).
QuermassReport quermass_all(const GeometryFields& geom, const RadialField& field,
                            double r_guess);

/// Residuals of the variational formulas over one time step:
///   |ΔA_{-1}/dt − ∫ f dμ|        / max(|∫ f dμ|, tiny)
///   |ΔA_{n-2}/dt − (n-1)∫ f σ_{n-1} dμ| / max(|…|, tiny)
/// where f is the per-node normal speed at the earlier state.
std::pair<double, double> variation_check(const GeometryFields& geom0,
                                          const RadialField& field0,
                                          const GeometryFields& geom1,
                                          const RadialField& field1,
                                          std::span<const double> normal_speed,
                                          double dt);

} // namespace hgflow
