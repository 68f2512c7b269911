#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hgflow/grid.hpp"

namespace hgflow {

struct SphereShape {
    double r = 1.0;
};

/// ρ(ψ) = r0 + eps cos(mode ψ), mode in {1, 2}.
struct CosineShape {
    double r0 = 1.0;
    double eps = 0.2;
    int mode = 1;
};

/// Geodesic sphere of radius r centered at distance d along the ψ = 0 axis;
/// ρ(ψ) solves cosh r = cosh d cosh ρ − sinh d sinh ρ cos ψ. Requires d < r
/// so the origin stays inside.
struct OffcenterShape {
    double r = 1.0;
    double d = 0.0;
};

/// Tabulated ρ(ψ) interpolated by a zero-slope clamped cubic spline
/// (ρ'(0) = ρ'(π) = 0). psi must be strictly increasing and span [0, π].
struct TableShape {
    std::vector<double> psi;
    std::vector<double> rho;
};

using ShapeSpec = std::variant<SphereShape, CosineShape, OffcenterShape, TableShape>;

std::string shape_kind(const ShapeSpec& spec);

/// Builds the radial field and validates the hypotheses: positivity first,
/// then uniform convexity at the configured grid. Rejections name the
/// violated hypothesis and the first offending node.
RadialField make_shape(const ShapeSpec& spec, std::shared_ptr<const AxiGrid> grid);

} // namespace hgflow
