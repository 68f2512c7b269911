#include "hgflow/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hgflow/errors.hpp"
#include "hgflow/geometry.hpp"

namespace hgflow {

namespace {

// Solve cosh r = cosh d cosh ρ − sinh d sinh ρ cos ψ for ρ by safeguarded
// Newton; the root lies in [r−d, r+d] by the triangle inequality.
double offcenter_radius(double r, double d, double cos_psi) {
    if (d == 0.0) return r;
    const double cd = std::cosh(d);
    const double sd = std::sinh(d);
    const double target = std::cosh(r);
    auto f = [&](double rho) {
        return cd * std::cosh(rho) - sd * std::sinh(rho) * cos_psi - target;
    };
    double lo = r - d;
    double hi = r + d;
    double rho = r + d * cos_psi; // first-order start
    for (int it = 0; it < 100; ++it) {
        const double val = f(rho);
        if (std::abs(val) <= 1e-12 * std::max(1.0, target)) return rho;
        if (val > 0.0) {
            hi = rho;
        } else {
            lo = rho;
        }
        const double df = cd * std::sinh(rho) - sd * std::cosh(rho) * cos_psi;
        double next = rho - val / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        rho = next;
    }
    return rho;
}

// Zero-slope clamped cubic spline through (x_i, y_i).
struct ClampedSpline {
    std::vector<double> x, y, m2; // m2 = second derivatives at knots

    double eval(double xq) const {
        const auto it = std::upper_bound(x.begin(), x.end(), xq);
        std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        i = std::min(i, x.size() - 2);
        const double h = x[i + 1] - x[i];
        const double a = (x[i + 1] - xq) / h;
        const double b = (xq - x[i]) / h;
        return a * y[i] + b * y[i + 1]
             + ((a * a * a - a) * m2[i] + (b * b * b - b) * m2[i + 1]) * h * h / 6.0;
    }
};

ClampedSpline build_spline(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    // tridiagonal system for second derivatives, clamped y'(x0)=y'(xn)=0
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), rhs(n, 0.0);
    const double h0 = x[1] - x[0];
    b[0] = 2.0 * h0;
    c[0] = h0;
    rhs[0] = 6.0 * ((y[1] - y[0]) / h0 - 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1];
        const double hp = x[i + 1] - x[i];
        a[i] = hm;
        b[i] = 2.0 * (hm + hp);
        c[i] = hp;
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / hp - (y[i] - y[i - 1]) / hm);
    }
    const double hn = x[n - 1] - x[n - 2];
    a[n - 1] = hn;
    b[n - 1] = 2.0 * hn;
    rhs[n - 1] = 6.0 * (0.0 - (y[n - 1] - y[n - 2]) / hn);
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> m2(n);
    m2[n - 1] = rhs[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        m2[i] = (rhs[i] - c[i] * m2[i + 1]) / b[i];
    }
    return {x, y, std::move(m2)};
}

void validate_field(const RadialField& field) {
    for (int j = 0; j < field.grid->m; ++j) {
        if (!std::isfinite(field.rho[j]) || field.rho[j] <= 0.0) {
            std::ostringstream msg;
            msg << "shape rejected: positivity fails at node " << j << " (psi = "
                << field.grid->psi[j] << ", rho = " << field.rho[j] << ")";
            throw ShapeRejectionError(msg.str());
        }
    }
    const GeometryFields geom = compute_geometry(field);
    if (!geom.convex()) {
        const ConvexityLoss& loss = *geom.convexity_loss;
        std::ostringstream msg;
        msg << "shape rejected: convexity fails at node " << loss.node
            << " (kappa_m = " << loss.kappa_m << ", kappa_o = " << loss.kappa_o << ")";
        throw ShapeRejectionError(msg.str());
    }
}

} // namespace

std::string shape_kind(const ShapeSpec& spec) {
    if (std::holds_alternative<SphereShape>(spec)) return "sphere";
    if (std::holds_alternative<CosineShape>(spec)) return "cosine";
    if (std::holds_alternative<OffcenterShape>(spec)) return "offcenter";
    return "custom-table";
}

RadialField make_shape(const ShapeSpec& spec, std::shared_ptr<const AxiGrid> grid) {
    RadialField field;
    field.rho.resize(static_cast<std::size_t>(grid->m));

    if (const auto* sphere = std::get_if<SphereShape>(&spec)) {
        if (!(sphere->r > 0.0) || !std::isfinite(sphere->r)) {
            throw ConfigError("sphere shape: r must be positive and finite");
        }
        std::fill(field.rho.begin(), field.rho.end(), sphere->r);
    } else if (const auto* cosine = std::get_if<CosineShape>(&spec)) {
        if (!(cosine->r0 > 0.0) || !std::isfinite(cosine->r0)) {
            throw ConfigError("cosine shape: r0 must be positive and finite");
        }
        if (!(std::abs(cosine->eps) < cosine->r0)) {
            throw ConfigError("cosine shape: require |eps| < r0 so the field stays positive");
        }
        if (cosine->mode != 1 && cosine->mode != 2) {
            throw ConfigError("cosine shape: mode must be 1 or 2");
        }
        for (int j = 0; j < grid->m; ++j) {
            field.rho[j] = cosine->r0 + cosine->eps * std::cos(cosine->mode * grid->psi[j]);
        }
    } else if (const auto* off = std::get_if<OffcenterShape>(&spec)) {
        if (!(off->r > 0.0) || !std::isfinite(off->r)) {
            throw ConfigError("offcenter shape: r must be positive and finite");
        }
        if (!(off->d >= 0.0 && off->d < off->r)) {
            throw ConfigError("offcenter shape: require 0 <= d < r (origin inside the sphere)");
        }
        for (int j = 0; j < grid->m; ++j) {
            field.rho[j] = offcenter_radius(off->r, off->d, std::cos(grid->psi[j]));
        }
    } else {
        const auto& table = std::get<TableShape>(spec);
        if (table.psi.size() != table.rho.size()) {
            throw ConfigError("custom-table shape: psi and rho must have equal length");
        }
        if (table.psi.size() < 4) {
            throw ConfigError("custom-table shape: need at least 4 samples");
        }
        for (std::size_t i = 1; i < table.psi.size(); ++i) {
            if (!(table.psi[i] > table.psi[i - 1])) {
                throw ConfigError("custom-table shape: psi must be strictly increasing");
            }
        }
        if (std::abs(table.psi.front()) > 1e-9
            || std::abs(table.psi.back() - std::numbers::pi) > 1e-9) {
            throw ConfigError("custom-table shape: psi must span [0, pi]");
        }
        const ClampedSpline spline = build_spline(table.psi, table.rho);
        for (int j = 0; j < grid->m; ++j) {
            field.rho[j] = spline.eval(grid->psi[j]);
        }
    }

    field.grid = std::move(grid);
    validate_field(field);
    return field;
}

} // namespace hgflow
