#include "hgflow/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "hgflow/errors.hpp"

namespace hgflow {

namespace {

GaussLegendre make_rule(int n) {
    GaussLegendre rule;
    rule.x.assign(n, 0.0);
    rule.w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P_n'(x)
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussLegendre& gauss_legendre(int npts) {
    if (npts < 1) throw DomainError("gauss_legendre: order must be positive");
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(npts);
    if (it == cache.end()) {
        it = cache.emplace(npts, make_rule(npts)).first;
    }
    return it->second;
}

} // namespace hgflow
