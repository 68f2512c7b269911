#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hgflow {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached rule of the given order (nodes by Newton iteration on P_n).
const GaussLegendre& gauss_legendre(int npts);

template <class F>
double gauss_legendre_eval(F&& f, double a, double b, const GaussLegendre& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        acc += rule.w[i] * f(mid + half * rule.x[i]);
    }
    return half * acc;
}

/// Adaptive Gauss-Legendre integration by interval halving. A segment is
/// accepted when its embedded GL16-vs-GL32 discrepancy is below the segment's
/// share of the absolute tolerance (with a relative floor so very large
/// integrals still terminate).
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (a == b) return 0.0;
    const GaussLegendre& coarse = gauss_legendre(16);
    const GaussLegendre& fine = gauss_legendre(32);

    struct Segment {
        double a, b, tol;
        int depth;
    };
    std::vector<Segment> stack;
    stack.push_back({a, b, abs_tol, 0});
    double total = 0.0;
    while (!stack.empty()) {
        Segment seg = stack.back();
        stack.pop_back();
        const double i_coarse = gauss_legendre_eval(f, seg.a, seg.b, coarse);
        const double i_fine = gauss_legendre_eval(f, seg.a, seg.b, fine);
        const double err = std::abs(i_fine - i_coarse);
        // relative floor: the embedded estimate bottoms out at accumulated
        // rounding (~a few 1e-15 of the segment integral), which scales with
        // the segment exactly like the halved tolerance does
        if (err <= seg.tol || err <= 1e-13 * std::abs(i_fine) || seg.depth >= 30) {
            total += i_fine;
            continue;
        }
        const double mid = 0.5 * (seg.a + seg.b);
        stack.push_back({seg.a, mid, 0.5 * seg.tol, seg.depth + 1});
        stack.push_back({mid, seg.b, 0.5 * seg.tol, seg.depth + 1});
    }
    return total;
}

} // namespace hgflow
