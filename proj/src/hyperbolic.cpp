#include "hgflow/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hgflow/errors.hpp"
#include "hgflow/quadrature.hpp"

namespace hgflow {

namespace {

double powi(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

} // namespace

WarpEval warp(double rho) {
    if (!std::isfinite(rho) || rho < 0.0) {
        throw DomainError("warp: radius must be finite and non-negative");
    }
    return {rho, std::sinh(rho), std::cosh(rho), std::cosh(rho) - 1.0};
}

double gamma_of_rho(double rho) {
    if (!std::isfinite(rho) || rho <= 0.0) {
        throw DomainError("gamma_of_rho: radius must be finite and positive");
    }
    return std::log(std::tanh(0.5 * rho));
}

double rho_of_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma >= 0.0) {
        throw DomainError("rho_of_gamma: gamma must be finite and negative");
    }
    return 2.0 * std::atanh(std::exp(gamma));
}

double unit_sphere_area(int n) {
    if (n < 0) throw DomainError("unit_sphere_area: dimension must be non-negative");
    const double half = 0.5 * (n + 1);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i);
        r /= static_cast<double>(i);
    }
    return r;
}

double sigma_k(std::span<const double> kappa, int k) {
    const int n = static_cast<int>(kappa.size());
    if (k < 0 || k > n) {
        throw DomainError("sigma_k: index must satisfy 0 <= k <= n");
    }
    // coefficients of Π(1 + κ_i t) up to degree k
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c[0] = 1.0;
    int used = 0;
    for (double ki : kappa) {
        ++used;
        for (int j = std::min(k, used); j >= 1; --j) {
            c[j] += ki * c[j - 1];
        }
    }
    return c[k];
}

SymFuncTable sigma_all(std::span<const double> kappa) {
    const int n = static_cast<int>(kappa.size());
    SymFuncTable t;
    t.n = n;
    t.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
    t.values[0] = 1.0;
    int used = 0;
    for (double ki : kappa) {
        ++used;
        for (int j = used; j >= 1; --j) {
            t.values[j] += ki * t.values[j - 1];
        }
    }
    return t;
}

double sigma_k_axisym(double kappa_m, double kappa_o, int n, int k) {
    if (n < 2) throw DomainError("sigma_k_axisym: dimension must be >= 2");
    if (k < 0 || k > n) {
        throw DomainError("sigma_k_axisym: index must satisfy 0 <= k <= n");
    }
    if (k == 0) return 1.0;
    return binomial(n - 1, k) * powi(kappa_o, k)
         + binomial(n - 1, k - 1) * kappa_m * powi(kappa_o, k - 1);
}

double sinh_pow_integral(int n, double r) {
    if (n < 0) throw DomainError("sinh_pow_integral: power must be non-negative");
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("sinh_pow_integral: upper limit must be finite and non-negative");
    }
    if (r == 0.0) return 0.0;
    return integrate_adaptive([n](double s) { return powi(std::sinh(s), n); }, 0.0, r);
}

double ball_quermass(int n, int k, double r) {
    if (n < 2) throw DomainError("ball_quermass: dimension must be >= 2");
    if (k < -1 || k > n - 1) {
        throw DomainError("ball_quermass: index must satisfy -1 <= k <= n-1");
    }
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("ball_quermass: radius must be finite and non-negative");
    }
    const double omega = unit_sphere_area(n);
    const double s = std::sinh(r);
    const double c = std::cosh(r);

    // curvature integral of σ_j over the boundary sphere, κ_i = coth r:
    // C(n,j) cosh^j r sinh^{n-j} r ω_n
    auto curv_integral = [&](int j) {
        return binomial(n, j) * omega * powi(c, j) * powi(s, n - j);
    };

    std::vector<double> a(static_cast<std::size_t>(k) + 2, 0.0); // a[j+1] = A_j
    a[0] = omega * sinh_pow_integral(n, r);                      // A_{-1} = |B_r|
    if (k >= 0) a[1] = omega * powi(s, n);                       // A_0 = |∂B_r|
    if (k >= 1) a[2] = curv_integral(1) - n * a[0];
    for (int j = 2; j <= k; ++j) {
        a[static_cast<std::size_t>(j) + 1] =
            curv_integral(j)
            - static_cast<double>(n - j + 1) / static_cast<double>(j - 1)
                  * a[static_cast<std::size_t>(j) - 1];
    }
    return a[static_cast<std::size_t>(k) + 1];
}

BallReference ball_reference(int n, int k, double r) {
    return {n, k, r, ball_quermass(n, k, r)};
}

double xi_inverse(int n, int k, double target) {
    double lo = kXiBracketLo;
    double hi = kXiBracketHi;
    double flo = ball_quermass(n, k, lo);
    double fhi = ball_quermass(n, k, hi);
    if (!(target >= flo && target <= fhi)) {
        std::ostringstream msg;
        msg << "xi_inverse: target " << target << " outside range of xi_" << k
            << " over bracket [" << lo << ", " << hi << "] = [" << flo << ", " << fhi << "]";
        throw RangeError(msg.str());
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ball_quermass(n, k, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double xi_volume_radius(int n, double target, double r_guess) {
    const double omega = unit_sphere_area(n);
    double r = std::clamp(r_guess, kXiBracketLo, kXiBracketHi);
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    for (int it = 0; it < 40; ++it) {
        const double f = omega * sinh_pow_integral(n, r) - target;
        if (std::abs(f) <= tol) return r;
        const double df = omega * powi(std::sinh(r), n);
        const double step = f / df;
        const double next = r - step;
        if (!std::isfinite(next) || next <= kXiBracketLo || next >= kXiBracketHi) break;
        r = next;
        if (std::abs(step) <= 1e-16 * std::max(1.0, r)) return r;
    }
    return xi_inverse(n, -1, target);
}

} // namespace hgflow
