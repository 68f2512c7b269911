// Compiled with vectorized math flags (see src/CMakeLists.txt). No
// NaN/Inf-dependent control flow is allowed in this translation unit;
// validity scans live in the IEEE-compiled callers.

#include "hgflow/kernels.hpp"

#include <cmath>

#include "hgflow/quadrature.hpp"

namespace hgflow::kernels {

namespace {

template <int P>
inline double powc(double x) {
    if constexpr (P == 0) {
        return 1.0;
    } else if constexpr (P % 2 == 0) {
        const double h = powc<P / 2>(x);
        return h * h;
    } else {
        return x * powc<P - 1>(x);
    }
}

inline double powi(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

template <int N>
void curvature_impl(int m, const double* rho, const double* rho_p,
                    const double* rho_pp, const double* cot_psi, double* phi,
                    double* phi_prime, double* v, double* w, double* u,
                    double* kappa_m, double* kappa_o, double* dmu) {
    for (int j = 0; j < m; ++j) {
        const double s = std::sinh(rho[j]);
        const double c = std::cosh(rho[j]);
        const double rp = rho_p[j];
        const double rpp = rho_pp[j];
        const double s2 = s * s;
        const double vv = std::sqrt(s2 + rp * rp);
        const double inv_den = 1.0 / (s2 * vv);
        phi[j] = s;
        phi_prime[j] = c;
        v[j] = vv;
        w[j] = vv / s;
        u[j] = s2 / vv;
        kappa_o[j] = (s2 * c - s * cot_psi[j] * rp) * inv_den;
        const double proj = 1.0 - (rp * rp) / (vv * vv);
        kappa_m[j] = proj * (-s * rpp + 2.0 * c * rp * rp + s2 * c) * inv_den;
        dmu[j] = powc<N - 1>(s) * vv;
    }
}

void curvature_generic(int n, int m, const double* rho, const double* rho_p,
                       const double* rho_pp, const double* cot_psi, double* phi,
                       double* phi_prime, double* v, double* w, double* u,
                       double* kappa_m, double* kappa_o, double* dmu) {
    for (int j = 0; j < m; ++j) {
        const double s = std::sinh(rho[j]);
        const double c = std::cosh(rho[j]);
        const double rp = rho_p[j];
        const double rpp = rho_pp[j];
        const double s2 = s * s;
        const double vv = std::sqrt(s2 + rp * rp);
        const double inv_den = 1.0 / (s2 * vv);
        phi[j] = s;
        phi_prime[j] = c;
        v[j] = vv;
        w[j] = vv / s;
        u[j] = s2 / vv;
        kappa_o[j] = (s2 * c - s * cot_psi[j] * rp) * inv_den;
        const double proj = 1.0 - (rp * rp) / (vv * vv);
        kappa_m[j] = proj * (-s * rpp + 2.0 * c * rp * rp + s2 * c) * inv_den;
        dmu[j] = powi(s, n - 1) * vv;
    }
}

template <int N>
void cumulative_impl(int m, const double* rho, double* out, const double* gx,
                     const double* gw) {
    for (int j = 0; j < m; ++j) {
        const double a = 0.5 * rho[j];
        double acc = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double s = std::sinh(a * (gx[i] + 1.0));
            acc += gw[i] * powc<N>(s);
        }
        out[j] = a * acc;
    }
}

void cumulative_generic(int n, int m, const double* rho, double* out,
                        const double* gx, const double* gw) {
    for (int j = 0; j < m; ++j) {
        const double a = 0.5 * rho[j];
        double acc = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double s = std::sinh(a * (gx[i] + 1.0));
            acc += gw[i] * powi(s, n);
        }
        out[j] = a * acc;
    }
}

} // namespace

void curvature(int n, int m, const double* rho, const double* rho_p,
               const double* rho_pp, const double* cot_psi, double* phi,
               double* phi_prime, double* v, double* w, double* u,
               double* kappa_m, double* kappa_o, double* dmu) {
    switch (n) {
        case 2:
            curvature_impl<2>(m, rho, rho_p, rho_pp, cot_psi, phi, phi_prime, v, w, u,
                              kappa_m, kappa_o, dmu);
            break;
        case 3:
            curvature_impl<3>(m, rho, rho_p, rho_pp, cot_psi, phi, phi_prime, v, w, u,
                              kappa_m, kappa_o, dmu);
            break;
        case 4:
            curvature_impl<4>(m, rho, rho_p, rho_pp, cot_psi, phi, phi_prime, v, w, u,
                              kappa_m, kappa_o, dmu);
            break;
        case 5:
            curvature_impl<5>(m, rho, rho_p, rho_pp, cot_psi, phi, phi_prime, v, w, u,
                              kappa_m, kappa_o, dmu);
            break;
        default:
            curvature_generic(n, m, rho, rho_p, rho_pp, cot_psi, phi, phi_prime, v, w,
                              u, kappa_m, kappa_o, dmu);
            break;
    }
}

void pow_inv_n(int n, int m, const double* K, double* out) {
    const double inv_n = 1.0 / n;
    for (int j = 0; j < m; ++j) {
        const double k = (K[j] > 0.0) ? K[j] : 1.0;
        out[j] = std::exp(std::log(k) * inv_n);
    }
}

void sinh_pow_cumulative(int n, int m, const double* rho, double* out) {
    const GaussLegendre& rule = gauss_legendre(32);
    const double* gx = rule.x.data();
    const double* gw = rule.w.data();
    switch (n) {
        case 2: cumulative_impl<2>(m, rho, out, gx, gw); break;
        case 3: cumulative_impl<3>(m, rho, out, gx, gw); break;
        case 4: cumulative_impl<4>(m, rho, out, gx, gw); break;
        case 5: cumulative_impl<5>(m, rho, out, gx, gw); break;
        default: cumulative_generic(n, m, rho, out, gx, gw); break;
    }
}

} // namespace hgflow::kernels
