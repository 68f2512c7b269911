// Independent test oracles. Everything here must stay decoupled from the
// implementation paths it checks: Simpson quadrature instead of
// Gauss-Legendre, subset enumeration instead of the polynomial recursion,
// and a generalized-eigenvalue route to the principal curvatures instead of
// the closed-form axisymmetric eigenvalues.
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------- Simpson
inline double simpson_segment(const std::function<double(double)>& f, double a,
                              double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_segment(f, a, m, fa, flm, fm);
    const double right = simpson_segment(f, m, b, fm, frm, fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth >= 40) {
        return left + right + err / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
         + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson_segment(f, a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

// ------------------------------------------------- brute-force sigma_k
inline double sigma_k_bruteforce(std::span<const double> kappa, int k) {
    const int n = static_cast<int>(kappa.size());
    if (k == 0) return 1.0;
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) prod *= kappa[static_cast<std::size_t>(i)];
        }
        total += prod;
    }
    return total;
}

// ------------------------------- generalized-eigenvalue Weingarten oracle
// Principal curvatures as eigenvalues of g^{-1} h with
//   g_ij = phi^2 δ_ij + ρ_i ρ_j,
//   h_ij = (−phi ρ_ij + 2 phi' ρ_i ρ_j + phi^2 phi' δ_ij) / sqrt(phi^2+|∇ρ|^2),
// solved via Cholesky of g and a Jacobi eigensolver on L^{-1} h L^{-T}.
// Inputs are the *analytic* gradient/Hessian of an axisymmetric field in a
// normal frame: grad = (rho_p, 0, ..., 0),
// hess = diag(rho_pp, cot(psi) rho_p, ..., cot(psi) rho_p).

template <int N>
using Mat = std::array<std::array<double, N>, N>;

template <int N>
std::array<double, N> jacobi_eigenvalues(Mat<N> a) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                const double t = (theta >= 0 ? 1.0 : -1.0)
                    / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < N; ++i) {
                    const double aip = a[i][p];
                    const double aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < N; ++i) {
                    const double api = a[p][i];
                    const double aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    std::array<double, N> ev{};
    for (int i = 0; i < N; ++i) ev[i] = a[i][i];
    return ev;
}

template <int N>
std::vector<double> weingarten_eigenvalues(double rho, double rho_p, double rho_pp,
                                           double cot_psi) {
    const double phi = std::sinh(rho);
    const double phip = std::cosh(rho);
    const double grad2 = rho_p * rho_p;
    const double v = std::sqrt(phi * phi + grad2);

    std::array<double, N> grad{};
    grad[0] = rho_p;
    Mat<N> hess{};
    hess[0][0] = rho_pp;
    for (int i = 1; i < N; ++i) hess[i][i] = cot_psi * rho_p;

    Mat<N> g{};
    Mat<N> h{};
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            g[i][j] = phi * phi * delta + grad[i] * grad[j];
            h[i][j] = (-phi * hess[i][j] + 2.0 * phip * grad[i] * grad[j]
                       + phi * phi * phip * delta) / v;
        }
    }

    // Cholesky g = L L^T
    Mat<N> L{};
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = g[i][j];
            for (int k = 0; k < j; ++k) sum -= L[i][k] * L[j][k];
            if (i == j) {
                L[i][j] = std::sqrt(sum);
            } else {
                L[i][j] = sum / L[j][j];
            }
        }
    }
    // B = L^{-1} h L^{-T}: solve L Y = h, then L Z^T = Y^T
    Mat<N> y{};
    for (int col = 0; col < N; ++col) {
        for (int i = 0; i < N; ++i) {
            double sum = h[i][col];
            for (int k = 0; k < i; ++k) sum -= L[i][k] * y[k][col];
            y[i][col] = sum / L[i][i];
        }
    }
    Mat<N> b{};
    for (int row = 0; row < N; ++row) {
        for (int i = 0; i < N; ++i) {
            double sum = y[row][i];
            for (int k = 0; k < i; ++k) sum -= L[i][k] * b[row][k];
            b[row][i] = sum / L[i][i];
        }
    }
    auto ev = jacobi_eigenvalues<N>(b);
    return std::vector<double>(ev.begin(), ev.end());
}

} // namespace oracles
