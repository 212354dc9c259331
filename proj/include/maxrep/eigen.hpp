#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "maxrep/matrix.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

struct EigenSym {
    std::vector<double> values; // descending
    MatD vectors;               // orthonormal columns, matching order
};

/// Cyclic Jacobi on a symmetric matrix. Rotations sweep until every
/// off-diagonal entry is below eps * ||S||. Dimensions here never exceed
/// 24, so simplicity wins over anything clever.
inline EigenSym sym_eigen(const MatD& s, double eps = tolerance()) {
    if (!s.square()) throw std::invalid_argument("sym_eigen: non-square input");
    const int n = s.rows();
    double sym_residual = (s - s.transpose()).max_abs();
    double scale = std::max(s.max_abs(), 1e-300);
    if (sym_residual > 1e3 * eps * scale)
        throw std::invalid_argument("sym_eigen: input is not symmetric");

    MatD a = s;
    MatD v = MatD::identity(n);
    const double thresh = eps * scale;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < thresh) {
            EigenSym result;
            result.values.resize(n);
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
            result.vectors = MatD(n, n);
            for (int k = 0; k < n; ++k) {
                result.values[k] = a(order[k], order[k]);
                for (int i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
            }
            return result;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) < 1e-2 * thresh) continue;
                double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - sn * aqj;
                    a(q, j) = sn * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
    }
    throw std::runtime_error("sym_eigen: Jacobi iteration did not converge within sweep budget");
}

/// P^t for symmetric positive definite P, through the eigendecomposition.
inline MatD spd_power(const MatD& p, double t, double eps = tolerance()) {
    EigenSym e = sym_eigen(p, eps);
    const int n = p.rows();
    for (double lam : e.values)
        if (lam <= eps) throw std::invalid_argument("spd_power: input is not positive definite");
    MatD d(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = std::pow(e.values[i], t);
    return e.vectors * d * e.vectors.transpose();
}

/// sup_x sqrt(x^T G2 x / x^T G1 x) for SPD Gram matrices G1, G2.
inline double rel_operator_norm(const MatD& g1, const MatD& g2, double eps = tolerance()) {
    if (g1.rows() != g2.rows() || !g1.square() || !g2.square())
        throw std::invalid_argument("rel_operator_norm: shape mismatch");
    MatD w = spd_power(g1, -0.5, eps);
    MatD m = w * g2 * w; // symmetric, eigenvalues = generalized eigenvalues
    EigenSym e = sym_eigen(m, eps);
    if (e.values.back() <= eps)
        throw std::invalid_argument("rel_operator_norm: second form is not positive definite");
    return std::sqrt(e.values.front());
}

struct EigenHerm {
    std::vector<double> values; // descending
    CMat vectors;               // unitary columns
};

/// Jacobi for complex Hermitian matrices (phase rotation + real rotation
/// per 2x2 pivot block).
inline EigenHerm herm_eigen(const CMat& h, double eps = tolerance()) {
    if (!h.square()) throw std::invalid_argument("herm_eigen: non-square input");
    const int n = h.rows();
    if ((h - adjoint(h)).max_abs() > 1e3 * eps * std::max(h.max_abs(), 1e-300))
        throw std::invalid_argument("herm_eigen: input is not Hermitian");
    CMat a = h;
    CMat v = CMat::identity(n);
    const double thresh = eps * std::max(h.max_abs(), 1e-300);
    const int max_sweeps = 100;
    using C = std::complex<double>;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < thresh) {
            EigenHerm result;
            result.values.resize(n);
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
            result.vectors = CMat(n, n);
            for (int k = 0; k < n; ++k) {
                result.values[k] = a(order[k], order[k]).real();
                for (int i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
            }
            return result;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                C apq = a(p, q);
                double g = std::abs(apq);
                if (g < 1e-2 * thresh) continue;
                C phase = apq / g;
                double alpha = a(p, p).real(), beta = a(q, q).real();
                double tau = (beta - alpha) / (2.0 * g);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * c;
                // columns: col_p <- c*col_p - conj(s*phase)*col_q ... realized via
                // the unitary R with R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase), R(q,q)=c
                C rpq = sn * phase;
                C rqp = -sn * std::conj(phase);
                for (int i = 0; i < n; ++i) { // A <- A R
                    C aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + rqp * aiq;
                    a(i, q) = rpq * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) { // A <- R* A
                    C apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(rqp) * aqj;
                    a(q, j) = std::conj(rpq) * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) { // V <- V R
                    C vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + rqp * viq;
                    v(i, q) = rpq * vip + c * viq;
                }
            }
    }
    throw std::runtime_error("herm_eigen: Jacobi iteration did not converge within sweep budget");
}

struct UnitaryEigen {
    CMat vectors;               // unitary columns
    std::vector<double> phases; // in (-pi, pi]
};

/// Eigendecomposition of a unitary matrix. The Hermitian and skew parts
/// commute; a generic real combination separates the spectrum, and the
/// result is verified against U itself (retrying with the next mixing
/// coefficient if a collision spoiled the separation).
inline UnitaryEigen unitary_eigensystem(const CMat& u, double eps = tolerance()) {
    const int n = u.rows();
    using C = std::complex<double>;
    CMat k(n, n), s(n, n);
    CMat ua = adjoint(u);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            k(i, j) = 0.5 * (u(i, j) + ua(i, j));
            s(i, j) = C(0, -0.5) * (u(i, j) - ua(i, j));
        }
    static const double mixers[] = {0.5, -0.7310585786, 1.3130352854, 0.2113248654,
                                    -1.618033988, 2.414213562};
    for (double alpha : mixers) {
        CMat h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = k(i, j) + alpha * s(i, j);
        EigenHerm e = herm_eigen(h, eps);
        CMat d = adjoint(e.vectors) * u * e.vectors;
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off = std::max(off, std::abs(d(i, j)));
        if (off > 1e4 * eps) continue;
        UnitaryEigen result;
        result.vectors = e.vectors;
        result.phases.resize(n);
        for (int i = 0; i < n; ++i) {
            if (std::abs(std::abs(d(i, i)) - 1.0) > 1e4 * eps)
                throw std::runtime_error("unitary_eigensystem: eigenvalue off the unit circle");
            result.phases[i] = std::arg(d(i, i));
        }
        return result;
    }
    throw std::runtime_error("unitary_eigensystem: could not separate the spectrum");
}

/// Coefficients of the monic characteristic polynomial, by the
/// Faddeev-LeVerrier recurrence. c[0]=1, p(x) = sum c[k] x^{n-k}.
inline std::vector<double> char_poly(const MatD& a) {
    if (!a.square()) throw std::invalid_argument("char_poly: non-square input");
    const int n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    MatD m = MatD::identity(n);
    for (int k = 1; k <= n; ++k) {
        MatD am = a * m;
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += am(i, i);
        c[k] = -tr / k;
        m = am;
        for (int i = 0; i < n; ++i) m(i, i) += c[k];
    }
    return c;
}

/// Durand-Kerner root finder for a monic polynomial given by char_poly
/// coefficients. Plenty for the degree <= 8 spectra that show up here.
inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeff) {
    const int n = static_cast<int>(coeff.size()) - 1;
    using C = std::complex<double>;
    if (n <= 0) return {};
    double bound = 0.0;
    for (int k = 1; k <= n; ++k) bound = std::max(bound, std::abs(coeff[k]));
    double radius = 1.0 + bound;
    std::vector<C> z(n);
    C seed(0.4, 0.9);
    C w = seed;
    for (int j = 0; j < n; ++j) {
        z[j] = radius * w;
        w *= seed;
    }
    auto eval = [&](C x) {
        C p(coeff[0], 0.0);
        for (int k = 1; k <= n; ++k) p = p * x + coeff[k];
        return p;
    };
    for (int iter = 0; iter < 600; ++iter) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            C denom(1.0, 0.0);
            for (int k = 0; k < n; ++k)
                if (k != j) denom *= (z[j] - z[k]);
            if (std::abs(denom) < 1e-300) denom = C(1e-300, 0.0);
            C delta = eval(z[j]) / denom;
            z[j] -= delta;
            worst = std::max(worst, std::abs(delta) / std::max(1.0, std::abs(z[j])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

/// Eigenvalue magnitudes of a small real matrix, sorted descending.
inline std::vector<double> spectrum_moduli(const MatD& a) {
    auto roots = poly_roots(char_poly(a));
    std::vector<double> mods(roots.size());
    std::transform(roots.begin(), roots.end(), mods.begin(),
                   [](const std::complex<double>& z) { return std::abs(z); });
    std::sort(mods.begin(), mods.end(), std::greater<>());
    return mods;
}

} // namespace maxrep
