#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "maxrep/eigen.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/signature.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

/// Standard symplectic form in the fixed basis ordering (e_1..e_n, f_1..f_n):
/// Omega = [[0, I], [-I, 0]], so <e_i, f_j> = delta_ij.
template <class T>
Mat<T> omega(int n) {
    Mat<T> w(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        w(i, n + i) = T(1);
        w(n + i, i) = T(-1);
    }
    return w;
}

template <class T>
T symplectic_pairing(const Mat<T>& x, const Mat<T>& y) {
    const int n2 = x.rows();
    if (y.rows() != n2 || x.cols() != 1 || y.cols() != 1 || n2 % 2 != 0)
        throw std::invalid_argument("symplectic_pairing: expected two 2n-vectors");
    const int n = n2 / 2;
    T acc(0);
    for (int i = 0; i < n; ++i) acc += x(i, 0) * y(n + i, 0) - x(n + i, 0) * y(i, 0);
    return acc;
}

/// Max-abs entry norm of g^T Omega g - Omega. The caller thresholds.
template <class T>
double symplectic_residual(const Mat<T>& g) {
    if (!g.square() || g.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_residual: expected a 2n x 2n matrix");
    Mat<T> w = omega<T>(g.rows() / 2);
    return (g.transpose() * w * g - w).max_abs();
}

/// Inverse of a symplectic matrix through the form: g^{-1} = Omega^{-1} g^T Omega.
template <class T>
Mat<T> symplectic_inverse(const Mat<T>& g) {
    const int n = g.rows() / 2;
    Mat<T> w = omega<T>(n);
    return (-w) * g.transpose() * w; // Omega^{-1} = -Omega
}

/// An n-dimensional isotropic subspace of (R^{2n}, Omega), carried by a
/// spanning 2n x n frame. Construction validates rank and isotropy.
template <class T>
struct LagrangianFrame {
    int n = 0;
    Mat<T> frame; // 2n x n, columns span the subspace

    LagrangianFrame() = default;
    explicit LagrangianFrame(Mat<T> f, double eps = tolerance()) : frame(std::move(f)) {
        if (frame.cols() * 2 != frame.rows())
            throw std::invalid_argument("LagrangianFrame: frame must be 2n x n");
        n = frame.cols();
        if (rank(frame) != n)
            throw std::invalid_argument("LagrangianFrame: columns are linearly dependent");
        double iso = (frame.transpose() * omega<T>(n) * frame).max_abs();
        double scale = std::max(1.0, frame.max_abs() * frame.max_abs());
        if constexpr (ScalarOps<T>::exact) {
            if (iso != 0.0) throw std::invalid_argument("LagrangianFrame: frame is not isotropic");
        } else if (iso > eps * scale) {
            throw std::invalid_argument("LagrangianFrame: isotropy residual " + std::to_string(iso));
        }
    }

    /// Subspace equality: the concatenated frames span nothing new.
    bool same_subspace(const LagrangianFrame& other, double eps = 1e-8) const {
        if (other.n != n) return false;
        return rank(hcat(frame, other.frame), eps) == n;
    }
};

template <class T>
LagrangianFrame<T> span_e_block(int n) {
    Mat<T> f(2 * n, n);
    for (int i = 0; i < n; ++i) f(i, i) = T(1);
    return LagrangianFrame<T>(std::move(f));
}

template <class T>
LagrangianFrame<T> span_f_block(int n) {
    Mat<T> f(2 * n, n);
    for (int i = 0; i < n; ++i) f(n + i, i) = T(1);
    return LagrangianFrame<T>(std::move(f));
}

template <class T>
LagrangianFrame<T> apply(const Mat<T>& g, const LagrangianFrame<T>& l, double eps = tolerance()) {
    return LagrangianFrame<T>(g * l.frame, eps);
}

struct TransversalityResult {
    bool transverse = false;
    double gap = 0.0;
};

/// Transversality of two Lagrangians via det[L1 | L2]. Exact backend tests
/// the determinant literally; the float gap is normalized by column norms.
template <class T>
TransversalityResult is_transverse(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                                   double eps = tolerance()) {
    if (l1.n != l2.n) throw std::invalid_argument("is_transverse: ambient dimension mismatch");
    Mat<T> m = hcat(l1.frame, l2.frame);
    T d = det(m);
    if constexpr (ScalarOps<T>::exact) {
        bool tv = sgn(d) != 0;
        return {tv, std::abs(d.get_d())};
    } else {
        double norm_prod = 1.0;
        for (int j = 0; j < m.cols(); ++j) {
            double s = 0.0;
            for (int i = 0; i < m.rows(); ++i) s += ScalarOps<T>::mag(m(i, j)) * ScalarOps<T>::mag(m(i, j));
            norm_prod *= std::sqrt(s);
        }
        double gap = ScalarOps<T>::mag(d) / std::max(norm_prod, 1e-300);
        return {gap > eps, gap};
    }
}

/// The linear map T13 : L1 -> L3 whose graph is L, expressed in the two
/// frames' bases: L = { l1 + T13(l1) }.
template <class T>
struct GraphData {
    LagrangianFrame<T> source;    // L1
    LagrangianFrame<T> reference; // L3
    Mat<T> t13;                   // n x n
};

template <class T>
GraphData<T> graph_map(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l3,
                       const LagrangianFrame<T>& l, double eps = tolerance()) {
    if (l1.n != l3.n || l1.n != l.n) throw std::invalid_argument("graph_map: dimension mismatch");
    const int n = l1.n;
    Mat<T> basis = hcat(l1.frame, l3.frame);
    Mat<T> coords;
    try {
        coords = solve(basis, l.frame); // 2n x n: top = L1 coefficients, bottom = L3
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("graph_map: L1 and L3 are not transverse");
    }
    Mat<T> x = coords.block(0, 0, n, n);
    Mat<T> y = coords.block(n, 0, n, n);
    Mat<T> t;
    try {
        t = solve(x.transpose(), y.transpose()).transpose(); // Y X^{-1}
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("graph_map: L and L3 are not transverse");
    }
    (void)eps;
    return {l1, l3, std::move(t)};
}

/// Gram matrix of Q_L^{L1,L3}(x) = <x, T13 x> in L1's frame basis.
/// Symmetry of the raw bilinear matrix is asserted before symmetrizing.
template <class T>
Mat<T> q_form(const LagrangianFrame<T>& l, const LagrangianFrame<T>& l1,
              const LagrangianFrame<T>& l3, double eps = tolerance()) {
    GraphData<T> g = graph_map(l1, l3, l, eps);
    Mat<T> pairing = l1.frame.transpose() * omega<T>(l1.n) * l3.frame;
    Mat<T> b = pairing * g.t13;
    double asym = (b - b.transpose()).max_abs();
    if constexpr (ScalarOps<T>::exact) {
        if (asym != 0.0) throw std::runtime_error("q_form: graph form is not symmetric");
        return (b + b.transpose()) * Rat(1, 2);
    } else {
        double scale = std::max(1.0, b.max_abs());
        if (asym > 1e3 * eps * scale)
            throw std::runtime_error("q_form: graph form asymmetry " + std::to_string(asym));
        return (b + b.transpose()) * 0.5;
    }
}

/// Polar factorization g = U P with P = (g^T g)^{1/2} symplectic SPD and
/// U symplectic orthogonal. Float backend only.
struct PolarFactors {
    MatD unitary;
    MatD spd;
};

inline PolarFactors symplectic_polar(const MatD& g, double eps = tolerance()) {
    if (symplectic_residual(g) > 1e4 * eps * std::max(1.0, g.max_abs() * g.max_abs()))
        throw std::invalid_argument("symplectic_polar: input is not symplectic");
    MatD gram = g.transpose() * g;
    MatD p = spd_power(gram, 0.5, eps);
    MatD u = g * spd_power(gram, -0.5, eps);
    return {std::move(u), std::move(p)};
}

/// Complex form of a symplectic orthogonal matrix under U(n) = Sp(2n) cap
/// O(2n): in the (e, f) ordering U = [[A, -B], [B, A]] maps to A + iB.
/// The block structure is validated, not assumed.
inline CMat unitary_complex_form(const MatD& u, double eps = tolerance()) {
    const int n = u.rows() / 2;
    MatD a = u.block(0, 0, n, n);
    MatD b = u.block(n, 0, n, n);
    double block_residual = std::max((u.block(n, n, n, n) - a).max_abs(),
                                     (u.block(0, n, n, n) + b).max_abs());
    if (block_residual > 1e4 * eps)
        throw std::invalid_argument("unitary_complex_form: block structure residual " +
                                    std::to_string(block_residual));
    return to_complex(a, b);
}

inline MatD unitary_real_form(const CMat& c) {
    const int n = c.rows();
    MatD u(2 * n, 2 * n);
    MatD re = real_part(c), im = imag_part(c);
    u.set_block(0, 0, re);
    u.set_block(0, n, -im);
    u.set_block(n, 0, im);
    u.set_block(n, n, re);
    return u;
}

/// det_C under the identification above.
inline std::complex<double> unitary_det(const MatD& u, double eps = tolerance()) {
    return det(unitary_complex_form(u, eps));
}

} // namespace maxrep
