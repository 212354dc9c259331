#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxrep/matrix.hpp"
#include "maxrep/signature.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

/// Point of the boundary circle. Projective directions with angle
/// alpha in [0, pi) land at theta = 2*alpha, so the cyclic orientation of
/// RP^1 becomes the literal orientation of [0, 2pi).
struct CirclePoint {
    double theta = 0.0;

    static CirclePoint from_angle(double t) {
        double two_pi = 2.0 * std::numbers::pi;
        double r = std::fmod(t, two_pi);
        if (r < 0) r += two_pi;
        return {r};
    }
    static CirclePoint from_direction(double x, double y) {
        double alpha = std::atan2(y, x);
        if (alpha < 0) alpha += std::numbers::pi; // projective: (x,y) ~ (-x,-y)
        return from_angle(2.0 * alpha);
    }
};

/// The Lagrangian of R^2 spanned by cos(theta/2) e1 + sin(theta/2) f1.
/// Chart under which beta_1 on Lagrangians matches the orientation
/// cocycle on the circle.
inline LagrangianFrame<double> circle_chart_line(const CirclePoint& p) {
    MatD f(2, 1);
    f(0, 0) = std::cos(p.theta / 2.0);
    f(1, 0) = std::sin(p.theta / 2.0);
    return LagrangianFrame<double>(std::move(f));
}

/// Orientation cocycle on S^1: +1 on positively ordered distinct triples,
/// -1 on negatively ordered ones, 0 on coincidences.
inline int orientation_cocycle(const CirclePoint& x, const CirclePoint& y, const CirclePoint& z) {
    if (x.theta == y.theta || y.theta == z.theta || x.theta == z.theta) return 0;
    // positively ordered <=> reading from x, y comes before z
    double two_pi = 2.0 * std::numbers::pi;
    double dy = std::fmod(y.theta - x.theta + two_pi, two_pi);
    double dz = std::fmod(z.theta - x.theta + two_pi, two_pi);
    return dy < dz ? +1 : -1;
}

/// Gram matrix (3n x 3n) of the Kashiwara form
/// (x1,x2,x3) -> <x1,x2> + <x2,x3> + <x3,x1> on L1 + L2 + L3,
/// in the three frames' bases.
template <class T>
Mat<T> kashiwara_gram(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                      const LagrangianFrame<T>& l3) {
    if (l1.n != l2.n || l1.n != l3.n)
        throw std::invalid_argument("kashiwara_gram: ambient dimension mismatch");
    const int n = l1.n;
    Mat<T> w = omega<T>(n);
    Mat<T> c12 = l1.frame.transpose() * w * l2.frame;
    Mat<T> c23 = l2.frame.transpose() * w * l3.frame;
    Mat<T> c31 = l3.frame.transpose() * w * l1.frame;
    Mat<T> m(3 * n, 3 * n);
    m.set_block(0, n, c12);
    m.set_block(n, 2 * n, c23);
    m.set_block(2 * n, 0, c31);
    if constexpr (ScalarOps<T>::exact)
        return (m + m.transpose()) * Rat(1, 2);
    else
        return (m + m.transpose()) * 0.5;
}

/// Kashiwara Maslov index beta_n. Total on arbitrary (even degenerate)
/// triples; the exact backend never rounds.
template <class T>
int maslov_index(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                 const LagrangianFrame<T>& l3, double eps = tolerance()) {
    Mat<T> gram = kashiwara_gram(l1, l2, l3);
    Signature sig;
    if constexpr (ScalarOps<T>::exact)
        sig = sym_signature(gram);
    else
        sig = sym_signature(gram, eps);
    return sig.index();
}

/// beta_n(L1, L, L3) = sign(Q_L^{L1,L3}); independent route, defined only
/// when L1 and L are transverse to L3. Cross-checks maslov_index.
template <class T>
int maslov_via_sign(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l,
                    const LagrangianFrame<T>& l3, double eps = tolerance()) {
    Mat<T> q = q_form(l, l1, l3, eps);
    Signature sig;
    if constexpr (ScalarOps<T>::exact)
        sig = sym_signature(q);
    else
        sig = sym_signature(q, eps);
    return sig.index();
}

template <class T>
bool is_maximal_triple(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                       const LagrangianFrame<T>& l3, double eps = tolerance()) {
    if (maslov_index(l1, l2, l3, eps) != l1.n) return false;
    // |beta| = n forces pairwise transversality; keep it as a consistency gate
    if (!is_transverse(l1, l2, eps).transverse || !is_transverse(l2, l3, eps).transverse ||
        !is_transverse(l1, l3, eps).transverse)
        throw std::runtime_error("is_maximal_triple: extremal index on a non-transverse triple");
    return true;
}

/// A quadruple is maximal when every subtriple in the induced cyclic
/// order has index n.
template <class T>
bool is_maximal_quadruple(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                          const LagrangianFrame<T>& l3, const LagrangianFrame<T>& l4,
                          double eps = tolerance()) {
    const int n = l1.n;
    return maslov_index(l1, l2, l3, eps) == n && maslov_index(l2, l3, l4, eps) == n &&
           maslov_index(l1, l3, l4, eps) == n && maslov_index(l1, l2, l4, eps) == n;
}

/// J(tau) for a maximal triple tau = (L1, L2, L3): the complex structure
/// with block form [[0, -T31], [T13, 0]] along V = L1 + L3. The associated
/// form q_J = <., J.> is positive definite exactly on the maximal orbit,
/// so non-maximal triples are refused.
template <class T>
Mat<T> complex_structure_from_triple(const LagrangianFrame<T>& l1, const LagrangianFrame<T>& l2,
                                     const LagrangianFrame<T>& l3, double eps = tolerance()) {
    const int n = l1.n;
    if (maslov_index(l1, l2, l3, eps) != n)
        throw std::invalid_argument("complex_structure_from_triple: triple is not maximal");
    Mat<T> t13 = graph_map(l1, l3, l2, eps).t13;
    Mat<T> t31 = graph_map(l3, l1, l2, eps).t13;
    // block action on (L1, L3) coordinates, conjugated to the ambient basis
    Mat<T> blocks(2 * n, 2 * n);
    blocks.set_block(0, n, -t31);
    blocks.set_block(n, 0, t13);
    Mat<T> basis = hcat(l1.frame, l3.frame);
    Mat<T> j = basis * blocks * inverse(basis);

    double scale = std::max(1.0, j.max_abs() * j.max_abs());
    double sq_residual = (j * j + Mat<T>::identity(2 * n)).max_abs();
    Mat<T> gram = omega<T>(n) * j; // Gram of q_J(x) = <x, Jx>
    bool gram_ok;
    if constexpr (ScalarOps<T>::exact) {
        if (sq_residual != 0.0)
            throw std::runtime_error("complex_structure_from_triple: J^2 != -Id");
        if ((gram - gram.transpose()).max_abs() != 0.0)
            throw std::runtime_error("complex_structure_from_triple: q_J is not symmetric");
        gram_ok = sym_signature(gram).n_plus == 2 * n;
    } else {
        if (sq_residual > 1e4 * eps * scale)
            throw std::runtime_error("complex_structure_from_triple: J^2 residual " +
                                     std::to_string(sq_residual));
        if ((gram - gram.transpose()).max_abs() > 1e4 * eps * scale)
            throw std::runtime_error("complex_structure_from_triple: q_J asymmetry");
        gram_ok = sym_signature(gram, eps).n_plus == 2 * n;
    }
    if (!gram_ok) throw std::runtime_error("complex_structure_from_triple: q_J is not positive definite");
    return j;
}

/// Monotonicity gate of maximal quadruples in the chart based at (L0, Loo):
/// 0 < Q_{L1} < Q_{L2}.
template <class T>
bool monotonicity_check(const LagrangianFrame<T>& l0, const LagrangianFrame<T>& l1,
                        const LagrangianFrame<T>& l2, const LagrangianFrame<T>& loo,
                        double eps = tolerance()) {
    const LagrangianFrame<T>* frames[] = {&l0, &l1, &l2, &loo};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!is_transverse(*frames[i], *frames[j], eps).transverse)
                throw std::invalid_argument("monotonicity_check: quadruple is not pairwise transverse");
    Mat<T> q1 = q_form(l1, l0, loo, eps);
    Mat<T> q2 = q_form(l2, l0, loo, eps);
    return is_positive_definite(q1, eps) && is_positive_definite(q2 - q1, eps);
}

} // namespace maxrep
