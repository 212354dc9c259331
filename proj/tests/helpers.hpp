#pragma once

// Shared generators for randomized tests: symplectic matrices over both
// scalar backends, built from elementary factors so exactness is preserved.

#include "maxrep/maxrep.hpp"

namespace maxrep::testing {

template <class T>
Mat<T> elementary_shear_upper(Rng& rng, int n) {
    // [[I, S], [0, I]] with S symmetric
    Mat<T> s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            s(i, j) = T(rng.integer(-2, 2));
            s(j, i) = s(i, j);
        }
    Mat<T> g = Mat<T>::identity(2 * n);
    g.set_block(0, n, s);
    return g;
}

template <class T>
Mat<T> elementary_shear_lower(Rng& rng, int n) {
    Mat<T> s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            s(i, j) = T(rng.integer(-2, 2));
            s(j, i) = s(i, j);
        }
    Mat<T> g = Mat<T>::identity(2 * n);
    g.set_block(n, 0, s);
    return g;
}

template <class T>
Mat<T> elementary_gl_factor(Rng& rng, int n) {
    // [[A, 0], [0, A^{-T}]] with A unit upper triangular (so A^{-T} is exact)
    Mat<T> a = Mat<T>::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = T(rng.integer(-2, 2));
    Mat<T> g(2 * n, 2 * n);
    g.set_block(0, 0, a);
    g.set_block(n, n, inverse(a).transpose());
    return g;
}

/// Random symplectic matrix as a short product of elementary factors.
/// Exact over Rat; well-conditioned enough over double.
template <class T>
Mat<T> random_symplectic(Rng& rng, int n, int factors = 5) {
    Mat<T> g = Mat<T>::identity(2 * n);
    for (int k = 0; k < factors; ++k) {
        switch (rng.below(4)) {
            case 0: g = g * elementary_shear_upper<T>(rng, n); break;
            case 1: g = g * elementary_shear_lower<T>(rng, n); break;
            case 2: g = g * elementary_gl_factor<T>(rng, n); break;
            default: g = g * omega<T>(n); break;
        }
    }
    return g;
}

template <class T>
LagrangianFrame<T> random_lagrangian(Rng& rng, int n, int factors = 5) {
    return apply(random_symplectic<T>(rng, n, factors), span_e_block<T>(n));
}

/// The Lagrangian graph of the identity L1 -> L3; (e-block, this, f-block)
/// is the reference maximal triple.
template <class T>
LagrangianFrame<T> graph_of_identity(int n) {
    Mat<T> f(2 * n, n);
    for (int i = 0; i < n; ++i) {
        f(i, i) = T(1);
        f(n + i, i) = T(1);
    }
    return LagrangianFrame<T>(std::move(f));
}

/// Random maximal triple: a random symplectic image of the reference one.
template <class T>
std::array<LagrangianFrame<T>, 3> random_maximal_triple(Rng& rng, int n) {
    Mat<T> g = random_symplectic<T>(rng, n);
    return {apply(g, span_e_block<T>(n)), apply(g, graph_of_identity<T>(n)),
            apply(g, span_f_block<T>(n))};
}

inline MatD random_orthogonal_symplectic(Rng& rng, int n) {
    // real embedding of a random unitary built from complex Givens factors
    CMat u = CMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double t = rng.range(0.0, 2.0 * std::numbers::pi);
            double p = rng.range(0.0, 2.0 * std::numbers::pi);
            CMat r = CMat::identity(n);
            r(i, i) = std::cos(t);
            r(i, j) = std::polar(std::sin(t), p);
            r(j, i) = -std::polar(std::sin(t), -p);
            r(j, j) = std::cos(t);
            u = u * r;
        }
    for (int i = 0; i < n; ++i) {
        CMat d = CMat::identity(n);
        d(i, i) = std::polar(1.0, rng.range(0.0, 2.0 * std::numbers::pi));
        u = u * d;
    }
    return unitary_real_form(u);
}

} // namespace maxrep::testing
