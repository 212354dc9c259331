#pragma once

#include <stdexcept>

#include "maxrep/eigen.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

/// Inertia (n+, n-, n0) of a quadratic form.
struct Signature {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    int index() const { return n_plus - n_minus; }
    int dim() const { return n_plus + n_minus + n_zero; }
    bool operator==(const Signature&) const = default;
};

namespace detail {

inline void require_symmetric(const MatQ& s) {
    for (int i = 0; i < s.rows(); ++i)
        for (int j = i + 1; j < s.cols(); ++j)
            if (s(i, j) != s(j, i)) throw std::invalid_argument("sym_signature: matrix is not symmetric");
}

} // namespace detail

/// Exact inertia by congruence diagonalization (symmetric pivoting).
/// When the active diagonal is all zero but an off-diagonal entry s_ij
/// survives, the congruence x_i <- x_i + x_j exposes the pivot 2*s_ij.
inline Signature sym_signature(MatQ s) {
    if (!s.square()) throw std::invalid_argument("sym_signature: non-square input");
    detail::require_symmetric(s);
    const int m = s.rows();
    Signature sig;
    int k = 0;
    while (k < m) {
        // best available diagonal pivot in the active block
        int piv = -1;
        for (int i = k; i < m; ++i)
            if (sgn(s(i, i)) != 0 && (piv < 0 || abs(s(piv, piv)) < abs(s(i, i)))) piv = i;
        if (piv < 0) {
            int oi = -1, oj = -1;
            for (int i = k; i < m && oi < 0; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (sgn(s(i, j)) != 0) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi < 0) {
                sig.n_zero += m - k;
                return sig;
            }
            // x_oi <- x_oi + x_oj : row and column update in step
            for (int j = 0; j < m; ++j) s(oi, j) += s(oj, j);
            for (int i = 0; i < m; ++i) s(i, oi) += s(i, oj);
            piv = oi;
        }
        if (piv != k) { // symmetric swap into place
            for (int j = 0; j < m; ++j) std::swap(s(k, j), s(piv, j));
            for (int i = 0; i < m; ++i) std::swap(s(i, k), s(i, piv));
        }
        const Rat d = s(k, k);
        if (sgn(d) > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
        // symmetric Schur complement of the pivot
        for (int i = k + 1; i < m; ++i) {
            if (sgn(s(i, k)) == 0) continue;
            Rat f = s(i, k) / d;
            for (int j = i; j < m; ++j) s(i, j) -= f * s(k, j);
            for (int j = i + 1; j < m; ++j) s(j, i) = s(i, j);
            s(i, k) = 0;
            s(k, i) = 0;
        }
        ++k;
    }
    return sig;
}

/// Float inertia: eigenvalues with |lambda| <= eps count as zero.
inline Signature sym_signature(const MatD& s, double eps = tolerance()) {
    if (!s.square()) throw std::invalid_argument("sym_signature: non-square input");
    EigenSym e = sym_eigen(s, eps);
    Signature sig;
    for (double lam : e.values) {
        if (lam > eps)
            ++sig.n_plus;
        else if (lam < -eps)
            ++sig.n_minus;
        else
            ++sig.n_zero;
    }
    return sig;
}

template <class T>
bool is_positive_definite(const Mat<T>& s, double eps = tolerance()) {
    Signature sig;
    if constexpr (ScalarOps<T>::exact)
        sig = sym_signature(s);
    else
        sig = sym_signature(s, eps);
    return sig.n_plus == s.rows();
}

} // namespace maxrep
