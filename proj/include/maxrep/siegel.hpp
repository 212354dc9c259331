#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "maxrep/eigen.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/signature.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

/// A point of the Siegel space: a complex structure J on (R^{2n}, Omega)
/// whose form q_J(x) = <x, Jx> is symmetric positive definite. The Gram
/// matrix of q_J is cached at construction.
class ComplexStructureJ {
public:
    explicit ComplexStructureJ(MatD j, double eps = tolerance()) : j_(std::move(j)) {
        if (!j_.square() || j_.rows() % 2 != 0)
            throw std::invalid_argument("ComplexStructureJ: expected a 2n x 2n matrix");
        const int n2 = j_.rows();
        double scale = std::max(1.0, j_.max_abs() * j_.max_abs());
        double sq = (j_ * j_ + MatD::identity(n2)).max_abs();
        if (sq > 1e4 * eps * scale)
            throw std::invalid_argument("ComplexStructureJ: J^2 residual " + std::to_string(sq));
        if (symplectic_residual(j_) > 1e4 * eps * scale)
            throw std::invalid_argument("ComplexStructureJ: J is not symplectic");
        gram_ = omega<double>(n2 / 2) * j_;
        if ((gram_ - gram_.transpose()).max_abs() > 1e4 * eps * scale)
            throw std::invalid_argument("ComplexStructureJ: q_J is not symmetric");
        gram_ = (gram_ + gram_.transpose()) * 0.5;
        if (sym_signature(gram_, eps).n_plus != n2)
            throw std::invalid_argument("ComplexStructureJ: q_J is not positive definite");
    }

    static ComplexStructureJ standard(int n) {
        MatD j(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            j(i, n + i) = -1.0;
            j(n + i, i) = 1.0;
        }
        return ComplexStructureJ(std::move(j));
    }

    const MatD& matrix() const { return j_; }
    const MatD& gram() const { return gram_; }
    int half_dim() const { return j_.rows() / 2; }

private:
    MatD j_;
    MatD gram_;
};

/// d(J1,J2) = |ln ||Id||_{J1,J2}| + |ln ||Id||_{J2,J1}|. Symmetric, zero
/// iff the two forms agree; a quasi-metric equivalent to the invariant
/// Riemannian distance (no equivalence constant is asserted).
inline double siegel_distance(const ComplexStructureJ& j1, const ComplexStructureJ& j2,
                              double eps = tolerance()) {
    if (j1.half_dim() != j2.half_dim())
        throw std::invalid_argument("siegel_distance: ambient dimension mismatch");
    double n12 = rel_operator_norm(j1.gram(), j2.gram(), eps);
    double n21 = rel_operator_norm(j2.gram(), j1.gram(), eps);
    return std::abs(std::log(n12)) + std::abs(std::log(n21));
}

/// Conjugation action of Sp(V) on the Siegel space; invariants re-checked
/// on the result.
inline ComplexStructureJ act(const MatD& g, const ComplexStructureJ& j, double eps = tolerance()) {
    double scale = std::max(1.0, g.max_abs() * g.max_abs());
    if (symplectic_residual(g) > 1e4 * eps * scale)
        throw std::invalid_argument("act: g is not symplectic");
    MatD moved = g * j.matrix() * symplectic_inverse(g);
    return ComplexStructureJ(std::move(moved), eps);
}

enum class DomainMembership { interior, shilov, boundary_non_shilov, outside };

inline const char* to_string(DomainMembership m) {
    switch (m) {
        case DomainMembership::interior: return "interior";
        case DomainMembership::shilov: return "shilov";
        case DomainMembership::boundary_non_shilov: return "boundary-non-shilov";
        case DomainMembership::outside: return "outside";
    }
    return "?";
}

/// Spectrum of the Hermitian matrix Id - A*A classifies the point:
/// all > eps interior, all within eps of zero Shilov, any < -eps outside,
/// otherwise boundary off the Shilov orbit. Hermitian eigenvalues come from
/// the real symmetric embedding [[X, -Y], [Y, X]].
inline DomainMembership in_bounded_domain(const CMat& a, double eps = tolerance()) {
    CMat h = adjoint(a) * a;
    const int p = h.rows();
    CMat idmh = CMat::identity(p) - h;
    MatD x = real_part(idmh), y = imag_part(idmh);
    MatD embed(2 * p, 2 * p);
    embed.set_block(0, 0, x);
    embed.set_block(0, p, -y);
    embed.set_block(p, 0, y);
    embed.set_block(p, p, x);
    EigenSym e = sym_eigen((embed + embed.transpose()) * 0.5);
    double lo = e.values.back(), hi = e.values.front();
    if (lo > eps) return DomainMembership::interior;
    if (lo < -eps) return DomainMembership::outside;
    if (hi < eps) return DomainMembership::shilov;
    return DomainMembership::boundary_non_shilov;
}

/// Cayley transform C(Z) = i(Id + Z)(Id - Z)^{-1}; on the Siegel domain it
/// realizes the tube model Sym_n(R) + i Sym_n^+(R).
inline CMat cayley(const CMat& z, double eps = tolerance()) {
    const int n = z.rows();
    if (!z.square()) throw std::invalid_argument("cayley: non-square input");
    CMat id = CMat::identity(n);
    CMat den = id - z;
    if (ScalarOps<std::complex<double>>::mag(det(den)) < eps)
        throw std::invalid_argument("cayley: Id - Z is singular");
    return std::complex<double>(0.0, 1.0) * (id + z) * inverse(den);
}

/// Inverse transform Z = (W + i Id)^{-1} (W - i Id).
inline CMat cayley_inverse(const CMat& w, double eps = tolerance()) {
    const int n = w.rows();
    CMat id = CMat::identity(n);
    CMat den = w + std::complex<double>(0.0, 1.0) * id;
    if (ScalarOps<std::complex<double>>::mag(det(den)) < eps)
        throw std::invalid_argument("cayley_inverse: W + i Id is singular");
    return inverse(den) * (w - std::complex<double>(0.0, 1.0) * id);
}

/// E(L) = pr_- o (pr_+|_L)^{-1} for a p-dimensional subspace L of C^{p+q}
/// framed by a (p+q) x p matrix, with the reference decomposition given by
/// the first p and last q coordinates.
inline CMat e_map(const CMat& l_frame, int p, int q, double eps = tolerance()) {
    if (l_frame.rows() != p + q || l_frame.cols() != p)
        throw std::invalid_argument("e_map: frame must be (p+q) x p");
    CMat top = l_frame.block(0, 0, p, p);
    CMat bottom = l_frame.block(p, 0, q, p);
    if (ScalarOps<std::complex<double>>::mag(det(top)) < eps * std::max(1.0, std::pow(top.max_abs(), p)))
        throw std::invalid_argument("e_map: projection to W+ is not invertible on L");
    return bottom * inverse(top);
}

} // namespace maxrep
