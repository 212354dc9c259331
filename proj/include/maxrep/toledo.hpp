#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxrep/eigen.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/representations.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/tolerance.hpp"

namespace maxrep {

/// A chosen continuous path Id -> g inside Sp(2n,R): the polar part moves
/// as P^t while each eigenphase of the unitary part sweeps linearly from 0.
/// One fixed path per group element; the relator winding does not depend
/// on the choices because every generator has exponent sum zero in the
/// surface relator.
class GeneratorPath {
public:
    explicit GeneratorPath(const MatD& g, double eps = tolerance(), int flip_branch = -1)
        : g_(g), n_(g.rows() / 2) {
        PolarFactors polar = symplectic_polar(g, eps);
        EigenSym pe = sym_eigen(polar.spd, eps);
        p_vecs_ = pe.vectors;
        p_vals_ = pe.values;
        CMat c = unitary_complex_form(polar.unitary, eps);
        UnitaryEigen ue = unitary_eigensystem(c, eps);
        w_ = ue.vectors;
        phases_ = ue.phases;
        if (flip_branch >= 0) {
            if (flip_branch >= static_cast<int>(phases_.size()))
                throw std::invalid_argument("GeneratorPath: no such eigenphase branch");
            phases_[flip_branch] -= 2.0 * std::numbers::pi; // same endpoint, other branch
        }
    }

    MatD at(double t) const {
        const int n = n_;
        CMat d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, t * phases_[i]);
        CMat ct = w_ * d * adjoint(w_);
        MatD u = unitary_real_form(ct);
        MatD pd(2 * n, 2 * n);
        for (int i = 0; i < 2 * n; ++i) pd(i, i) = std::pow(p_vals_[i], t);
        return u * (p_vecs_ * pd * p_vecs_.transpose());
    }

    const MatD& endpoint() const { return g_; }

private:
    MatD g_;
    int n_;
    CMat w_;
    std::vector<double> phases_;
    MatD p_vecs_;
    std::vector<double> p_vals_;
};

struct ToledoResult {
    int t = 0;               // relator winding integer
    double winding = 0.0;    // pre-rounding value
    double relator_residual = 0.0;
    bool maximal = false;    // |T| = n(2g-2)
    int milnor_wood = 0;     // the bound n(2g-2)
};

namespace detail {

inline std::complex<double> loop_det(const MatD& m, double eps) {
    MatD u = m * spd_power(m.transpose() * m, -0.5, eps);
    return unitary_det(u, eps);
}

/// Argument increment between two loop points, refined until each step of
/// the circle map stays under pi/2 so the unwrapping is unambiguous.
inline void refine_arg(const MatD& prefix, const GeneratorPath& path, double t0,
                       const std::complex<double>& z0, double t1, const std::complex<double>& z1,
                       double& total, int depth, double eps) {
    double step = std::arg(z1 * std::conj(z0));
    if (std::abs(step) < std::numbers::pi / 2.0) {
        total += step;
        return;
    }
    if (depth >= 24)
        throw std::runtime_error("relator_winding: refinement budget exceeded");
    double tm = 0.5 * (t0 + t1);
    std::complex<double> zm = loop_det(prefix * path.at(tm), eps);
    refine_arg(prefix, path, t0, z0, tm, zm, total, depth + 1, eps);
    refine_arg(prefix, path, tm, zm, t1, z1, total, depth + 1, eps);
}

} // namespace detail

/// The winding of det_C of the unitary polar part along the relator loop,
/// built by left-translating one fixed path per letter. Inverse letters
/// traverse the inverse element's own path.
inline ToledoResult relator_winding(const SurfaceRep& rep, double eps = tolerance(),
                                    const std::map<int, int>& branch_flips = {}) {
    if (rep.relator_residual > 1e-6)
        throw std::invalid_argument("relator_winding: relator residual too large");
    Word relator = rep.presentation.relator();

    std::map<int, GeneratorPath> paths;
    for (int letter : relator.letters) {
        if (paths.find(letter) != paths.end()) continue;
        MatD g = letter > 0 ? rep.gens[letter - 1] : symplectic_inverse(rep.gens[-letter - 1]);
        auto flip = branch_flips.find(letter);
        paths.emplace(letter, GeneratorPath(g, eps, flip == branch_flips.end() ? -1 : flip->second));
    }

    const int dim = 2 * rep.n;
    MatD prefix = MatD::identity(dim);
    double total = 0.0;
    std::complex<double> z_prev(1.0, 0.0); // det at the loop start
    for (int letter : relator.letters) {
        const GeneratorPath& path = paths.at(letter);
        const int coarse = 8;
        for (int k = 1; k <= coarse; ++k) {
            double t0 = static_cast<double>(k - 1) / coarse;
            double t1 = static_cast<double>(k) / coarse;
            std::complex<double> z1 = detail::loop_det(prefix * path.at(t1), eps);
            detail::refine_arg(prefix, path, t0, z_prev, t1, z1, total, 0, eps);
            z_prev = z1;
        }
        prefix = prefix * path.endpoint();
    }

    ToledoResult result;
    result.winding = total / (2.0 * std::numbers::pi);
    result.t = static_cast<int>(std::lround(result.winding));
    result.relator_residual = rep.relator_residual;
    result.milnor_wood = rep.n * (2 * rep.presentation.genus - 2);
    if (std::abs(result.winding - result.t) >= 1e-3)
        throw std::runtime_error("relator_winding: winding did not converge to an integer (" +
                                 std::to_string(result.winding) + ")");
    return result;
}

/// Toledo invariant with the Milnor-Wood gate and the maximality flag.
inline ToledoResult toledo(const SurfaceRep& rep, double eps = tolerance()) {
    ToledoResult r = relator_winding(rep, eps);
    if (std::abs(r.t) > r.milnor_wood)
        throw std::logic_error("toledo: Milnor-Wood bound violated; this is a bug, not a math fact");
    r.maximal = std::abs(r.t) == r.milnor_wood;
    return r;
}

/// Sign convention: the default doubled-torus hyperbolization defines the
/// positive orientation. Signed CLI output is relative to this.
inline int orientation_sign() {
    static const int sign = [] {
        Hyperbolization h = default_hyperbolization();
        SurfaceRep rep(h.presentation, 1, h.gens, "hyperbolization");
        int t = relator_winding(rep).t;
        return t >= 0 ? 1 : -1;
    }();
    return sign;
}

} // namespace maxrep
