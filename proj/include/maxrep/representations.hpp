#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxrep/fuchsian.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/tolerance.hpp"
#include "maxrep/words.hpp"

namespace maxrep {

/// Permutation carrying the interleaved basis (e1,f1,e2,f2,...) used by the
/// per-plane block constructions into the global ordering (e1..er, f1..fr):
/// x_interleaved = P x_standard.
inline MatD interleave_permutation(int r) {
    MatD p(2 * r, 2 * r);
    for (int j = 0; j < 2 * r; ++j) {
        int row = (j < r) ? 2 * j : 2 * (j - r) + 1;
        p(row, j) = 1.0;
    }
    return p;
}

/// Block-diagonal polydisk embedding tau_P: Sp(2,R)^r -> Sp(2r,R), with the
/// interleaved plane blocks reordered into the standard basis.
inline MatD polydisk_embed(const std::vector<MatD>& blocks) {
    const int r = static_cast<int>(blocks.size());
    MatD inter(2 * r, 2 * r);
    for (int k = 0; k < r; ++k) {
        if (!blocks[k].square() || blocks[k].rows() != 2)
            throw std::invalid_argument("polydisk_embed: blocks must be 2x2");
        inter.set_block(2 * k, 2 * k, blocks[k]);
    }
    MatD p = interleave_permutation(r);
    return p.transpose() * inter * p;
}

/// A surface-group representation into Sp(2n,R): one symplectic matrix per
/// generator, validated against the presentation's relator at construction.
struct SurfaceRep {
    Presentation presentation{2};
    int n = 1; // half-dimension of the target
    std::vector<MatD> gens;
    std::string provenance = "custom";
    double relator_residual = 0.0;
    int relator_sign = 1;

    SurfaceRep() = default;
    SurfaceRep(Presentation pres, int half_dim, std::vector<MatD> generators, std::string tag,
               double eps = tolerance())
        : presentation(pres), n(half_dim), gens(std::move(generators)), provenance(std::move(tag)) {
        if (static_cast<int>(gens.size()) != presentation.num_generators())
            throw std::invalid_argument("SurfaceRep: generator count mismatch");
        for (const MatD& g : gens) {
            if (g.rows() != 2 * n || g.cols() != 2 * n)
                throw std::invalid_argument("SurfaceRep: generator dimension mismatch");
            double scale = std::max(1.0, g.max_abs() * g.max_abs());
            if (symplectic_residual(g) > 1e3 * eps * scale)
                throw std::invalid_argument("SurfaceRep: generator fails the symplecticity gate");
        }
        MatD rel = evaluate_word(gens, presentation.relator());
        MatD id = MatD::identity(2 * n);
        double plus = (rel - id).max_abs();
        double minus = (rel + id).max_abs();
        relator_sign = plus <= minus ? 1 : -1;
        relator_residual = std::min(plus, minus);
        if (relator_residual > 1e-6)
            throw std::invalid_argument("SurfaceRep: relator residual " +
                                        std::to_string(relator_residual));
    }

    MatD evaluate(const Word& w) const { return evaluate_word(gens, w); }
};

/// tau_P composed with r hyperbolizations sharing one presentation.
inline SurfaceRep polydisk_rep(const std::vector<Hyperbolization>& components) {
    if (components.empty()) throw std::invalid_argument("polydisk_rep: no components");
    const Presentation pres = components.front().presentation;
    for (const auto& h : components)
        if (h.presentation.genus != pres.genus)
            throw std::invalid_argument("polydisk_rep: mismatched presentations");
    const int r = static_cast<int>(components.size());
    std::vector<MatD> gens;
    for (int i = 0; i < pres.num_generators(); ++i) {
        std::vector<MatD> blocks;
        blocks.reserve(r);
        for (const auto& h : components) blocks.push_back(h.gens[i]);
        gens.push_back(polydisk_embed(blocks));
    }
    return SurfaceRep(pres, r, std::move(gens), "polydisk");
}

namespace detail {

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Action of M on binary forms of degree d, basis e1^{d-i} e2^i.
inline MatD sl2_sym_power(const MatD& m, int d) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), dd = m(1, 1);
    MatD r(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) {
        // image of basis vector j: (a e1 + c e2)^{d-j} (b e1 + dd e2)^j
        for (int i = 0; i <= d; ++i) {
            double acc = 0.0;
            for (int p = std::max(0, i - j); p <= std::min(d - j, i); ++p) {
                acc += binom(d - j, p) * std::pow(a, d - j - p) * std::pow(c, p) *
                       binom(j, i - p) * std::pow(b, j - (i - p)) * std::pow(dd, i - p);
            }
            r(i, j) = acc;
        }
    }
    return r;
}

/// Change of basis taking the invariant pairing on binary forms,
/// <b_i, b_{d-i}> = (-1)^i i!(d-i)!/d!, to the standard Omega.
inline MatD sym_power_basis_change(int n) {
    const int d = 2 * n - 1;
    MatD c(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        double w = ((k % 2 == 0) ? 1.0 : -1.0) / binom(d, k);
        double s = 1.0 / std::sqrt(std::abs(w));
        c(k, k) = s;                                         // e_{k+1} = s * b_k
        c(d - k, n + k) = (w > 0 ? 1.0 : -1.0) * s;          // f_{k+1} = sign(w) s * b_{d-k}
    }
    return c;
}

} // namespace detail

/// The 2n-dimensional irreducible representation of SL(2,R), conjugated so
/// the preserved form is the standard Omega. Output certified symplectic.
inline MatD irreducible_rep(const MatD& m, int n, double eps = tolerance()) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("irreducible_rep: need a 2x2 input");
    if (std::abs(det(m) - 1.0) > 1e4 * eps)
        throw std::invalid_argument("irreducible_rep: determinant must be 1");
    const int d = 2 * n - 1;
    MatD c = detail::sym_power_basis_change(n);
    MatD rep = inverse(c) * detail::sl2_sym_power(m, d) * c;
    double scale = std::max(1.0, rep.max_abs() * rep.max_abs());
    double res = symplectic_residual(rep);
    if (res > 1e4 * eps * scale)
        throw std::runtime_error("irreducible_rep: symplecticity residual " + std::to_string(res));
    return rep;
}

/// Hyperbolization composed with the 2n-dimensional irreducible
/// representation; lands in the Hitchin locus of Sp(2n,R).
inline SurfaceRep irreducible_surface_rep(const Hyperbolization& h, int n) {
    std::vector<MatD> gens;
    gens.reserve(h.gens.size());
    for (const MatD& g : h.gens) gens.push_back(irreducible_rep(g, n));
    return SurfaceRep(h.presentation, n, std::move(gens), "irreducible");
}

/// Element of the centralizer of the diagonal polydisk in Sp(4,R):
/// [[a Id2, b Id2], [c Id2, d Id2]] with [[a,b],[c,d]] in O(2), written in
/// the interleaved plane convention.
struct CentralizerElement {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static CentralizerElement rotation(double t) {
        return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    }

    void validate(double eps = tolerance()) const {
        double r[3] = {a * a + c * c - 1.0, b * b + d * d - 1.0, a * b + c * d};
        for (double x : r)
            if (std::abs(x) > 1e3 * eps)
                throw std::invalid_argument("CentralizerElement: parameter block is not in O(2)");
    }

    /// the corresponding symplectic matrix, in the standard basis ordering
    MatD matrix() const {
        validate();
        MatD inter(4, 4);
        for (int i = 0; i < 2; ++i) {
            inter(i, i) = a;
            inter(i, 2 + i) = b;
            inter(2 + i, i) = c;
            inter(2 + i, 2 + i) = d;
        }
        MatD p = interleave_permutation(2);
        return p.transpose() * inter * p;
    }
};

/// The twisted amalgam representation into Sp(4,R): a1, b1 act by the
/// diagonal polydisk embedding, a2, b2 by its Int(z)-twist. The relator
/// closes because z centralizes the diagonal and [h(a2), h(b2)] inverts
/// the separating curve.
inline SurfaceRep amalgam_z_rep(const Hyperbolization& h, const CentralizerElement& z) {
    if (h.presentation.genus != 2) throw std::invalid_argument("amalgam_z_rep: genus must be 2");
    MatD zm = z.matrix();
    MatD zm_inv = zm.transpose(); // z is orthogonal
    std::vector<MatD> gens(4);
    for (int i = 0; i < 4; ++i) {
        MatD block = polydisk_embed({h.gens[i], h.gens[i]});
        gens[i] = (i < 2) ? block : zm * block * zm_inv;
    }
    return SurfaceRep(h.presentation, 2, std::move(gens), "amalgam_z");
}

/// Negative control: handle one collapses onto a single one-parameter
/// subgroup, handle two dies. Toledo vanishes and the orbit map stalls.
inline SurfaceRep degenerate_rep(const Hyperbolization& h) {
    MatD m = h.gens[0];
    if (std::abs(m(0, 0) + m(1, 1)) <= 2.0)
        throw std::invalid_argument("degenerate_rep: first generator is not hyperbolic");
    std::vector<MatD> gens = {m, m * m, MatD::identity(2), MatD::identity(2)};
    return SurfaceRep(h.presentation, 1, std::move(gens), "degenerate");
}

inline SurfaceRep conjugate_rep(const MatD& g, const SurfaceRep& rep) {
    MatD ginv = symplectic_inverse(g);
    std::vector<MatD> gens;
    gens.reserve(rep.gens.size());
    for (const MatD& m : rep.gens) gens.push_back(g * m * ginv);
    return SurfaceRep(rep.presentation, rep.n, std::move(gens), rep.provenance);
}

/// Dimension of span{ rho(w) : l(w) <= L } inside the 2n x 2n matrices,
/// via incremental orthogonalization of vectorized words. (2n)^2 certifies
/// irreducibility by Burnside.
inline int algebra_span(const SurfaceRep& rep, int max_len) {
    if (max_len < 1) throw std::invalid_argument("algebra_span: length must be >= 1");
    const int dim = 2 * rep.n;
    const int full = dim * dim;
    std::vector<std::vector<double>> basis;

    std::vector<MatD> stack = {MatD::identity(dim)};
    std::vector<MatD> gen_inv;
    for (const MatD& g : rep.gens) gen_inv.push_back(symplectic_inverse(g));

    int spanned = 0;
    auto absorb = [&](const MatD& m) {
        if (spanned == full) return;
        std::vector<double> v(full);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) v[i * dim + j] = m(i, j);
        double norm0 = 0.0;
        for (double x : v) norm0 += x * x;
        norm0 = std::sqrt(norm0);
        for (const auto& b : basis) {
            double dot = 0.0;
            for (int k = 0; k < full; ++k) dot += v[k] * b[k];
            for (int k = 0; k < full; ++k) v[k] -= dot * b[k];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 1e-8 * std::max(1.0, norm0)) {
            for (double& x : v) x /= norm;
            basis.push_back(std::move(v));
            ++spanned;
        }
    };

    walk_reduced_words(
        rep.presentation.num_generators(), max_len,
        [&](int letter) {
            const MatD& step = letter > 0 ? rep.gens[letter - 1] : gen_inv[-letter - 1];
            stack.push_back(stack.back() * step);
        },
        [&]() { stack.pop_back(); },
        [&](const std::vector<int>&) { absorb(stack.back()); });
    return spanned;
}

} // namespace maxrep
