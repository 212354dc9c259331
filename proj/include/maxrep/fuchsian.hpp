#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxrep/maslov.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/words.hpp"

namespace maxrep {

/// Rotation about i in the upper half-plane model: k(t) rotates tangent
/// directions at i by 2t.
inline MatD so2(double t) {
    MatD r(2, 2);
    r(0, 0) = std::cos(t);
    r(0, 1) = std::sin(t);
    r(1, 0) = -std::sin(t);
    r(1, 1) = std::cos(t);
    return r;
}

struct OneHoledTorus {
    MatD a;          // translation along the imaginary axis, multiplier lambda^2
    MatD b;          // translation along a geodesic crossing it at the given angle
    MatD commutator; // K = [A, B]
    double trace_k = 0.0;
};

/// Generators of a one-holed torus group. The Fricke gate tr[A,B] < -2
/// certifies discreteness and freeness of <A, B>.
inline OneHoledTorus one_holed_torus(double lambda, double mu, double angle) {
    if (!(lambda > 1.0) || !(mu > 1.0))
        throw std::invalid_argument("one_holed_torus: multipliers must exceed 1");
    MatD a(2, 2);
    a(0, 0) = lambda;
    a(1, 1) = 1.0 / lambda;
    MatD d(2, 2);
    d(0, 0) = mu;
    d(1, 1) = 1.0 / mu;
    MatD r = so2(angle / 2.0); // axis tilted by `angle` at the crossing point
    MatD b = r * d * r.transpose();
    MatD k = a * b * inverse(a) * inverse(b);
    double tr = k(0, 0) + k(1, 1);
    if (!(tr < -2.0))
        throw std::invalid_argument("one_holed_torus: tr[A,B] = " + std::to_string(tr) +
                                    " >= -2, not a one-holed torus group");
    return {std::move(a), std::move(b), std::move(k), tr};
}

/// Genus-2 Fuchsian hyperbolization, built by doubling a one-holed torus
/// across its boundary geodesic.
struct Hyperbolization {
    Presentation presentation{2};
    std::vector<MatD> gens; // a1, b1, a2, b2
    double twist = 0.0;
    double relator_residual = 0.0;

    const MatD& a1() const { return gens[0]; }
    const MatD& b1() const { return gens[1]; }
    /// the separating curve gamma = [a1, b1]
    MatD gamma() const { return gens[0] * gens[1] * inverse(gens[0]) * inverse(gens[1]); }
};

namespace detail {

/// Eigenbasis of a hyperbolic 2x2 matrix, det-normalized, attracting
/// direction first.
inline MatD hyperbolic_eigenbasis(const MatD& m) {
    double tr = m(0, 0) + m(1, 1);
    double disc = tr * tr - 4.0;
    if (!(disc > 0.0)) throw std::invalid_argument("hyperbolic_eigenbasis: |trace| <= 2");
    double root = std::sqrt(disc);
    double l1 = (tr + root) / 2.0, l2 = (tr - root) / 2.0; // l1*l2 = det = 1
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
    auto eigvec = [&](double lam) {
        MatD v(2, 1);
        // rows of (M - lam I) are proportional; use the better-conditioned one
        double r0 = std::hypot(m(0, 0) - lam, m(0, 1));
        double r1 = std::hypot(m(1, 0), m(1, 1) - lam);
        if (r0 >= r1) {
            v(0, 0) = -m(0, 1);
            v(1, 0) = m(0, 0) - lam;
        } else {
            v(0, 0) = -(m(1, 1) - lam);
            v(1, 0) = m(1, 0);
        }
        double norm = std::hypot(v(0, 0), v(1, 0));
        v(0, 0) /= norm;
        v(1, 0) /= norm;
        return v;
    };
    MatD v = hcat(eigvec(l1), eigvec(l2)); // attracting first
    double dv = det(v);
    if (std::abs(dv) < 1e-12) throw std::runtime_error("hyperbolic_eigenbasis: degenerate eigenbasis");
    if (dv < 0) { // flip second column so det > 0
        v(0, 1) = -v(0, 1);
        v(1, 1) = -v(1, 1);
        dv = -dv;
    }
    double s = 1.0 / std::sqrt(dv);
    return v * s; // det = 1
}

} // namespace detail

/// Doubles (A, B) across the boundary geodesic of K = [A, B]: the gluing
/// map J_s is a pi-rotation about a point on the axis of K composed with
/// translation by s along that axis, so that [a2, b2] = K^{-1} and the
/// standard genus-2 relator closes up.
inline Hyperbolization double_torus(const OneHoledTorus& torus, double twist) {
    MatD v = detail::hyperbolic_eigenbasis(torus.commutator);
    MatD vinv = inverse(v);
    MatD trans(2, 2);
    trans(0, 0) = std::exp(twist / 2.0);
    trans(1, 1) = std::exp(-twist / 2.0);
    MatD rot(2, 2); // pi-rotation about the base point of the axis
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    MatD js = v * trans * rot * vinv;
    MatD jsinv = inverse(js);

    Hyperbolization h;
    h.twist = twist;
    h.gens = {torus.a, torus.b, js * torus.a * jsinv, js * torus.b * jsinv};
    MatD rel = evaluate_word(h.gens, h.presentation.relator());
    h.relator_residual = (rel - MatD::identity(2)).max_abs();
    if (h.relator_residual > 1e-9)
        throw std::runtime_error("double_torus: relator residual " +
                                 std::to_string(h.relator_residual));
    return h;
}

inline Hyperbolization default_hyperbolization(double twist = 0.0) {
    return double_torus(one_holed_torus(2.5, 2.5, std::numbers::pi / 2.0), twist);
}

struct FixedPoints {
    CirclePoint attracting;
    CirclePoint repelling;
};

/// Boundary fixed points of a hyperbolic Mobius transformation, as points
/// of RP^1 in the double-angle chart.
inline FixedPoints mobius_fixed_points(const MatD& m) {
    double tr = m(0, 0) + m(1, 1);
    if (!(std::abs(tr) > 2.0)) throw std::invalid_argument("mobius_fixed_points: not hyperbolic");
    double root = std::sqrt(tr * tr - 4.0);
    double l1 = (tr + root) / 2.0, l2 = (tr - root) / 2.0;
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2); // l1 attracting
    auto direction = [&](double lam) {
        double x, y;
        double r0 = std::hypot(m(0, 0) - lam, m(0, 1));
        double r1 = std::hypot(m(1, 0), m(1, 1) - lam);
        if (r0 >= r1) {
            x = -m(0, 1);
            y = m(0, 0) - lam;
        } else {
            x = -(m(1, 1) - lam);
            y = m(1, 0);
        }
        return CirclePoint::from_direction(x, y);
    };
    return {direction(l1), direction(l2)};
}

/// Translation length of a hyperbolic element: 2 arccosh(|tr|/2).
inline double translation_length(const MatD& m) {
    double tr = std::abs(m(0, 0) + m(1, 1));
    if (!(tr > 2.0)) throw std::invalid_argument("translation_length: not hyperbolic");
    return 2.0 * std::acosh(tr / 2.0);
}

} // namespace maxrep
