#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "maxrep/maxrep.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

LagrangianFrame<Rat> line(Rat x, Rat y) {
    MatQ f(2, 1);
    f(0, 0) = x;
    f(1, 0) = y;
    return LagrangianFrame<Rat>(f);
}

} // namespace

TEST_CASE("maslov index on the pinned n=1 examples") {
    auto le = line(1, 0), diag = line(1, 1), lf = line(0, 1), anti = line(1, -1);
    CHECK(maslov_index(le, diag, lf) == 1);
    CHECK(maslov_index(le, le, lf) == 0); // repeated argument kills the cocycle
    CHECK(maslov_index(le, lf, anti) == -1);
}

TEST_CASE("sign-of-Q route agrees with the stated examples") {
    auto le = line(1, 0), diag = line(1, 1), lf = line(0, 1), anti = line(1, -1);
    CHECK(maslov_via_sign(le, diag, lf) == 1);
    CHECK(maslov_via_sign(le, anti, lf) == -1);
    CHECK(maslov_via_sign(le, le, lf) == 0);
}

TEST_CASE("maximal triples and quadruples at n=1") {
    auto le = line(1, 0), diag = line(1, 1), lf = line(0, 1), anti = line(1, -1);
    CHECK(is_maximal_triple(le, diag, lf));
    CHECK_FALSE(is_maximal_triple(le, le, lf));
    // (e1, e1+f1, f1, e1-f1) in this cyclic order
    CHECK(is_maximal_quadruple(le, diag, lf, anti));
}

TEST_CASE("J(tau) of the reference triple is the standard structure") {
    auto le = line(1, 0), diag = line(1, 1), lf = line(0, 1);
    MatQ j = complex_structure_from_triple(le, diag, lf);
    CHECK(j(0, 0) == Rat(0));
    CHECK(j(0, 1) == Rat(-1));
    CHECK(j(1, 0) == Rat(1));
    CHECK(j(1, 1) == Rat(0));
    // q_J(e1) = 1 > 0
    MatQ gram = omega<Rat>(1) * j;
    CHECK(gram(0, 0) == Rat(1));
}

TEST_CASE("J(tau) refuses non-maximal triples") {
    auto le = line(1, 0), lf = line(0, 1), anti = line(1, -1);
    CHECK_THROWS_AS(complex_structure_from_triple(le, anti, lf), std::invalid_argument);
}

TEST_CASE("J(tau) is equivariant and positive on random maximal triples") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto triple = random_maximal_triple<Rat>(rng, n);
        MatQ j = complex_structure_from_triple(triple[0], triple[1], triple[2]);
        auto g = random_symplectic<Rat>(rng, n);
        MatQ jg = complex_structure_from_triple(apply(g, triple[0]), apply(g, triple[1]),
                                                apply(g, triple[2]));
        CHECK((jg - g * j * inverse(g)).max_abs() == 0.0);
    }
}

TEST_CASE("orientation cocycle on the stated examples") {
    auto p = [](double t) { return CirclePoint::from_angle(t); };
    double pi = std::numbers::pi;
    CHECK(orientation_cocycle(p(0), p(2 * pi / 3), p(4 * pi / 3)) == 1);
    CHECK(orientation_cocycle(p(0), p(4 * pi / 3), p(2 * pi / 3)) == -1);
    CHECK(orientation_cocycle(p(0), p(0), p(pi)) == 0);
}

TEST_CASE("monotonicity check on the stated examples") {
    auto l0 = line(1, 0), l1 = line(1, 1), l2 = line(1, 2), loo = line(0, 1);
    CHECK(monotonicity_check(l0, l1, l2, loo));
    CHECK_FALSE(monotonicity_check(l0, l2, l1, loo));
    CHECK_THROWS_AS(monotonicity_check(l0, l0, l2, loo), std::invalid_argument);
}

TEST_CASE("cocycle identity holds exactly on random rational quadruples") {
    Rng rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto l1 = random_lagrangian<Rat>(rng, n);
        auto l2 = random_lagrangian<Rat>(rng, n);
        auto l3 = random_lagrangian<Rat>(rng, n);
        auto l4 = random_lagrangian<Rat>(rng, n);
        int lhs = maslov_index(l2, l3, l4) - maslov_index(l1, l3, l4) + maslov_index(l1, l2, l4) -
                  maslov_index(l1, l2, l3);
        CHECK(lhs == 0);
    }
}

TEST_CASE("the index is alternating") {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.below(2));
        auto a = random_lagrangian<Rat>(rng, n);
        auto b = random_lagrangian<Rat>(rng, n);
        auto c = random_lagrangian<Rat>(rng, n);
        int base = maslov_index(a, b, c);
        CHECK(maslov_index(b, a, c) == -base);
        CHECK(maslov_index(a, c, b) == -base);
        CHECK(maslov_index(b, c, a) == base);
        CHECK(maslov_index(c, a, b) == base);
        CHECK(maslov_index(c, b, a) == -base);
    }
}

TEST_CASE("the index is Sp-invariant") {
    Rng rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto a = random_lagrangian<Rat>(rng, n);
        auto b = random_lagrangian<Rat>(rng, n);
        auto c = random_lagrangian<Rat>(rng, n);
        auto g = random_symplectic<Rat>(rng, n);
        CHECK(maslov_index(apply(g, a), apply(g, b), apply(g, c)) == maslov_index(a, b, c));
    }
}

TEST_CASE("range and parity on transverse triples; extremes force transversality") {
    Rng rng(35);
    int found_extreme = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2;
        auto a = random_lagrangian<Rat>(rng, n);
        auto b = random_lagrangian<Rat>(rng, n);
        auto c = random_lagrangian<Rat>(rng, n);
        bool pairwise = is_transverse(a, b).transverse && is_transverse(b, c).transverse &&
                        is_transverse(a, c).transverse;
        int beta = maslov_index(a, b, c);
        CHECK(std::abs(beta) <= n);
        if (pairwise) CHECK((beta - n) % 2 == 0);
        if (!pairwise) CHECK(std::abs(beta) < n); // extremes only on transverse triples
        if (std::abs(beta) == n) {
            CHECK(pairwise);
            ++found_extreme;
        }
    }
    CHECK(found_extreme > 0);
}

TEST_CASE("non-transverse triples stay away from the extremes") {
    // shared vector e1 between L1 and L2 at n = 2
    MatQ f1(4, 2), f2(4, 2);
    f1(0, 0) = 1;
    f1(1, 1) = 1; // span(e1, e2)
    f2(0, 0) = 1;
    f2(3, 1) = 1; // span(e1, f2)
    LagrangianFrame<Rat> l1(f1), l2(f2);
    auto l3 = span_f_block<Rat>(2);
    CHECK(std::abs(maslov_index(l1, l2, l3)) < 2);
}

TEST_CASE("the two routes agree wherever both are defined") {
    Rng rng(36);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto l1 = random_lagrangian<Rat>(rng, n);
        auto l = random_lagrangian<Rat>(rng, n);
        auto l3 = random_lagrangian<Rat>(rng, n);
        if (!is_transverse(l1, l3).transverse || !is_transverse(l, l3).transverse) continue;
        CHECK(maslov_via_sign(l1, l, l3) == maslov_index(l1, l, l3));
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("block-split Lagrangians add their indices") {
    Rng rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        int n1 = 1 + static_cast<int>(rng.below(2));
        int n2 = 1 + static_cast<int>(rng.below(2));
        auto a1 = random_lagrangian<Rat>(rng, n1);
        auto b1 = random_lagrangian<Rat>(rng, n1);
        auto c1 = random_lagrangian<Rat>(rng, n1);
        auto a2 = random_lagrangian<Rat>(rng, n2);
        auto b2 = random_lagrangian<Rat>(rng, n2);
        auto c2 = random_lagrangian<Rat>(rng, n2);
        // direct sum in the (e, f) ordering: e-parts stack, f-parts stack
        auto direct_sum = [&](const LagrangianFrame<Rat>& x, const LagrangianFrame<Rat>& y) {
            MatQ f(2 * (n1 + n2), n1 + n2);
            f.set_block(0, 0, x.frame.block(0, 0, n1, n1));
            f.set_block(n1 + n2, 0, x.frame.block(n1, 0, n1, n1));
            f.set_block(n1, n1, y.frame.block(0, 0, n2, n2));
            f.set_block(2 * n1 + n2, n1, y.frame.block(n2, 0, n2, n2));
            return LagrangianFrame<Rat>(f);
        };
        int sum = maslov_index(direct_sum(a1, a2), direct_sum(b1, b2), direct_sum(c1, c2));
        CHECK(sum == maslov_index(a1, b1, c1) + maslov_index(a2, b2, c2));
    }
}

TEST_CASE("orientation cocycle matches the n=1 index through the chart") {
    Rng rng(38);
    for (int trial = 0; trial < 60; ++trial) {
        CirclePoint x = CirclePoint::from_angle(rng.range(0.0, 2.0 * std::numbers::pi));
        CirclePoint y = CirclePoint::from_angle(rng.range(0.0, 2.0 * std::numbers::pi));
        CirclePoint z = CirclePoint::from_angle(rng.range(0.0, 2.0 * std::numbers::pi));
        int b1 = orientation_cocycle(x, y, z);
        int bn = maslov_index(circle_chart_line(x), circle_chart_line(y), circle_chart_line(z),
                              1e-9);
        CHECK(bn == b1);
    }
}

TEST_CASE("orientation cocycle satisfies cocycle and alternation identities") {
    Rng rng(39);
    for (int trial = 0; trial < 60; ++trial) {
        auto p = [&]() { return CirclePoint::from_angle(rng.range(0.0, 2.0 * std::numbers::pi)); };
        CirclePoint a = p(), b = p(), c = p(), d = p();
        int lhs = orientation_cocycle(b, c, d) - orientation_cocycle(a, c, d) +
                  orientation_cocycle(a, b, d) - orientation_cocycle(a, b, c);
        CHECK(lhs == 0);
        CHECK(orientation_cocycle(b, a, c) == -orientation_cocycle(a, b, c));
    }
}
