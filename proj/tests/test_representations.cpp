#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "maxrep/maxrep.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

SurfaceRep trivial_rep(int n) {
    return SurfaceRep(Presentation{2}, n,
                      std::vector<MatD>(4, MatD::identity(2 * n)), "custom");
}

} // namespace

TEST_CASE("interleave permutation carries the form correctly") {
    for (int r = 1; r <= 3; ++r) {
        MatD p = interleave_permutation(r);
        MatD omega_int(2 * r, 2 * r);
        for (int k = 0; k < r; ++k) {
            omega_int(2 * k, 2 * k + 1) = 1.0;
            omega_int(2 * k + 1, 2 * k) = -1.0;
        }
        CHECK((p.transpose() * omega_int * p - omega<double>(r)).max_abs() == 0.0);
    }
}

TEST_CASE("rank-one polydisk is the hyperbolization in Sp(2,R)") {
    auto h = default_hyperbolization();
    SurfaceRep rep = polydisk_rep({h});
    REQUIRE(rep.n == 1);
    for (int i = 0; i < 4; ++i) CHECK((rep.gens[i] - h.gens[i]).max_abs() == 0.0);
    CHECK(rep.relator_residual < 1e-9);
}

TEST_CASE("equal-component polydisk commutes with the block swap") {
    auto h = default_hyperbolization();
    SurfaceRep rep = polydisk_rep({h, h});
    // swap of the two planes in the standard ordering: e1<->e2, f1<->f2
    MatD swap(4, 4);
    swap(0, 1) = swap(1, 0) = swap(2, 3) = swap(3, 2) = 1.0;
    for (const MatD& g : rep.gens) CHECK((swap * g - g * swap).max_abs() < 1e-12);
    CHECK(rep.relator_residual < 1e-9);
}

TEST_CASE("polydisk relator residual is controlled by the components") {
    auto h = default_hyperbolization(0.3);
    SurfaceRep rep = polydisk_rep({h, h});
    CHECK(rep.relator_residual <= 2 * h.relator_residual + 1e-12);
}

TEST_CASE("irreducible representation on the stated examples") {
    CHECK((irreducible_rep(MatD::identity(2), 2) - MatD::identity(4)).max_abs() < 1e-12);

    double lambda = 1.8;
    MatD d(2, 2, {lambda, 0, 0, 1 / lambda});
    MatD rep = irreducible_rep(d, 2);
    auto mods = spectrum_moduli(rep);
    CHECK(mods[0] == Catch::Approx(std::pow(lambda, 3)).epsilon(1e-9));
    CHECK(mods[1] == Catch::Approx(lambda).epsilon(1e-9));
    CHECK(mods[2] == Catch::Approx(1 / lambda).epsilon(1e-9));
    CHECK(mods[3] == Catch::Approx(std::pow(lambda, -3)).epsilon(1e-9));
}

TEST_CASE("irreducible representation is multiplicative") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng.below(2));
        MatD m = random_symplectic<double>(rng, 1, 3);
        MatD k = random_symplectic<double>(rng, 1, 3);
        MatD lhs = irreducible_rep(m * k, n);
        MatD rhs = irreducible_rep(m, n) * irreducible_rep(k, n);
        CHECK((lhs - rhs).max_abs() < 1e-8 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("irreducible surface representation closes the relator") {
    auto h = default_hyperbolization();
    SurfaceRep rep = irreducible_surface_rep(h, 2);
    CHECK(rep.n == 2);
    CHECK(rep.relator_residual < 1e-6);
}

TEST_CASE("centralizer element validates O(2)") {
    CHECK_NOTHROW(CentralizerElement::rotation(0.7).validate());
    CentralizerElement bad{1.0, 0.4, 0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    // reflection block is also in O(2)
    CentralizerElement refl{1.0, 0.0, 0.0, -1.0};
    CHECK_NOTHROW(refl.validate());
}

TEST_CASE("centralizer really centralizes the diagonal polydisk") {
    Rng rng(62);
    MatD z = CentralizerElement::rotation(0.9).matrix();
    CHECK(symplectic_residual(z) < 1e-12);
    for (int trial = 0; trial < 8; ++trial) {
        MatD m = random_symplectic<double>(rng, 1, 4);
        MatD diag = polydisk_embed({m, m});
        CHECK((z * diag - diag * z).max_abs() < 1e-10 * std::max(1.0, diag.max_abs()));
    }
}

TEST_CASE("amalgam at z = Id is the diagonal polydisk rep") {
    auto h = default_hyperbolization();
    SurfaceRep amalgam = amalgam_z_rep(h, CentralizerElement{});
    SurfaceRep diag = polydisk_rep({h, h});
    for (int i = 0; i < 4; ++i) CHECK((amalgam.gens[i] - diag.gens[i]).max_abs() < 1e-12);
}

TEST_CASE("amalgam closes the relator away from the identity") {
    auto h = default_hyperbolization();
    SurfaceRep rep = amalgam_z_rep(h, CentralizerElement::rotation(std::numbers::pi / 4));
    CHECK(rep.relator_residual < 1e-6);
    CHECK(rep.n == 2);
}

TEST_CASE("degenerate representation is the stated negative control") {
    auto h = default_hyperbolization();
    SurfaceRep rep = degenerate_rep(h);
    CHECK(rep.relator_residual < 1e-12);
    CHECK((rep.gens[0] * rep.gens[1] - rep.gens[1] * rep.gens[0]).max_abs() < 1e-10);
    CHECK((rep.gens[2] - MatD::identity(2)).max_abs() == 0.0);
}

TEST_CASE("algebra span separates the constructions") {
    auto h = default_hyperbolization();
    CHECK(algebra_span(trivial_rep(1), 2) == 1);
    CHECK(algebra_span(trivial_rep(2), 2) == 1);

    SurfaceRep diag = polydisk_rep({h, h});
    CHECK(algebra_span(diag, 4) <= 8);

    SurfaceRep rho_z = amalgam_z_rep(h, CentralizerElement::rotation(std::numbers::pi / 4));
    CHECK(algebra_span(rho_z, 4) == 16); // Burnside: full matrix algebra
}

TEST_CASE("conjugation preserves the algebra span") {
    Rng rng(63);
    auto h = default_hyperbolization();
    SurfaceRep rho_z = amalgam_z_rep(h, CentralizerElement::rotation(std::numbers::pi / 4));
    MatD g = random_symplectic<double>(rng, 2, 3);
    CHECK(algebra_span(conjugate_rep(g, rho_z), 3) == algebra_span(rho_z, 3));
}

TEST_CASE("constructors reject broken input") {
    auto h = default_hyperbolization();
    // generator count mismatch
    CHECK_THROWS_AS(SurfaceRep(Presentation{2}, 1, std::vector<MatD>(3, MatD::identity(2)), "custom"),
                    std::invalid_argument);
    // non-symplectic generator
    std::vector<MatD> bad(4, MatD::identity(2));
    bad[0](0, 0) = 2.0;
    CHECK_THROWS_AS(SurfaceRep(Presentation{2}, 1, bad, "custom"), std::invalid_argument);
    // relator violation: random images do not close up
    Rng rng(64);
    std::vector<MatD> open_gens;
    for (int i = 0; i < 4; ++i) open_gens.push_back(random_symplectic<double>(rng, 1, 3));
    CHECK_THROWS_AS(SurfaceRep(Presentation{2}, 1, open_gens, "custom"), std::invalid_argument);
    (void)h;
}
