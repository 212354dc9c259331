#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "maxrep/maxrep.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

const Hyperbolization& ref_hyp() {
    static Hyperbolization h = default_hyperbolization();
    return h;
}

const SurfaceRep& ref_rho_z() {
    static SurfaceRep rep =
        amalgam_z_rep(ref_hyp(), CentralizerElement::rotation(std::numbers::pi / 4));
    return rep;
}

const LimitCurveSample& rho_z_sample_l5() {
    static LimitCurveSample s = sample_limit_curve(ref_rho_z(), ref_hyp(), 5);
    return s;
}

} // namespace

TEST_CASE("attracting Lagrangian on the stated examples") {
    MatD d(2, 2, {2, 0, 0, 0.5});
    auto l = attracting_lagrangian(d);
    CHECK(l.same_subspace(span_e_block<double>(1)));

    // n = 2, ordering (e1, e2, f1, f2)
    MatD d4(4, 4);
    d4(0, 0) = 3;
    d4(1, 1) = 2;
    d4(2, 2) = 0.5;
    d4(3, 3) = 1.0 / 3;
    auto l4 = attracting_lagrangian(d4);
    CHECK(l4.same_subspace(span_e_block<double>(2)));

    // g and g^2 share the invariant subspace
    auto lsq = attracting_lagrangian(d4 * d4);
    CHECK(l4.same_subspace(lsq));
}

TEST_CASE("attracting Lagrangian refuses weak gaps") {
    CHECK_THROWS_WITH(attracting_lagrangian(so2(0.3)),
                      Catch::Matchers::ContainsSubstring("not proximal"));
    MatD weak(2, 2, {1.04, 0, 0, 1 / 1.04});
    CHECK_THROWS_AS(attracting_lagrangian(weak, 0.05), std::invalid_argument);
}

TEST_CASE("limit curve sampling produces a usable skeleton") {
    const LimitCurveSample& s = rho_z_sample_l5();
    CHECK(s.n == 2);
    CHECK(s.size() >= 100);
    for (size_t i = 1; i < s.size(); ++i)
        CHECK(s.entries[i].point.theta > s.entries[i - 1].point.theta);
    for (const auto& e : s.entries) CHECK(e.gap_margin > 0.0);
}

TEST_CASE("polydisk limit curve frames split into plane blocks") {
    SurfaceRep diag = polydisk_rep({ref_hyp(), ref_hyp()});
    LimitCurveSample s = sample_limit_curve(diag, ref_hyp(), 4);
    for (size_t k = 0; k < std::min<size_t>(s.size(), 25); ++k) {
        const MatD& f = s.entries[k].frame.frame;
        // plane 1 rows (e1, f1) = (0, 2); plane 2 rows (e2, f2) = (1, 3)
        MatD p1(2, 2), p2(2, 2);
        p1(0, 0) = f(0, 0);
        p1(0, 1) = f(0, 1);
        p1(1, 0) = f(2, 0);
        p1(1, 1) = f(2, 1);
        p2(0, 0) = f(1, 0);
        p2(0, 1) = f(1, 1);
        p2(1, 0) = f(3, 0);
        p2(1, 1) = f(3, 1);
        CHECK(rank(p1, 1e-8) == 1);
        CHECK(rank(p2, 1e-8) == 1);
    }
}

TEST_CASE("sampling density: consecutive angular gaps are below 0.2 rad at L = 6") {
    SurfaceRep rep(ref_hyp().presentation, 1, ref_hyp().gens, "hyperbolization");
    LimitCurveSample s = sample_limit_curve(rep, ref_hyp(), 6);
    double worst = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        double next = (i + 1 < s.size()) ? s.entries[i + 1].point.theta
                                         : s.entries[0].point.theta + 2 * std::numbers::pi;
        worst = std::max(worst, next - s.entries[i].point.theta);
    }
    CHECK(worst < 0.2);
}

TEST_CASE("equivariance spot check on the sampled curve") {
    const LimitCurveSample& s = rho_z_sample_l5();
    const MatD& ha = ref_hyp().gens[0];
    const MatD& ra = ref_rho_z().gens[0];
    size_t matched = 0;
    for (size_t k = 0; k < s.size() && matched < 10; k += 7) {
        const auto& e = s.entries[k];
        MatD v(2, 1);
        v(0, 0) = std::cos(e.point.theta / 2);
        v(1, 0) = std::sin(e.point.theta / 2);
        MatD hv = ha * v;
        CirclePoint moved = CirclePoint::from_direction(hv(0, 0), hv(1, 0));
        // find the sample at the moved angle, if present
        for (const auto& other : s.entries) {
            if (std::abs(other.point.theta - moved.theta) < 1e-9) {
                LagrangianFrame<double> pushed(ra * e.frame.frame);
                CHECK(pushed.same_subspace(other.frame));
                ++matched;
                break;
            }
        }
    }
    CHECK(matched > 0);
}

TEST_CASE("maximality identity holds on the sampled curve") {
    SuiteReport r = verify_maximality(rho_z_sample_l5(), 4000, 7);
    CHECK(r.checked == 4000);
    CHECK(r.violations == 0);
}

TEST_CASE("degenerate control violates the identity and repeats subspaces") {
    SurfaceRep rep = degenerate_rep(ref_hyp());
    LimitCurveSample s = sample_limit_curve(rep, ref_hyp(), 5);
    SuiteReport r = verify_maximality(s, 2000, 8);
    CHECK(r.violations > 0);
}

TEST_CASE("transversality suite is clean on the maximal sample") {
    SuiteReport r = verify_transversality(rho_z_sample_l5());
    CHECK(r.violations == 0);
    CHECK(r.checked == rho_z_sample_l5().size() * (rho_z_sample_l5().size() - 1) / 2);
}

TEST_CASE("a duplicated frame at distinct angles is reported") {
    LimitCurveSample fake = rho_z_sample_l5();
    fake.entries[1].frame = fake.entries[0].frame; // constructed failure
    SuiteReport r = verify_transversality(fake);
    CHECK(r.violations > 0);
}

TEST_CASE("monotonicity suite is clean on the maximal sample") {
    SuiteReport r = verify_monotonicity(rho_z_sample_l5(), 1500, 9);
    CHECK(r.checked == 1500);
    CHECK(r.violations == 0);
}

TEST_CASE("injectivity proxy: distinct angles carry distinct subspaces") {
    const LimitCurveSample& s = rho_z_sample_l5();
    for (size_t k = 0; k + 1 < std::min<size_t>(s.size(), 60); ++k)
        CHECK_FALSE(s.entries[k].frame.same_subspace(s.entries[k + 1].frame));
}

TEST_CASE("rectifiable length obeys the cone bound and grows under refinement") {
    SurfaceRep rep = ref_rho_z();
    LimitCurveSample s4 = sample_limit_curve(rep, ref_hyp(), 4);
    LimitCurveSample s6 = sample_limit_curve(rep, ref_hyp(), 6);
    // fixed chart: the angles of the first and the "opposite" sample at L=4
    double theta_a = s4.entries[0].point.theta;
    double theta_b = s4.entries[s4.size() / 2].point.theta;
    auto locate = [](const LimitCurveSample& s, double theta) {
        for (size_t i = 0; i < s.size(); ++i)
            if (std::abs(s.entries[i].point.theta - theta) < 1e-9) return i;
        throw std::runtime_error("chart endpoint not found");
    };
    RectifiabilityResult r4 = rectifiable_length(s4, locate(s4, theta_a), locate(s4, theta_b));
    RectifiabilityResult r6 = rectifiable_length(s6, locate(s6, theta_a), locate(s6, theta_b));
    CHECK(r4.polygonal_length <= r4.trace_bound);
    CHECK(r6.polygonal_length <= r6.trace_bound);
    CHECK(r6.polygonal_length >= r4.polygonal_length - 1e-12);
    CHECK(r4.trace_bound <= r6.trace_bound + 1e-12);
}

TEST_CASE("two-sample charts degenerate to a single segment") {
    const LimitCurveSample& s = rho_z_sample_l5();
    // chart that contains exactly the two samples between its endpoints
    size_t a = 0, b = 3;
    LimitCurveSample tiny;
    tiny.n = s.n;
    tiny.entries = {s.entries[a], s.entries[1], s.entries[2], s.entries[b]};
    RectifiabilityResult r = rectifiable_length(tiny, 0, 3);
    CHECK(r.segments == 1);
    MatD q1 = q_form(tiny.entries[1].frame, tiny.entries[0].frame, tiny.entries[3].frame);
    MatD q2 = q_form(tiny.entries[2].frame, tiny.entries[0].frame, tiny.entries[3].frame);
    CHECK(r.polygonal_length == Catch::Approx((q2 - q1).frobenius()));
}

TEST_CASE("overlapping charts agree on shared arcs within the coarse gate") {
    const LimitCurveSample& s = rho_z_sample_l5();
    const size_t len = s.size();
    // two charts overlapping on a common arc, compared on the overlap only
    size_t a1 = 0, b1 = len / 2 + 5, a2 = 2, b2 = len / 2 + 2;
    auto arc_length = [&](size_t a, size_t b, size_t from, size_t to) {
        double acc = 0.0;
        MatD prev;
        bool first = true;
        for (size_t i = from; i <= to; ++i) {
            MatD q = q_form(s.entries[i].frame, s.entries[a].frame, s.entries[b].frame);
            if (!first) acc += (q - prev).frobenius();
            prev = q;
            first = false;
        }
        return acc;
    };
    double len1 = arc_length(a1, b1, 5, len / 2 - 5);
    double len2 = arc_length(a2, b2, 5, len / 2 - 5);
    CHECK(std::abs(len1 - len2) <= 0.10 * std::max(len1, len2));
}

TEST_CASE("qi scan separates maximal from degenerate") {
    auto j0 = ComplexStructureJ::standard(2);
    QiScanReport report = qi_scan(ref_rho_z(), j0, 6);
    CHECK(report.slope > 0.1);
    for (size_t l = 2; l < report.min_d.size(); ++l)
        CHECK(report.min_d[l] >= report.min_d[l - 1] - 1e-9);

    auto j1 = ComplexStructureJ::standard(1);
    QiScanReport degen = qi_scan(degenerate_rep(ref_hyp()), j1, 5);
    for (size_t l = 1; l < degen.min_d.size(); ++l)
        CHECK(degen.min_d[l] == Catch::Approx(0.0).margin(1e-9));
    CHECK(std::abs(degen.slope) < 0.05);
}

TEST_CASE("qi scan upper bound is subadditive up to the quasi-metric slack") {
    auto j0 = ComplexStructureJ::standard(2);
    const SurfaceRep& rep = ref_rho_z();
    QiScanReport report = qi_scan(rep, j0, 5);
    double gen_max = 0.0;
    for (const MatD& g : rep.gens) gen_max = std::max(gen_max, siegel_distance(j0, act(g, j0)));
    for (size_t l = 0; l < report.max_d.size(); ++l)
        CHECK(report.max_d[l] <= 2.0 * gen_max * (l + 1));
}

TEST_CASE("qi slope is stable when the scan deepens") {
    auto j0 = ComplexStructureJ::standard(2);
    QiScanReport r5 = qi_scan(ref_rho_z(), j0, 5);
    QiScanReport r7 = qi_scan(ref_rho_z(), j0, 7);
    CHECK(std::abs(r7.slope - r5.slope) <= 0.2 * std::max(r5.slope, r7.slope));
}

TEST_CASE("contraction exponents meet the eigenvalue prediction") {
    SurfaceRep diag = polydisk_rep({ref_hyp(), ref_hyp()});
    Word a1({1});
    ContractionReport r = contraction_exponent(diag, ref_hyp(), a1);
    // block eigenvalues equal the SL2 multipliers: prediction is ln(2.5)/(2 ln 2.5) = 1/2
    CHECK(r.predicted == Catch::Approx(0.5).epsilon(1e-6));
    CHECK(r.measured >= r.predicted - 0.05);
    CHECK(r.monotone);
    CHECK(r.growth > 0.0);

    ContractionReport rz = contraction_exponent(ref_rho_z(), ref_hyp(), Word({1, 2}));
    CHECK(rz.measured >= rz.predicted - 0.05);
    CHECK(rz.monotone);
}
