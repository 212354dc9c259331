#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxrep/eigen.hpp"
#include "maxrep/fuchsian.hpp"
#include "maxrep/maslov.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/representations.hpp"
#include "maxrep/rng.hpp"
#include "maxrep/siegel.hpp"
#include "maxrep/symplectic.hpp"
#include "maxrep/tolerance.hpp"
#include "maxrep/words.hpp"

namespace maxrep {

namespace detail {

inline MatD orthonormalize_columns(const MatD& m) {
    const int rows = m.rows(), cols = m.cols();
    MatD q = m;
    for (int j = 0; j < cols; ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int i = 0; i < rows; ++i) dot += q(i, k) * q(i, j);
            for (int i = 0; i < rows; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < rows; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        if (norm < 1e-14) throw std::runtime_error("orthonormalize_columns: rank deficiency");
        for (int i = 0; i < rows; ++i) q(i, j) /= norm;
    }
    return q;
}

/// Dominant n-dimensional invariant subspace by subspace power iteration
/// with re-orthonormalization. Gap checking is the caller's business.
inline MatD dominant_subspace(const MatD& g, int n) {
    const int dim = g.rows();
    Rng rng(0x5eedf00du);
    for (int attempt = 0; attempt < 5; ++attempt) {
        MatD b(dim, n);
        if (attempt == 0) {
            for (int i = 0; i < n; ++i) b(i, i) = 1.0;
        } else if (attempt == 1) {
            for (int i = 0; i < n; ++i) b(dim - n + i, i) = 1.0;
        } else {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < n; ++j) b(i, j) = rng.range(-1.0, 1.0);
        }
        try {
            b = orthonormalize_columns(b);
        } catch (const std::runtime_error&) {
            continue;
        }
        MatD proj_prev = b * b.transpose();
        bool converged = false;
        for (int iter = 0; iter < 800; ++iter) {
            b = orthonormalize_columns(g * b);
            MatD proj = b * b.transpose();
            double change = (proj - proj_prev).max_abs();
            proj_prev = proj;
            if (change < 1e-14) {
                converged = true;
                break;
            }
        }
        if (converged) return b;
    }
    throw std::runtime_error("dominant_subspace: power iteration did not converge");
}

} // namespace detail

struct SpectralGap {
    double expanding = 0.0;   // |lambda_n|
    double contracting = 0.0; // |lambda_{n+1}|
    double margin = 0.0;      // distance of both to the 1 +/- delta gates

    bool ok() const { return margin > 0.0; }
};

inline SpectralGap spectral_gap(const MatD& g, double delta) {
    const int n = g.rows() / 2;
    std::vector<double> mods = spectrum_moduli(g);
    SpectralGap gap;
    gap.expanding = mods[n - 1];
    gap.contracting = mods[n];
    gap.margin = std::min(gap.expanding - (1.0 + delta), (1.0 - delta) - gap.contracting);
    return gap;
}

/// The attracting Lagrangian of a proximal symplectic map: the invariant
/// subspace of the expanding half of the spectrum, certified isotropic.
inline LagrangianFrame<double> attracting_lagrangian(const MatD& g, double delta = 0.05,
                                                     double eps = tolerance()) {
    if (!g.square() || g.rows() % 2 != 0)
        throw std::invalid_argument("attracting_lagrangian: expected a 2n x 2n matrix");
    const int n = g.rows() / 2;
    SpectralGap gap = spectral_gap(g, delta);
    if (!gap.ok())
        throw std::invalid_argument("attracting_lagrangian: not proximal enough (|l_n| = " +
                                    std::to_string(gap.expanding) + ", |l_{n+1}| = " +
                                    std::to_string(gap.contracting) + ")");
    MatD b = detail::dominant_subspace(g, n);
    return LagrangianFrame<double>(std::move(b), eps); // isotropy certificate lives here
}

struct LimitCurveEntry {
    CirclePoint point;
    LagrangianFrame<double> frame;
    Word word;
    double gap_margin = 0.0;
};

/// Fixed-point skeleton of the boundary map: attracting fixed points of the
/// hyperbolization on the circle paired with attracting Lagrangians of the
/// representation, sorted by angle.
struct LimitCurveSample {
    int n = 1;
    std::vector<LimitCurveEntry> entries;
    size_t words_scanned = 0;
    size_t skipped_gap = 0;
    size_t skipped_power = 0;
    size_t skipped_nonhyperbolic = 0;
    size_t skipped_duplicate = 0;

    size_t size() const { return entries.size(); }
};

struct SampleOptions {
    double delta = 0.05;       // spectral gap gate
    size_t max_samples = 1500; // resolution cap; thinning keeps angular coverage
    double dedupe = 1e-10;     // angle deduplication radius
};

inline LimitCurveSample sample_limit_curve(const SurfaceRep& rep, const Hyperbolization& h,
                                           int max_len, SampleOptions opt = {},
                                           double eps = tolerance()) {
    if (rep.presentation.genus != h.presentation.genus)
        throw std::invalid_argument("sample_limit_curve: presentations differ");
    LimitCurveSample out;
    out.n = rep.n;

    std::vector<MatD> h_inv, r_inv;
    for (const MatD& m : h.gens) h_inv.push_back(inverse(m));
    for (const MatD& m : rep.gens) r_inv.push_back(symplectic_inverse(m));
    std::vector<MatD> h_stack = {MatD::identity(2)};
    std::vector<MatD> r_stack = {MatD::identity(2 * rep.n)};

    std::map<long long, double> seen; // angle bucket -> angle
    auto duplicate = [&](double theta) {
        long long key = llround(theta / opt.dedupe);
        for (long long k = key - 1; k <= key + 1; ++k) {
            auto it = seen.find(k);
            if (it != seen.end() && std::abs(it->second - theta) < opt.dedupe) return true;
        }
        seen[key] = theta;
        return false;
    };

    walk_reduced_words(
        h.presentation.num_generators(), max_len,
        [&](int letter) {
            const MatD& hg = letter > 0 ? h.gens[letter - 1] : h_inv[-letter - 1];
            const MatD& rg = letter > 0 ? rep.gens[letter - 1] : r_inv[-letter - 1];
            h_stack.push_back(h_stack.back() * hg);
            r_stack.push_back(r_stack.back() * rg);
        },
        [&]() {
            h_stack.pop_back();
            r_stack.pop_back();
        },
        [&](const std::vector<int>& letters) {
            if (letters.empty()) return;
            ++out.words_scanned;
            Word w(letters);
            if (w.is_proper_power()) {
                ++out.skipped_power;
                return;
            }
            const MatD& m2 = h_stack.back();
            if (std::abs(m2(0, 0) + m2(1, 1)) <= 2.0 + 1e-12) {
                ++out.skipped_nonhyperbolic;
                return;
            }
            CirclePoint x = mobius_fixed_points(m2).attracting;
            if (duplicate(x.theta)) {
                ++out.skipped_duplicate;
                return;
            }
            SpectralGap gap = spectral_gap(r_stack.back(), opt.delta);
            if (!gap.ok()) {
                ++out.skipped_gap;
                return;
            }
            LagrangianFrame<double> frame(detail::dominant_subspace(r_stack.back(), rep.n), eps);
            out.entries.push_back({x, std::move(frame), std::move(w), gap.margin});
        });

    std::sort(out.entries.begin(), out.entries.end(),
              [](const LimitCurveEntry& a, const LimitCurveEntry& b) {
                  return a.point.theta < b.point.theta;
              });
    if (out.entries.size() > opt.max_samples) {
        std::vector<LimitCurveEntry> thinned;
        thinned.reserve(opt.max_samples);
        size_t total = out.entries.size();
        for (size_t k = 0; k < opt.max_samples; ++k)
            thinned.push_back(std::move(out.entries[k * total / opt.max_samples]));
        out.entries = std::move(thinned);
    }
    if (out.entries.size() < 12)
        throw std::runtime_error("sample_limit_curve: insufficient resolution (" +
                                 std::to_string(out.entries.size()) + " samples)");
    return out;
}

struct SuiteReport {
    size_t checked = 0;
    size_t violations = 0;
    uint64_t seed = 0;
    std::vector<std::string> witnesses; // capped

    bool clean() const { return violations == 0; }

    void add_violation(std::string w) {
        ++violations;
        if (witnesses.size() < 10) witnesses.push_back(std::move(w));
    }
};

namespace detail {

/// Visit `trials` index k-tuples (sorted, distinct) out of [0, n); visits
/// all of them when there are fewer than `trials`.
template <class Visit>
void sample_tuples(size_t n, int k, size_t trials, uint64_t seed, Visit&& visit) {
    double total = 1.0;
    for (int i = 0; i < k; ++i) total *= static_cast<double>(n - i) / (i + 1);
    if (total <= static_cast<double>(trials)) {
        std::vector<size_t> idx(k);
        auto rec = [&](auto&& self, int depth, size_t start) -> void {
            if (depth == k) {
                visit(idx);
                return;
            }
            for (size_t i = start; i + (k - depth) <= n; ++i) {
                idx[depth] = i;
                self(self, depth + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
        return;
    }
    Rng rng(seed);
    std::vector<size_t> idx(k);
    for (size_t t = 0; t < trials; ++t) {
        bool distinct = false;
        while (!distinct) {
            for (int i = 0; i < k; ++i) idx[i] = rng.below(n);
            std::sort(idx.begin(), idx.end());
            distinct = std::adjacent_find(idx.begin(), idx.end()) == idx.end();
        }
        visit(idx);
    }
}

} // namespace detail

/// beta_n(phi(x), phi(y), phi(z)) = n beta_1(x,y,z) over sampled triples.
inline SuiteReport verify_maximality(const LimitCurveSample& s, size_t trials,
                                     uint64_t seed = 1u, double eps = tolerance()) {
    if (s.size() < 3) throw std::invalid_argument("verify_maximality: need at least 3 samples");
    SuiteReport report;
    report.seed = seed;
    detail::sample_tuples(s.size(), 3, trials, seed, [&](const std::vector<size_t>& idx) {
        const auto& a = s.entries[idx[0]];
        const auto& b = s.entries[idx[1]];
        const auto& c = s.entries[idx[2]];
        ++report.checked;
        int b1 = orientation_cocycle(a.point, b.point, c.point);
        int bn = maslov_index(a.frame, b.frame, c.frame, eps);
        if (bn != s.n * b1)
            report.add_violation("beta_n=" + std::to_string(bn) + " expected " +
                                 std::to_string(s.n * b1) + " at (" + a.word.str(2) + ", " +
                                 b.word.str(2) + ", " + c.word.str(2) + ")");
    });
    return report;
}

/// Pairwise transversality across the sample.
inline SuiteReport verify_transversality(const LimitCurveSample& s, double eps = tolerance()) {
    if (s.size() < 2) throw std::invalid_argument("verify_transversality: need at least 2 samples");
    SuiteReport report;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            ++report.checked;
            TransversalityResult tr = is_transverse(s.entries[i].frame, s.entries[j].frame, eps);
            if (!tr.transverse)
                report.add_violation("gap=" + std::to_string(tr.gap) + " at (" +
                                     s.entries[i].word.str(2) + ", " + s.entries[j].word.str(2) +
                                     ")");
        }
    return report;
}

/// Monotonicity of the chart form along positively ordered quadruples,
/// based at each tuple's extreme pair.
inline SuiteReport verify_monotonicity(const LimitCurveSample& s, size_t trials,
                                       uint64_t seed = 2u, double eps = tolerance()) {
    if (s.size() < 4) throw std::invalid_argument("verify_monotonicity: need at least 4 samples");
    SuiteReport report;
    report.seed = seed;
    detail::sample_tuples(s.size(), 4, trials, seed, [&](const std::vector<size_t>& idx) {
        ++report.checked;
        const auto& l0 = s.entries[idx[0]];
        const auto& l1 = s.entries[idx[1]];
        const auto& l2 = s.entries[idx[2]];
        const auto& loo = s.entries[idx[3]];
        bool ok = false;
        std::string note;
        try {
            ok = monotonicity_check(l0.frame, l1.frame, l2.frame, loo.frame, eps);
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        if (!ok)
            report.add_violation("quadruple (" + l0.word.str(2) + ", " + l1.word.str(2) + ", " +
                                 l2.word.str(2) + ", " + loo.word.str(2) + ")" + note);
    });
    return report;
}

struct RectifiabilityResult {
    double polygonal_length = 0.0;
    double trace_bound = 0.0; // trace functional on the cone; tr X >= ||X||_F for X >= 0
    size_t segments = 0;
};

/// Polygonal length of the limit curve through the chart at (a, b), with
/// the cone certificate: consecutive chart increments must stay positive
/// definite, and the total length is dominated by trace(Q_last - Q_first).
inline RectifiabilityResult rectifiable_length(const LimitCurveSample& s, size_t a_idx,
                                               size_t b_idx, double eps = tolerance()) {
    if (a_idx >= s.size() || b_idx >= s.size() || a_idx == b_idx)
        throw std::invalid_argument("rectifiable_length: bad chart indices");
    const auto& la = s.entries[a_idx];
    const auto& lb = s.entries[b_idx];
    double two_pi = 2.0 * std::numbers::pi;
    auto inside = [&](double theta) {
        double rel = std::fmod(theta - la.point.theta + two_pi, two_pi);
        double len = std::fmod(lb.point.theta - la.point.theta + two_pi, two_pi);
        return rel > 1e-12 && rel < len - 1e-12;
    };
    std::vector<size_t> chart; // positively ordered between a and b
    for (size_t i = 0; i < s.size(); ++i)
        if (inside(s.entries[i].point.theta)) chart.push_back(i);
    std::sort(chart.begin(), chart.end(), [&](size_t i, size_t j) {
        double ri = std::fmod(s.entries[i].point.theta - la.point.theta + two_pi, two_pi);
        double rj = std::fmod(s.entries[j].point.theta - la.point.theta + two_pi, two_pi);
        return ri < rj;
    });
    if (chart.size() < 2)
        throw std::invalid_argument("rectifiable_length: need at least 2 samples inside the chart");

    std::vector<MatD> qs;
    qs.reserve(chart.size());
    for (size_t i : chart) qs.push_back(q_form(s.entries[i].frame, la.frame, lb.frame, eps));
    RectifiabilityResult r;
    for (size_t k = 1; k < qs.size(); ++k) {
        MatD diff = qs[k] - qs[k - 1];
        if (!is_positive_definite(diff, eps))
            throw std::runtime_error("rectifiable_length: cone violation between samples " +
                                     s.entries[chart[k - 1]].word.str(2) + " and " +
                                     s.entries[chart[k]].word.str(2));
        r.polygonal_length += diff.frobenius();
        ++r.segments;
    }
    MatD span = qs.back() - qs.front();
    for (int i = 0; i < span.rows(); ++i) r.trace_bound += span(i, i);
    return r;
}

struct QiScanReport {
    std::vector<double> min_d; // index l-1 holds length l
    std::vector<double> max_d;
    double slope = 0.0;     // least-squares fit on per-length minima
    double intercept = 0.0;
};

/// Orbit-map distance scan: min/max of d(J0, rho(w) J0) per word length.
inline QiScanReport qi_scan(const SurfaceRep& rep, const ComplexStructureJ& j0, int max_len,
                            double eps = tolerance()) {
    if (max_len < 1) throw std::invalid_argument("qi_scan: length must be >= 1");
    if (j0.half_dim() != rep.n) throw std::invalid_argument("qi_scan: basepoint dimension mismatch");
    QiScanReport report;
    report.min_d.assign(max_len, std::numeric_limits<double>::infinity());
    report.max_d.assign(max_len, 0.0);

    MatD w = spd_power(j0.gram(), -0.5, eps);
    MatD om = omega<double>(rep.n);
    std::vector<MatD> r_inv;
    for (const MatD& m : rep.gens) r_inv.push_back(symplectic_inverse(m));
    std::vector<MatD> stack = {MatD::identity(2 * rep.n)};

    walk_reduced_words(
        rep.presentation.num_generators(), max_len,
        [&](int letter) {
            const MatD& rg = letter > 0 ? rep.gens[letter - 1] : r_inv[-letter - 1];
            stack.push_back(stack.back() * rg);
        },
        [&]() { stack.pop_back(); },
        [&](const std::vector<int>& letters) {
            if (letters.empty()) return;
            const MatD& g = stack.back();
            MatD jg = g * j0.matrix() * symplectic_inverse(g);
            MatD gram = om * jg;
            gram = (gram + gram.transpose()) * 0.5;
            MatD m = w * gram * w;
            EigenSym e = sym_eigen((m + m.transpose()) * 0.5, eps);
            double d = 0.5 * (std::abs(std::log(e.values.front())) +
                              std::abs(std::log(std::max(e.values.back(), 1e-300))));
            size_t l = letters.size() - 1;
            report.min_d[l] = std::min(report.min_d[l], d);
            report.max_d[l] = std::max(report.max_d[l], d);
        });

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int l = 1; l <= max_len; ++l) {
        double x = l, y = report.min_d[l - 1];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = max_len * sxx - sx * sx;
    report.slope = (max_len * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / max_len;
    return report;
}

struct ContractionReport {
    double measured = 0.0;  // decay exponent per unit translation length
    double predicted = 0.0; // ln |lambda_n| / translation length
    bool monotone = false;  // norms strictly decrease at every step
    double growth = 0.0;    // mirror exponent on the attracting side
    double translation_length = 0.0;
    int k_max = 0;
};

/// Discrete-time Anosov contraction along the axis of h(w): vectors of the
/// repelling Lagrangian, pushed by rho(w)^k, measured in q_{J(u)} where
/// J(u) comes from the boundary triple at the axis.
inline ContractionReport contraction_exponent(const SurfaceRep& rep, const Hyperbolization& h,
                                              const Word& w, int k_max = 8, double delta = 0.05,
                                              double eps = tolerance()) {
    MatD m2 = evaluate_word(h.gens, w);
    MatD mr = rep.evaluate(w);
    FixedPoints fps = mobius_fixed_points(m2);
    double ltr = translation_length(m2);
    LagrangianFrame<double> l_plus = attracting_lagrangian(mr, delta, eps);
    LagrangianFrame<double> l_minus = attracting_lagrangian(symplectic_inverse(mr), delta, eps);

    // auxiliary boundary point in the positive interval ((w-, w+))
    double two_pi = 2.0 * std::numbers::pi;
    double arc = std::fmod(fps.attracting.theta - fps.repelling.theta + two_pi, two_pi);
    MatD j_mat;
    bool found = false;
    std::vector<MatD> h_inv, r_inv;
    for (const MatD& m : h.gens) h_inv.push_back(inverse(m));
    for (const MatD& m : rep.gens) r_inv.push_back(symplectic_inverse(m));
    enumerate_reduced_words(h.presentation.num_generators(), 4, [&](const Word& v) {
        if (found || v.length() == 0) return;
        MatD hv = evaluate_word(h.gens, v);
        if (std::abs(hv(0, 0) + hv(1, 1)) <= 2.0) return;
        CirclePoint m = mobius_fixed_points(hv).attracting;
        double rel = std::fmod(m.theta - fps.repelling.theta + two_pi, two_pi);
        if (rel < 1e-6 || rel > arc - 1e-6) return;
        MatD rv = rep.evaluate(v);
        if (!spectral_gap(rv, delta).ok()) return;
        try {
            LagrangianFrame<double> lm = attracting_lagrangian(rv, delta, eps);
            j_mat = complex_structure_from_triple(l_minus, lm, l_plus, eps);
            found = true;
        } catch (const std::exception&) {
            // not maximal or not transverse at this auxiliary point; keep looking
        }
    });
    if (!found)
        throw std::runtime_error("contraction_exponent: no usable auxiliary boundary point");

    MatD gram = omega<double>(rep.n) * j_mat;
    gram = (gram + gram.transpose()) * 0.5;
    auto norm_in_q = [&](const MatD& v) {
        MatD q = v.transpose() * gram * v;
        return std::sqrt(q(0, 0));
    };

    ContractionReport report;
    report.translation_length = ltr;
    report.k_max = k_max;
    report.predicted = std::log(spectral_gap(mr, delta).expanding) / ltr;
    report.monotone = true;
    report.measured = std::numeric_limits<double>::infinity();
    for (int c = 0; c < l_minus.n; ++c) {
        MatD xi = l_minus.frame.col(c);
        double prev = norm_in_q(xi);
        double first = prev;
        MatD v = xi;
        for (int k = 1; k <= k_max; ++k) {
            v = mr * v;
            double cur = norm_in_q(v);
            if (cur >= prev) report.monotone = false;
            prev = cur;
        }
        double rate = -std::log(prev / first) / (k_max * ltr);
        report.measured = std::min(report.measured, rate);
    }
    report.growth = std::numeric_limits<double>::infinity();
    for (int c = 0; c < l_plus.n; ++c) {
        MatD xi = l_plus.frame.col(c);
        double first = norm_in_q(xi);
        MatD v = xi;
        for (int k = 1; k <= k_max; ++k) v = mr * v;
        double rate = std::log(norm_in_q(v) / first) / (k_max * ltr);
        report.growth = std::min(report.growth, rate);
    }
    return report;
}

} // namespace maxrep
