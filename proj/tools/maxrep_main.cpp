// Command-line front end: Maslov indices, Toledo invariants, Siegel-space
// distances, Cayley transforms, limit-curve exports and the verification
// suites, all driven by JSON inputs.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "maxrep/maxrep.hpp"

using namespace maxrep;

namespace {

struct CommonOpts {
    int length = 6;
    long trials = 20000;
    uint64_t seed = 20240601;
    double eps = 1e-9;
    std::string out;
    std::string format;
};

int run_maslov(const std::string& file) {
    json input = io::load_json(file);
    if (!input.contains("n") || !input.contains("frames") || input["frames"].size() != 3)
        throw std::invalid_argument("maslov: expected { \"n\": int, \"frames\": [3 frames] }");
    int value;
    if (io::triple_is_exact(input["frames"])) {
        auto l1 = io::frame_from<Rat>(input["frames"][0], "frames[0]");
        auto l2 = io::frame_from<Rat>(input["frames"][1], "frames[1]");
        auto l3 = io::frame_from<Rat>(input["frames"][2], "frames[2]");
        value = maslov_index(l1, l2, l3);
    } else {
        auto l1 = io::frame_from<double>(input["frames"][0], "frames[0]");
        auto l2 = io::frame_from<double>(input["frames"][1], "frames[1]");
        auto l3 = io::frame_from<double>(input["frames"][2], "frames[2]");
        value = maslov_index(l1, l2, l3);
    }
    std::cout << value << "\n";
    return 0;
}

int run_toledo(const std::string& file) {
    io::RepSpec spec = io::rep_from_json(io::load_json(file));
    ToledoResult r = toledo(spec.rep);
    int signed_t = orientation_sign() * r.t;
    std::cout << "T=" << signed_t << " winding=" << io::format_double(orientation_sign() * r.winding)
              << " residual=" << io::format_double(r.relator_residual) << " maximal="
              << (r.maximal ? "true" : "false") << " bound=" << r.milnor_wood << "\n";
    return 0;
}

int run_distance(const std::string& file) {
    json input = io::load_json(file);
    if (!input.contains("J1") || !input.contains("J2"))
        throw std::invalid_argument("distance: expected { \"J1\": matrix, \"J2\": matrix }");
    ComplexStructureJ j1(io::matrix_from(input["J1"], "J1"));
    ComplexStructureJ j2(io::matrix_from(input["J2"], "J2"));
    std::cout << io::format_double(siegel_distance(j1, j2)) << "\n";
    return 0;
}

int run_cayley(const std::string& file, const CommonOpts& opts) {
    json input = io::load_json(file);
    if (!input.contains("Z")) throw std::invalid_argument("cayley: expected { \"Z\": {re, im} }");
    CMat z = io::complex_matrix_from(input["Z"], "Z");
    json result = io::complex_matrix_to(cayley(z));
    if (opts.out.empty())
        std::cout << result.dump(2) << "\n";
    else
        io::write_file(opts.out, result.dump(2) + "\n");
    return 0;
}

int run_limit_curve(const std::string& file, const CommonOpts& opts) {
    io::RepSpec spec = io::rep_from_json(io::load_json(file));
    LimitCurveSample s = sample_limit_curve(spec.rep, spec.hyperbolization, opts.length);
    std::string base = opts.out.empty() ? "limit-curve" : opts.out;
    bool wrote = false;
    if (opts.format.empty() || opts.format == "csv") {
        io::write_file(base + ".csv", io::limit_curve_csv(s));
        wrote = true;
    }
    if (opts.format.empty() || opts.format == "svg") {
        io::write_file(base + ".svg", io::limit_curve_svg(s));
        wrote = true;
    }
    if (opts.format == "json") {
        json entries = json::array();
        for (const auto& e : s.entries)
            entries.push_back({{"angle", e.point.theta},
                               {"word", e.word.str(2)},
                               {"frame", io::frame_to(e.frame)}});
        io::write_file(base + ".json", entries.dump(2) + "\n");
        wrote = true;
    }
    if (!wrote) throw std::invalid_argument("limit-curve: unknown format '" + opts.format + "'");
    std::cout << "samples=" << s.size() << " scanned=" << s.words_scanned
              << " skipped_gap=" << s.skipped_gap << " out=" << base << ".*\n";
    return 0;
}

int run_verify(const std::string& file, const std::string& suite, const CommonOpts& opts) {
    io::RepSpec spec = io::rep_from_json(io::load_json(file));
    LimitCurveSample s = sample_limit_curve(spec.rep, spec.hyperbolization, opts.length);
    std::cout << "samples=" << s.size() << " length=" << opts.length << " seed=" << opts.seed
              << "\n";
    size_t total_violations = 0;
    auto run_suite = [&](const std::string& name) {
        SuiteReport r;
        if (name == "maximality")
            r = verify_maximality(s, static_cast<size_t>(opts.trials), opts.seed, opts.eps);
        else if (name == "transversality")
            r = verify_transversality(s, opts.eps);
        else if (name == "monotonicity")
            r = verify_monotonicity(s, static_cast<size_t>(opts.trials), opts.seed + 1, opts.eps);
        else
            throw std::invalid_argument("verify: unknown suite '" + name + "'");
        std::cout << name << ": checked=" << r.checked << " violations=" << r.violations << "\n";
        for (const auto& w : r.witnesses) std::cout << "  witness: " << w << "\n";
        total_violations += r.violations;
    };
    if (suite == "all") {
        run_suite("maximality");
        run_suite("transversality");
        run_suite("monotonicity");
    } else {
        run_suite(suite);
    }
    return total_violations == 0 ? 0 : 1;
}

int run_qi(const std::string& file, const CommonOpts& opts) {
    io::RepSpec spec = io::rep_from_json(io::load_json(file));
    auto j0 = ComplexStructureJ::standard(spec.rep.n);
    QiScanReport r = qi_scan(spec.rep, j0, opts.length);
    std::cout << "length min_d max_d\n";
    for (size_t l = 0; l < r.min_d.size(); ++l)
        std::cout << (l + 1) << " " << io::format_double(r.min_d[l]) << " "
                  << io::format_double(r.max_d[l]) << "\n";
    std::cout << "slope=" << io::format_double(r.slope)
              << " intercept=" << io::format_double(r.intercept) << "\n";
    return 0;
}

int run_deform(const std::string& file, int steps) {
    io::RepSpec spec = io::rep_from_json(io::load_json(file));
    Hyperbolization h = spec.hyperbolization;
    int reference = 0;
    bool constant = true;
    for (int k = 0; k < steps; ++k) {
        double t = (std::numbers::pi / 2) * k / std::max(1, steps - 1);
        ToledoResult r = toledo(amalgam_z_rep(h, CentralizerElement::rotation(t)));
        int signed_t = orientation_sign() * r.t;
        if (k == 0)
            reference = signed_t;
        else if (signed_t != reference)
            constant = false;
        std::cout << "t=" << io::format_double(t) << " T=" << signed_t
                  << " maximal=" << (r.maximal ? "true" : "false") << "\n";
    }
    std::cout << "constant=" << (constant ? "true" : "false") << "\n";
    return constant ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal surface-group representations into Sp(2n,R): "
                 "Maslov indices, Toledo invariants, boundary verification"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string file, suite = "all";
    int steps = 8;

    auto add_common = [&](CLI::App* cmd, bool with_length = true) {
        cmd->add_option("file", file, "input JSON")->required();
        if (with_length) cmd->add_option("--length,-L", opts.length, "word length bound");
        cmd->add_option("--trials", opts.trials, "randomized trial count");
        cmd->add_option("--seed", opts.seed, "RNG seed (fixed seed => identical report)");
        cmd->add_option("--tolerance", opts.eps, "float tolerance");
        cmd->add_option("--out", opts.out, "output path");
        cmd->add_option("--format", opts.format, "csv|svg|json");
    };

    CLI::App* c_maslov = app.add_subcommand("maslov", "Maslov index of a Lagrangian triple");
    add_common(c_maslov, false);
    CLI::App* c_toledo = app.add_subcommand("toledo", "Toledo invariant of a representation");
    add_common(c_toledo, false);
    CLI::App* c_distance = app.add_subcommand("distance", "Siegel-space distance between two J");
    add_common(c_distance, false);
    CLI::App* c_cayley = app.add_subcommand("cayley", "Cayley transform of a bounded-domain point");
    add_common(c_cayley, false);
    CLI::App* c_curve = app.add_subcommand("limit-curve", "sample the boundary limit curve");
    add_common(c_curve);
    CLI::App* c_verify = app.add_subcommand("verify", "run the boundary verification suites");
    add_common(c_verify);
    c_verify->add_option("--suite", suite, "maximality|transversality|monotonicity|all");
    CLI::App* c_qi = app.add_subcommand("qi", "orbit-map quasi-isometry scan");
    add_common(c_qi);
    CLI::App* c_deform = app.add_subcommand("deform", "Toledo along the z-deformation path");
    add_common(c_deform, false);
    c_deform->add_option("--steps", steps, "number of samples along the path");

    CLI11_PARSE(app, argc, argv);

    try {
        set_tolerance(opts.eps);
        if (c_maslov->parsed()) return run_maslov(file);
        if (c_toledo->parsed()) return run_toledo(file);
        if (c_distance->parsed()) return run_distance(file);
        if (c_cayley->parsed()) return run_cayley(file, opts);
        if (c_curve->parsed()) return run_limit_curve(file, opts);
        if (c_verify->parsed()) return run_verify(file, suite, opts);
        if (c_qi->parsed()) return run_qi(file, opts);
        if (c_deform->parsed()) return run_deform(file, steps);
    } catch (const json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
