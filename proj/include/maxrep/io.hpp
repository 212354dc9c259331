#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "maxrep/boundary.hpp"
#include "maxrep/fuchsian.hpp"
#include "maxrep/matrix.hpp"
#include "maxrep/representations.hpp"
#include "maxrep/symplectic.hpp"

namespace maxrep {

using json = nlohmann::json;

namespace io {

inline double number_from(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find('/') != std::string::npos) return rat_to_double(rat_parse(s));
        try {
            size_t used = 0;
            double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(where + ": malformed numeric literal '" + s + "'");
    }
    throw std::invalid_argument(where + ": expected a number or a numeric string");
}

inline Rat rational_from(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number())
        throw std::invalid_argument(where + ": exact input wants integers or \"p/q\" strings");
    throw std::invalid_argument(where + ": expected an integer or a rational string");
}

/// Row-major matrix: array of rows. Entries may be numbers or strings.
inline MatD matrix_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty() || !v[0].is_array())
        throw std::invalid_argument(where + ": expected an array of rows");
    const int rows = static_cast<int>(v.size());
    const int cols = static_cast<int>(v[0].size());
    MatD m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(v[i].size()) != cols)
            throw std::invalid_argument(where + ": ragged rows");
        for (int j = 0; j < cols; ++j)
            m(i, j) = number_from(v[i][j], where + "[" + std::to_string(i) + "][" +
                                               std::to_string(j) + "]");
    }
    return m;
}

inline MatQ rational_matrix_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty() || !v[0].is_array())
        throw std::invalid_argument(where + ": expected an array of rows");
    const int rows = static_cast<int>(v.size());
    const int cols = static_cast<int>(v[0].size());
    MatQ m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(v[i].size()) != cols)
            throw std::invalid_argument(where + ": ragged rows");
        for (int j = 0; j < cols; ++j)
            m(i, j) = rational_from(v[i][j], where + "[" + std::to_string(i) + "][" +
                                                 std::to_string(j) + "]");
    }
    return m;
}

inline std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline json matrix_to(const MatD& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrix_to(const MatQ& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Lagrangian frame: column-major, i.e. an array of n columns of 2n entries.
template <class T>
LagrangianFrame<T> frame_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty() || !v[0].is_array())
        throw std::invalid_argument(where + ": expected an array of columns");
    const int n = static_cast<int>(v.size());
    const int rows = static_cast<int>(v[0].size());
    if (rows != 2 * n) throw std::invalid_argument(where + ": frame must be 2n x n");
    Mat<T> f(rows, n);
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(v[j].size()) != rows)
            throw std::invalid_argument(where + ": ragged columns");
        for (int i = 0; i < rows; ++i) {
            if constexpr (ScalarOps<T>::exact)
                f(i, j) = rational_from(v[j][i], where);
            else
                f(i, j) = number_from(v[j][i], where);
        }
    }
    return LagrangianFrame<T>(std::move(f));
}

template <class T>
json frame_to(const LagrangianFrame<T>& l) {
    json cols = json::array();
    for (int j = 0; j < l.n; ++j) {
        json col = json::array();
        for (int i = 0; i < 2 * l.n; ++i) {
            if constexpr (ScalarOps<T>::exact)
                col.push_back(rat_str(l.frame(i, j)));
            else
                col.push_back(format_double(l.frame(i, j)));
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

/// True when every entry in the triple file is exact (integer or "p/q").
inline bool triple_is_exact(const json& frames) {
    for (const auto& f : frames)
        for (const auto& col : f)
            for (const auto& e : col) {
                if (e.is_number_integer()) continue;
                if (e.is_string()) {
                    const std::string s = e.get<std::string>();
                    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
                        s.find('E') == std::string::npos)
                        continue;
                }
                return false;
            }
    return true;
}

inline CMat complex_matrix_from(const json& v, const std::string& where) {
    if (!v.contains("re")) throw std::invalid_argument(where + ": missing \"re\"");
    MatD re = matrix_from(v["re"], where + ".re");
    MatD im = v.contains("im") ? matrix_from(v["im"], where + ".im")
                               : MatD::zero(re.rows(), re.cols());
    return to_complex(re, im);
}

inline json complex_matrix_to(const CMat& m) {
    return json{{"re", matrix_to(real_part(m))}, {"im", matrix_to(imag_part(m))}};
}

/// Representation spec: { "type": ..., "genus": 2, "torus": {...}, "z": {...},
/// "n": ..., "matrices": [...] }.
struct RepSpec {
    SurfaceRep rep;
    Hyperbolization hyperbolization; // the Fuchsian side used for boundary sampling
};

inline Hyperbolization hyperbolization_from(const json& spec) {
    double lambda = 2.5, mu = 2.5, angle = std::numbers::pi / 2.0, twist = 0.0;
    if (spec.contains("torus")) {
        const json& t = spec["torus"];
        if (t.contains("lambda")) lambda = number_from(t["lambda"], "torus.lambda");
        if (t.contains("mu")) mu = number_from(t["mu"], "torus.mu");
        if (t.contains("angle")) angle = number_from(t["angle"], "torus.angle");
        if (t.contains("twist")) twist = number_from(t["twist"], "torus.twist");
    }
    return double_torus(one_holed_torus(lambda, mu, angle), twist);
}

inline RepSpec rep_from_json(const json& spec) {
    if (!spec.contains("type")) throw std::invalid_argument("representation spec: missing \"type\"");
    const std::string type = spec["type"].get<std::string>();
    if (spec.contains("genus") && spec["genus"].get<int>() != 2)
        throw std::invalid_argument("representation spec: built-in constructions are genus 2");
    Hyperbolization h = hyperbolization_from(spec);
    if (type == "polydisk") {
        int r = spec.contains("n") ? spec["n"].get<int>() : 2;
        if (r < 1) throw std::invalid_argument("representation spec: polydisk rank must be >= 1");
        return {polydisk_rep(std::vector<Hyperbolization>(static_cast<size_t>(r), h)), h};
    }
    if (type == "irreducible") {
        int n = spec.contains("n") ? spec["n"].get<int>() : 2;
        return {irreducible_surface_rep(h, n), h};
    }
    if (type == "amalgam_z") {
        CentralizerElement z;
        if (spec.contains("z")) {
            const json& zj = spec["z"];
            z = {number_from(zj.value("a", json(1.0)), "z.a"),
                 number_from(zj.value("b", json(0.0)), "z.b"),
                 number_from(zj.value("c", json(0.0)), "z.c"),
                 number_from(zj.value("d", json(1.0)), "z.d")};
        }
        return {amalgam_z_rep(h, z), h};
    }
    if (type == "degenerate") return {degenerate_rep(h), h};
    if (type == "hyperbolization")
        return {SurfaceRep(h.presentation, 1, h.gens, "hyperbolization"), h};
    if (type == "custom") {
        if (!spec.contains("n") || !spec.contains("matrices"))
            throw std::invalid_argument("representation spec: custom type needs \"n\" and \"matrices\"");
        int n = spec["n"].get<int>();
        int genus = spec.value("genus", 2);
        std::vector<MatD> gens;
        for (size_t i = 0; i < spec["matrices"].size(); ++i)
            gens.push_back(matrix_from(spec["matrices"][i], "matrices[" + std::to_string(i) + "]"));
        Presentation pres{genus};
        if (static_cast<int>(gens.size()) != pres.num_generators())
            throw std::invalid_argument("representation spec: expected " +
                                        std::to_string(pres.num_generators()) + " matrices");
        return {SurfaceRep(pres, n, std::move(gens), "custom"), h};
    }
    throw std::invalid_argument("representation spec: unknown type '" + type + "'");
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    return json::parse(in); // parse errors carry line/byte diagnostics
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    out << content;
}

inline std::string limit_curve_csv(const LimitCurveSample& s) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "angle,word";
    for (int j = 0; j < s.n; ++j)
        for (int i = 0; i < 2 * s.n; ++i) os << ",frame_c" << j << "_r" << i;
    os << "\n";
    for (const auto& e : s.entries) {
        os << e.point.theta << "," << e.word.str(2);
        for (int j = 0; j < s.n; ++j)
            for (int i = 0; i < 2 * s.n; ++i) os << "," << e.frame.frame(i, j);
        os << "\n";
    }
    return os.str();
}

/// Static SVG chart projection of the limit curve: angle against the RP^1
/// coordinate for n = 1, angle against the trace of the chart form for
/// n >= 2 (chart taken at the most separated sample pair).
inline std::string limit_curve_svg(const LimitCurveSample& s) {
    std::vector<std::pair<double, double>> pts;
    if (s.n == 1) {
        for (const auto& e : s.entries) {
            double alpha = std::atan2(e.frame.frame(1, 0), e.frame.frame(0, 0));
            if (alpha < 0) alpha += std::numbers::pi;
            pts.push_back({e.point.theta, alpha});
        }
    } else {
        size_t a = 0, b = 0;
        double best = -1.0;
        double two_pi = 2.0 * std::numbers::pi;
        for (size_t i = 0; i < s.size(); ++i) {
            size_t j = (i + s.size() / 2) % s.size();
            double gap = std::fmod(s.entries[j].point.theta - s.entries[i].point.theta + two_pi, two_pi);
            double sep = std::min(gap, two_pi - gap);
            if (sep > best) {
                best = sep;
                a = i;
                b = j;
            }
        }
        for (size_t i = 0; i < s.size(); ++i) {
            if (i == a || i == b) continue;
            try {
                MatD q = q_form(s.entries[i].frame, s.entries[a].frame, s.entries[b].frame);
                double tr = 0.0;
                for (int k = 0; k < q.rows(); ++k) tr += q(k, k);
                pts.push_back({s.entries[i].point.theta, tr});
            } catch (const std::exception&) {
                // chart does not cover this sample
            }
        }
    }
    double ymin = 0, ymax = 1;
    if (!pts.empty()) {
        ymin = ymax = pts[0].second;
        for (auto& p : pts) {
            ymin = std::min(ymin, p.second);
            ymax = std::max(ymax, p.second);
        }
        if (ymax - ymin < 1e-12) ymax = ymin + 1;
    }
    const double w = 640, hgt = 400, margin = 40;
    auto sx = [&](double theta) {
        return margin + (w - 2 * margin) * theta / (2.0 * std::numbers::pi);
    };
    auto sy = [&](double y) { return hgt - margin - (hgt - 2 * margin) * (y - ymin) / (ymax - ymin); };
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << hgt << "'>\n";
    os << "<rect x='" << margin << "' y='" << margin << "' width='" << w - 2 * margin
       << "' height='" << hgt - 2 * margin << "' fill='none' stroke='black'/>\n";
    for (auto& p : pts)
        os << "<circle cx='" << sx(p.first) << "' cy='" << sy(p.second) << "' r='1.5' fill='steelblue'/>\n";
    os << "<text x='" << w / 2 << "' y='" << hgt - 8 << "' text-anchor='middle' font-size='12'>"
       << "boundary angle</text>\n";
    os << "<text x='12' y='" << hgt / 2 << "' font-size='12' transform='rotate(-90 12 " << hgt / 2
       << ")' text-anchor='middle'>" << (s.n == 1 ? "RP1 coordinate" : "chart form trace")
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace io

} // namespace maxrep
