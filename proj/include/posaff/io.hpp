#pragma once

// JSON serialization for matrices, Schottky data, representations and
// deformations; CSV and OBJ emitters. Exact rationals serialize as "p/q"
// strings, floats as JSON numbers.

#include "posaff/crooked.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace posaff {

using json = nlohmann::json;

inline json to_json(const MatD& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const VecD& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline json to_json(const MatR& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(rat_to_string(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline MatD mat_from_json(const json& j) {
    const int r = int(j.size()), c = r ? int(j.at(0).size()) : 0;
    MatD M(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) M(i, k) = j.at(i).at(k).get<double>();
    return M;
}

inline VecD vec_from_json(const json& j) {
    VecD v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(int(i)) = j.at(i).get<double>();
    return v;
}

inline MatR rat_mat_from_json(const json& j) {
    const int r = int(j.size()), c = r ? int(j.at(0).size()) : 0;
    MatR M(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) M(i, k) = rat_from_string(j.at(i).at(k).get<std::string>());
    return M;
}

// ---------------------------------------------------------------------------
// Schottky data. Circle points serialize as homogeneous pairs [p, q].

inline json to_json(const CirclePoint& x) { return json::array({x.p, x.q}); }
inline CirclePoint circle_point_from_json(const json& j) {
    return CirclePoint(j.at(0).get<double>(), j.at(1).get<double>());
}

inline json to_json(const SchottkyData& S) {
    json j;
    j["N"] = S.N;
    j["generators"] = json::array();
    for (const SL2& g : S.gens)
        j["generators"].push_back(json::array({g(0, 0), g(0, 1), g(1, 0), g(1, 1)}));
    auto arcs = [&](const std::vector<CircleArc>& as) {
        json out = json::array();
        for (const auto& a : as) out.push_back(json::array({to_json(a.start), to_json(a.end)}));
        return out;
    };
    j["intervals_minus"] = arcs(S.Iminus);
    j["intervals_plus"] = arcs(S.Iplus);
    return j;
}

inline SchottkyData schottky_from_json(const json& j) {
    SchottkyData S;
    S.N = j.at("N").get<int>();
    for (const auto& g : j.at("generators")) {
        SL2 m;
        m << g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>(),
            g.at(3).get<double>();
        if (std::abs(m.determinant() - 1.0) > 1e-9)
            throw std::invalid_argument("schottky_from_json: generator determinant is not 1");
        S.gens.push_back(m);
    }
    auto arcs = [&](const json& a) {
        std::vector<CircleArc> out;
        for (const auto& e : a)
            out.push_back({circle_point_from_json(e.at(0)), circle_point_from_json(e.at(1))});
        return out;
    };
    S.Iminus = arcs(j.at("intervals_minus"));
    S.Iplus = arcs(j.at("intervals_plus"));
    if (int(S.gens.size()) != S.N || int(S.Iminus.size()) != S.N || int(S.Iplus.size()) != S.N)
        throw std::invalid_argument("schottky_from_json: inconsistent sizes");
    return S;
}

// ---------------------------------------------------------------------------
// Representation and deformation files.

inline json to_json(const Representation& rep, const SchottkyData& S) {
    json j;
    j["n"] = rep.n;
    j["N"] = rep.N;
    j["provenance"] = rep.provenance;
    j["schottky"] = to_json(S);
    j["generators"] = json::array();
    for (const auto& g : rep.img) j["generators"].push_back(to_json(g.M));
    json cache = json::array();
    ArcSystem A(S);
    for (int i = 1; i <= S.N; ++i)
        for (bool plus : {false, true}) {
            WallRef w{i, plus};
            FlagD fp = veronese_flag(A.endpoint_plus(w), rep.n);
            FlagD fm = veronese_flag(A.endpoint_minus(w), rep.n);
            json e;
            e["wall"] = w.str();
            e["flag_plus"] = to_json(fp.B);
            e["flag_minus"] = to_json(fm.B);
            e["isotropic"] = is_isotropic_flag(fp, JForm<double>::standard(rep.n)) &&
                             is_isotropic_flag(fm, JForm<double>::standard(rep.n));
            cache.push_back(e);
        }
    j["boundary_flags"] = cache;
    return j;
}

struct RepFile {
    SchottkyData schottky;
    Representation rep;
};

inline RepFile rep_from_json(const json& j, const ToleranceContext& tol = {}) {
    RepFile out;
    out.schottky = schottky_from_json(j.at("schottky"));
    out.rep = build_representation(out.schottky, j.at("n").get<int>(), tol);
    out.rep.provenance = j.value("provenance", "fuchsian-sym");
    return out;
}

inline json to_json(const AffineDeformation& def, const std::string& rep_ref) {
    json j;
    j["rep"] = rep_ref;
    j["scales"] = def.av.scales;
    json vp = json::array(), vm = json::array();
    for (const auto& v : def.av.vplus) vp.push_back(to_json(v));
    for (const auto& v : def.av.vminus) vm.push_back(to_json(v));
    j["v_plus"] = vp;
    j["v_minus"] = vm;
    return j;
}

inline ArcVectors arc_vectors_from_json(const json& j) {
    ArcVectors av;
    av.scales = j.at("scales").get<std::vector<double>>();
    for (const auto& v : j.at("v_plus")) av.vplus.push_back(vec_from_json(v));
    for (const auto& v : j.at("v_minus")) av.vminus.push_back(vec_from_json(v));
    return av;
}

// ---------------------------------------------------------------------------
// Reports.

inline json to_json(const MargulisReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["min_ratio"] = rep.min_ratio;
    j["min_alpha"] = rep.min_alpha;
    j["margin"] = rep.margin;
    j["max_route_gap"] = rep.max_route_gap;
    j["records"] = rep.records.size();
    j["dedup"] = rep.dedup_policy;
    j["min_ratio_witness"] = rep.min_ratio_witness.str();
    json w = json::array();
    for (const auto& x : rep.nonpositive_witnesses) w.push_back(x.str());
    j["nonpositive_witnesses"] = w;
    if (auto pair = rep.opposite_sign_pair()) {
        j["opposite_sign_pair"] = json::array({pair->first.str(), pair->second.str()});
    }
    return j;
}

inline std::string margulis_csv(const MargulisReport& rep) {
    std::ostringstream os;
    os << "word,length,t,alpha,alpha_over_t\n";
    char buf[512];
    for (const auto& r : rep.records) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g\n", r.word.str().c_str(),
                      r.word.size(), r.t, r.alpha, r.ratio);
        os << buf;
    }
    return os.str();
}

inline json to_json(const TileReport& rep) {
    json j;
    j["samples"] = rep.samples;
    j["located"] = rep.located;
    j["success_fraction"] = rep.success_fraction();
    j["depth_histogram"] = rep.depth_histogram;
    j["relocation_checks"] = rep.relocation_checks;
    j["relocation_mismatches"] = rep.relocation_mismatches;
    json f = json::array();
    for (const auto& p : rep.failures) f.push_back(to_json(p));
    j["failures"] = f;
    return j;
}

inline json to_json(const Domain& dom, const WallDisjointnessReport* disj = nullptr) {
    json j;
    j["n"] = dom.n;
    j["N"] = dom.N;
    json walls = json::array();
    for (const auto& w : dom.walls) {
        json e;
        e["letter"] = w.letter;
        e["wall"] = w.wall.str();
        e["basis"] = to_json(w.H.E);
        e["translation"] = to_json(w.utilde);
        walls.push_back(e);
    }
    j["walls"] = walls;
    if (disj) {
        j["disjointness"] = {{"ok", disj->ok},
                             {"algebraic_ok", disj->algebraic_ok},
                             {"violations", disj->violations},
                             {"notes", disj->notes}};
    }
    return j;
}

inline std::string obj_mesh(const Mesh& mesh) {
    std::ostringstream os;
    char buf[256];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v(0), v(1), v(2));
        os << buf;
    }
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace posaff
