#pragma once

// Regularity certificates, neutral eigenvectors with positive orientation,
// Margulis invariants, and the properness scan over conjugacy classes.

#include "posaff/cocycle.hpp"

#include <iomanip>
#include <set>
#include <sstream>

namespace posaff {

struct RegularCertificate {
    Word word;
    std::vector<double> eigenvalues;  // sorted by decreasing |.|
    FlagD attracting, repelling;
    VecD neutral;          // x^0, unit spacelike, positively oriented
    VecD neutral_eigen;    // the eigen-route vector (orientation slaved)
    double route_gap = 0;  // |eigen route - flag route|_inf
    double spectral_gap = 0;
};

// Two routes to x^0(rho(w)): (i) the eigenvector of the eigenvalue nearest 1,
// J-normalized, orientation slaved to (ii) the neutral vector of the Veronese
// flags at the Mobius fixed points of the SL(2,R) word.
inline RegularCertificate neutral_of_element(const Word& w, const Representation& rep,
                                             const BoundaryMap& bmap,
                                             const ToleranceContext& tol = {}) {
    if (w.empty()) throw NonRegularError("neutral_of_element: empty word");
    const int d = rep.dim();
    const JForm<double> Jf = JForm<double>::standard(rep.n);
    RegularCertificate cert;
    cert.word = w;

    MatD M = rep.word_image(w);
    EigenReal eig = eigen_real(M, tol);
    if (!eig.fully_real)
        throw NonRegularError("neutral_of_element: complex spectrum for word " + w.str());
    if (!eig.simple)
        throw NonRegularError("neutral_of_element: spectrum is not simple for word " + w.str());
    cert.eigenvalues = eig.values;
    cert.spectral_gap = 1e300;
    for (int i = 0; i + 1 < d; ++i)
        cert.spectral_gap = std::min(
            cert.spectral_gap, std::abs(eig.values[i]) / std::abs(eig.values[i + 1]) - 1.0);
    // eigenvalues come in inverse pairs; the middle one is 1
    if (std::abs(eig.values[(d - 1) / 2] - 1.0) > 1e-6 * std::max(1.0, std::abs(eig.values[0])))
        throw NonRegularError("neutral_of_element: middle eigenvalue is not 1 for " + w.str());

    // flag route
    SL2 m2 = bmap.schottky().word_matrix(w);
    auto [att, repl] = mobius_fixed_points(m2);
    cert.attracting = bmap.flag(att);
    cert.repelling = bmap.flag(repl);
    cert.neutral = neutral_vector<double>(cert.attracting, cert.repelling, Jf, tol);

    // eigen route, orientation and normalization slaved to the flag route
    VecD v = eig.vectors[(d - 1) / 2];
    double q = v.dot(Jf.J * v);
    if (q <= 0) throw NonRegularError("neutral_of_element: neutral eigenvector not spacelike");
    v /= std::sqrt(q);
    if (v.dot(Jf.J * cert.neutral) < 0) v = -v;
    cert.neutral_eigen = v;
    cert.route_gap = (v - cert.neutral).cwiseAbs().maxCoeff();
    return cert;
}

// alpha_u(w) = u(w) . x^0(rho(w)) (J-inner product)
inline double margulis_invariant(const Word& w, const AffineDeformation& def,
                                 const BoundaryMap& bmap, const ToleranceContext& tol = {}) {
    RegularCertificate cert = neutral_of_element(w, *def.rep, bmap, tol);
    const JForm<double> Jf = JForm<double>::standard(def.rep->n);
    return def.eval(w).dot(Jf.J * cert.neutral);
}

inline double conjugacy_invariance_residual(const Word& w, const Word& h,
                                            const AffineDeformation& def, const BoundaryMap& bmap,
                                            const ToleranceContext& tol = {}) {
    Word c = h * w * h.inverse();
    return margulis_invariant(c, def, bmap, tol) - margulis_invariant(w, def, bmap, tol);
}

struct MargulisRecord {
    Word word;
    double alpha = 0;
    double t = 0;      // translation length of the SL(2,R) word
    double ratio = 0;  // alpha / t
    double route_gap = 0;
};

struct MargulisReport {
    std::vector<MargulisRecord> records;
    double min_ratio = 0;
    double min_alpha = 0;
    double max_route_gap = 0;
    double margin = 1e-9;
    bool pass = false;
    Word min_ratio_witness;
    std::vector<Word> nonpositive_witnesses;
    std::string dedup_policy = "cyclic reduction + lexicographic minimum over rotations";

    // opposite-sign witness pair per the Margulis lemma probe, when FAIL
    std::optional<std::pair<Word, Word>> opposite_sign_pair() const {
        const MargulisRecord* neg = nullptr;
        const MargulisRecord* pos = nullptr;
        for (const auto& r : records) {
            if (r.alpha <= 0 && !neg) neg = &r;
            if (r.alpha > 0 && !pos) pos = &r;
        }
        if (neg && pos) return std::make_pair(neg->word, pos->word);
        return std::nullopt;
    }
};

// Scan one representative per cyclic-conjugacy class of reduced words of
// length 1..L. PASS iff every alpha > 0 and min alpha/t clears the margin.
inline MargulisReport properness_scan(const AffineDeformation& def, const BoundaryMap& bmap,
                                      int L, double min_ratio_threshold = 0.0,
                                      double margin = 1e-9, const ToleranceContext& tol = {}) {
    if (L < 1) throw std::invalid_argument("properness_scan: L >= 1");
    MargulisReport rep;
    rep.margin = margin;
    std::vector<Word> classes;
    {
        std::set<std::vector<int>> seen;
        for (const Word& w : enumerate_words(def.rep->N, L)) {
            Word c = cyclic_representative(w);
            if (c.empty()) continue;
            if (seen.insert(c.ls).second) classes.push_back(c);
        }
    }
    rep.min_ratio = 1e300;
    rep.min_alpha = 1e300;
    for (const Word& w : classes) {
        RegularCertificate cert = neutral_of_element(w, *def.rep, bmap, tol);
        const JForm<double> Jf = JForm<double>::standard(def.rep->n);
        MargulisRecord r;
        r.word = w;
        r.alpha = def.eval(w).dot(Jf.J * cert.neutral);
        r.t = translation_length(bmap.schottky().word_matrix(w));
        r.ratio = r.alpha / r.t;
        r.route_gap = cert.route_gap;
        rep.max_route_gap = std::max(rep.max_route_gap, r.route_gap);
        if (r.ratio < rep.min_ratio) {
            rep.min_ratio = r.ratio;
            rep.min_ratio_witness = w;
        }
        rep.min_alpha = std::min(rep.min_alpha, r.alpha);
        if (r.alpha <= 0) rep.nonpositive_witnesses.push_back(w);
        rep.records.push_back(std::move(r));
    }
    rep.pass = rep.nonpositive_witnesses.empty() &&
               rep.min_ratio > min_ratio_threshold + margin;
    return rep;
}

// Monotonicity of the neutral functional along nested axes: if the flags
// (xi(g+), xi(x), xi(g-), xi(h-), xi(h+)) are cyclically ordered then
// x^0(g) . f <= x^0(h) . f for f positive in xi(x)^(1).
struct MonotonicityResult {
    bool hypothesis_ok = false;
    bool inequality_ok = false;
    double lhs = 0, rhs = 0;
};

inline MonotonicityResult neutral_monotonicity_check(const Word& g, const Word& h,
                                                     const CirclePoint& x,
                                                     const BoundaryMap& bmap,
                                                     const ToleranceContext& tol = {}) {
    MonotonicityResult out;
    const Representation& rep = bmap.rep();
    const JForm<double> Jf = JForm<double>::standard(rep.n);
    auto [gp, gm] = mobius_fixed_points(bmap.schottky().word_matrix(g));
    auto [hp, hm] = mobius_fixed_points(bmap.schottky().word_matrix(h));
    FlagD Fgp = bmap.flag(gp), Fgm = bmap.flag(gm);
    FlagD Fhp = bmap.flag(hp), Fhm = bmap.flag(hm);
    FlagD Fx = bmap.flag(x);
    bool same_element = (bmap.schottky().word_matrix(g) - bmap.schottky().word_matrix(h))
                            .cwiseAbs()
                            .maxCoeff() < 1e-12;
    if (same_element) {
        out.hypothesis_ok = true;  // degenerate instance g = h: equality
    } else {
        try {
            out.hypothesis_ok = is_positive_tuple<double>({Fgp, Fx, Fgm, Fhm, Fhp}, tol);
        } catch (const AmbiguousSignError&) {
            out.hypothesis_ok = false;
        }
    }
    if (!out.hypothesis_ok) return out;
    VecD f = Fx.line();
    VecD x0g = neutral_vector<double>(Fgp, Fgm, Jf, tol);
    VecD x0h = neutral_vector<double>(Fhp, Fhm, Jf, tol);
    out.lhs = x0g.dot(Jf.J * f);
    out.rhs = x0h.dot(Jf.J * f);
    out.inequality_ok = out.lhs <= out.rhs + 1e-10;
    return out;
}

}  // namespace posaff
