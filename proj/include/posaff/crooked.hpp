#pragma once

// Sign variation, open/closed crooked halfspaces and hyperplanes, stem
// quadrants with constructive converse witnesses, translated domain walls,
// point location in the induced tiling, and crooked-plane meshes (d = 3).

#include "posaff/margulis.hpp"

#include <array>
#include <map>
#include <set>

namespace posaff {

// ---------------------------------------------------------------------------
// Sign variation of coordinate vectors. Upper assigns signs to zeros to
// maximize the count, lower minimizes (the nonzero subsequence). Floats
// treat |c| <= eps_sign * max(1, |c|_inf) as zero and carry an ambiguity
// flag when a coordinate sits near the zero band.

struct SignVariation {
    int upper = 0;
    int lower = 0;
    int last_sign_upper = 0;    // sign of the last coordinate as used for S+
    int last_nonzero_sign = 0;  // sign of the last nonzero coordinate
    bool ambiguous = false;
};

template <class T>
SignVariation sign_variation_coords(const VecX<T>& c, const ToleranceContext& tol = {}) {
    const int d = int(c.size());
    if (d == 0) throw std::invalid_argument("sign_variation: empty vector");
    SignVariation out;
    std::vector<int> sg(d);
    double band = 0.0;
    if constexpr (!is_exact_v<T>) {
        double scale = std::max(1.0, double(c.cwiseAbs().maxCoeff()));
        band = tol.eps_sign * scale;
    }
    bool allzero = true;
    for (int i = 0; i < d; ++i) {
        if constexpr (is_exact_v<T>) {
            sg[i] = (c(i) > 0) ? 1 : (c(i) < 0 ? -1 : 0);
        } else {
            double a = std::abs(double(c(i)));
            sg[i] = (a <= band) ? 0 : (c(i) > 0 ? 1 : -1);
            if (a > band / 3 && a <= 3 * band) out.ambiguous = true;
        }
        if (sg[i] != 0) allzero = false;
    }
    if (allzero) throw std::invalid_argument("sign_variation: zero vector");

    std::vector<int> pos, sgn;
    for (int i = 0; i < d; ++i)
        if (sg[i] != 0) { pos.push_back(i); sgn.push_back(sg[i]); }
    const int m = int(pos.size());

    for (int j = 0; j + 1 < m; ++j)
        if (sgn[j] != sgn[j + 1]) ++out.lower;
    out.last_nonzero_sign = sgn[m - 1];

    // upper: leading run of k zeros contributes k; an interior gap of k zeros
    // between fixed signs contributes k+1 when the parity matches, else k;
    // a trailing run of k zeros contributes k and alternates the last sign.
    int upper = pos[0];  // leading zeros
    for (int j = 0; j + 1 < m; ++j) {
        int k = pos[j + 1] - pos[j] - 1;
        int need = (sgn[j] != sgn[j + 1]) ? 1 : 0;
        upper += ((k + 1) % 2 == need) ? (k + 1) : k;
    }
    int trail = d - 1 - pos[m - 1];
    upper += trail;
    out.upper = upper;
    out.last_sign_upper = (trail % 2 == 0) ? sgn[m - 1] : -sgn[m - 1];
    return out;
}

// ---------------------------------------------------------------------------
// Crooked halfspaces. E is a positively oriented J-basis; membership of v is
// decided by the sign variation of the E-coordinates of v - translation.

template <class T>
struct CrookedHalfspace {
    int n = 1;
    MatX<T> E;
    MatX<T> Einv;
    VecX<T> translation;

    static CrookedHalfspace from_basis(const MatX<T>& E, int n, VecX<T> translation) {
        CrookedHalfspace H;
        H.n = n;
        H.E = E;
        H.Einv = inverse<T>(E);
        H.translation = std::move(translation);
        return H;
    }
    static CrookedHalfspace from_basis(const MatX<T>& E, int n) {
        return from_basis(E, n, VecX<T>::Zero(E.rows()));
    }

    int dim() const { return 4 * n - 1; }
    VecX<T> coords(const VecX<T>& v) const { return Einv * (v - translation); }
    VecX<T> ambient(const VecX<T>& c) const { return E * c + translation; }
};

using HalfspaceR = CrookedHalfspace<Rat>;
using HalfspaceD = CrookedHalfspace<double>;

// H(F, G): the crooked halfspace of the basis adapted to the oriented
// transverse isotropic pair (F, G), optionally translated.
template <class T>
CrookedHalfspace<T> halfspace_from_flags(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                                         const JForm<T>& Jf, const VecX<T>& translation,
                                         const ToleranceContext& tol = {}) {
    JBasisPair<T> jb = adapted_J_basis<T>(F, G, Jf, tol);
    return CrookedHalfspace<T>::from_basis(jb.E, Jf.n, translation);
}

template <class T>
SignVariation halfspace_variation(const VecX<T>& v, const CrookedHalfspace<T>& H,
                                  const ToleranceContext& tol = {}) {
    return sign_variation_coords<T>(H.coords(v), tol);
}

template <class T>
bool is_zero_after_translation(const VecX<T>& v, const CrookedHalfspace<T>& H,
                               const ToleranceContext& tol = {}) {
    VecX<T> c = H.coords(v);
    if constexpr (is_exact_v<T>) return c.isZero(0);
    else return double(c.cwiseAbs().maxCoeff()) <= tol.eps_sign;
}

// S+ <= 2n-1, with positive last used sign in case of equality. 0 is not in
// the open halfspace.
template <class T>
bool in_open_halfspace(const VecX<T>& v, const CrookedHalfspace<T>& H,
                       const ToleranceContext& tol = {}) {
    if (is_zero_after_translation<T>(v, H, tol)) return false;
    SignVariation sv = sign_variation_coords<T>(H.coords(v), tol);
    if (sv.upper < 2 * H.n - 1) return true;
    return sv.upper == 2 * H.n - 1 && sv.last_sign_upper > 0;
}

// S- <= 2n-1, with positive last nonzero sign in case of equality. 0 is in
// the closed halfspace.
template <class T>
bool in_closed_halfspace(const VecX<T>& v, const CrookedHalfspace<T>& H,
                         const ToleranceContext& tol = {}) {
    if (is_zero_after_translation<T>(v, H, tol)) return true;
    SignVariation sv = sign_variation_coords<T>(H.coords(v), tol);
    if (sv.lower < 2 * H.n - 1) return true;
    return sv.lower == 2 * H.n - 1 && sv.last_nonzero_sign > 0;
}

template <class T>
bool on_crooked_plane(const VecX<T>& v, const CrookedHalfspace<T>& H,
                      const ToleranceContext& tol = {}) {
    return in_closed_halfspace<T>(v, H, tol) && !in_open_halfspace<T>(v, H, tol);
}

// Stem quadrant: E-coordinates supported on {first, last} with
// c_1 <= 0 <= c_d.
template <class T>
bool in_stem_quadrant(const VecX<T>& u, const CrookedHalfspace<T>& H,
                      const ToleranceContext& tol = {}) {
    VecX<T> c = H.Einv * u;  // cone of directions: translation not applied
    const int d = int(c.size());
    double scale = 1.0;
    if constexpr (!is_exact_v<T>) scale = std::max(1.0, double(c.cwiseAbs().maxCoeff()));
    for (int i = 1; i + 1 < d; ++i)
        if (sign_of<T>(c(i), tol, scale) != 0) return false;
    return sign_of<T>(c(0), tol, scale) <= 0 && sign_of<T>(c(d - 1), tol, scale) >= 0;
}

// Constructive converse: for u outside the stem quadrant, produce v in the
// closed halfspace with v + u outside. Patterns follow the cone
// characterization: huge alternating coordinates surrounding the violation.
template <class T>
std::optional<VecX<T>> stem_quadrant_witness(const VecX<T>& u, const CrookedHalfspace<T>& H,
                                             const ToleranceContext& tol = {}) {
    const int d = H.dim(), n = H.n;
    VecX<T> cu = H.Einv * u;
    double scale = 1.0;
    if constexpr (!is_exact_v<T>) scale = std::max(1.0, double(cu.cwiseAbs().maxCoeff()));

    auto try_candidate = [&](const VecX<T>& coords) -> std::optional<VecX<T>> {
        VecX<T> v = H.E * coords;  // untranslated cone test
        CrookedHalfspace<T> H0 = CrookedHalfspace<T>::from_basis(H.E, H.n);
        if (in_closed_halfspace<T>(v, H0, tol) && !in_closed_halfspace<T>((v + u).eval(), H0, tol))
            return v;
        return std::nullopt;
    };

    std::vector<VecX<T>> patterns;
    // interior violation at 1-based index i
    for (int i = 2; i <= d - 1; ++i) {
        int s = -sign_of<T>(cu(i - 1), tol, scale);
        if (s == 0) continue;
        int below = (i <= 2 * n) ? 1 : (2 * n - 1);
        int above = 2 * n - below;
        VecX<T> a = VecX<T>::Zero(d);
        for (int k = 1; k <= below; ++k) a(i - 1 - k) = T(((below - k) % 2 == 0) ? s : -s);
        for (int k = 1; k <= above; ++k) a(i - 1 + k) = T((k % 2 == 1) ? s : -s);
        patterns.push_back(a);
    }
    if (sign_of<T>(cu(0), tol, scale) > 0) {  // c_1 > 0
        VecX<T> a = VecX<T>::Zero(d);
        for (int j = 1; j <= 2 * n; ++j) a(j) = T((j % 2 == 1) ? -1 : 1);
        patterns.push_back(a);
    }
    if (sign_of<T>(cu(d - 1), tol, scale) < 0) {  // c_d < 0
        VecX<T> a = VecX<T>::Zero(d);
        for (int j = 1; j <= 2 * n; ++j) a(d - 1 - j) = T((j % 2 == 1) ? 1 : -1);
        patterns.push_back(a);
    }
    for (const VecX<T>& p : patterns) {
        T mag = T(16) * scalar_from_int<T>(long(std::ceil(scale)));
        for (int attempt = 0; attempt < 12; ++attempt, mag *= T(16)) {
            if (auto w = try_candidate((mag * p).eval())) return w;
        }
    }
    return std::nullopt;
}

// Prop-5.6 sampling of the halfspace: a random interval flag spanned by a
// unipotent lower TP matrix against E, then a point of its positive middle
// half-subspace. closed=false keeps the top coefficient strictly positive.
template <class T>
VecX<T> sample_halfspace_point(const CrookedHalfspace<T>& H, CounterRng& rng, bool closed = true,
                               double spread = 1.0) {
    const int d = H.dim(), mid = 2 * H.n;
    MatX<T> U = random_unipotent_lower_tp<T>(d, rng);
    MatX<T> B = H.E * U;
    VecX<T> v = VecX<T>::Zero(d);
    for (int j = 0; j < mid - 1; ++j) {
        if constexpr (is_exact_v<T>) v += rng.rat(3, 4) * B.col(j);
        else v += T(rng.normal() * spread) * B.col(j);
    }
    T top;
    if constexpr (is_exact_v<T>) top = closed ? Rat(rng.uniform_int(0, 3)) : rng.positive_rat(3, 4);
    else top = T(std::abs(rng.normal()) * spread + (closed ? 0.0 : 0.05));
    v += top * B.col(mid - 1);
    return v + H.translation;
}

// Sampled certification of Prop 5.7 for a positive quadruple (F, G, G2, F2):
// closed H(F,G) avoids closed H(G2,F2) away from 0, and closed H(G,G2) sits
// inside open H(F,F2).
struct DisjointnessReport {
    bool precondition_ok = false;
    bool ok = false;
    long samples = 0;
    long violations_separation = 0;
    long violations_nesting = 0;
    std::vector<VecD> witnesses;
};

inline DisjointnessReport quadruple_disjointness(const FlagD& F, const FlagD& G, const FlagD& G2,
                                                 const FlagD& F2, const JForm<double>& Jf,
                                                 long samples, std::uint64_t seed,
                                                 const ToleranceContext& tol = {}) {
    DisjointnessReport rep;
    rep.precondition_ok = is_positive_tuple<double>({F, G, G2, F2}, tol);
    if (!rep.precondition_ok) return rep;
    rep.samples = samples;
    VecD zero = VecD::Zero(Jf.d);
    HalfspaceD HFG = halfspace_from_flags<double>(F, G, Jf, zero, tol);
    HalfspaceD HG2F2 = halfspace_from_flags<double>(G2, F2, Jf, zero, tol);
    HalfspaceD HGG2 = halfspace_from_flags<double>(G, G2, Jf, zero, tol);
    HalfspaceD HFF2 = halfspace_from_flags<double>(F, F2, Jf, zero, tol);
    CounterRng rng(seed);
    for (long k = 0; k < samples; ++k) {
        VecD p = sample_halfspace_point<double>(HFG, rng, true);
        if (p.cwiseAbs().maxCoeff() > tol.eps_eq && in_closed_halfspace<double>(p, HG2F2, tol)) {
            ++rep.violations_separation;
            if (rep.witnesses.size() < 8) rep.witnesses.push_back(p);
        }
        VecD q = sample_halfspace_point<double>(HGG2, rng, true);
        if (!in_open_halfspace<double>(q, HFF2, tol)) {
            ++rep.violations_nesting;
            if (rep.witnesses.size() < 8) rep.witnesses.push_back(q);
        }
    }
    rep.ok = rep.violations_separation == 0 && rep.violations_nesting == 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Domain walls. The halfspace stored per wall is the far side: its interval
// flags in (start, end) order, translated by u~. The domain D is the
// complement of the 2N open far halfspaces; crossing the wall of letter l
// leads to tiles addressed by words starting with l.

struct DomainWall {
    int letter = 0;
    WallRef wall;
    FlagD flag_start, flag_end;
    VecD utilde;
    HalfspaceD H;
};

struct Domain {
    int n = 1;
    int N = 1;
    std::vector<DomainWall> walls;

    const DomainWall& wall_of_letter(int letter) const {
        for (const auto& w : walls)
            if (w.letter == letter) return w;
        throw std::out_of_range("no wall for letter");
    }
};

struct SidePairingReport {
    bool ok = true;
    double max_translation_residual = 0;
    long membership_mismatches = 0;
    std::vector<std::string> notes;
};

inline Domain build_domain(const AffineDeformation& def, const BoundaryMap& bmap,
                           const ToleranceContext& tol = {}) {
    Domain dom;
    dom.n = def.rep->n;
    dom.N = def.rep->N;
    const JForm<double> Jf = JForm<double>::standard(dom.n);
    for (int i = 1; i <= dom.N; ++i)
        for (int sgn : {+1, -1}) {
            DomainWall w;
            w.letter = sgn * i;
            w.wall = ArcSystem::wall_of_letter(w.letter);
            w.flag_start = bmap.wall_flag_minus(w.wall);
            w.flag_end = bmap.wall_flag_plus(w.wall);
            w.utilde = tilde_u(Word{}, w.wall, def);
            w.H = halfspace_from_flags<double>(w.flag_start, w.flag_end, Jf, w.utilde, tol);
            dom.walls.push_back(std::move(w));
        }
    return dom;
}

// Side pairing: the affine generator maps the I_i^- wall onto the I_i^+
// wall; on memberships, the far side of the I^- wall goes to the complement
// of the closed far side of the I^+ wall.
inline SidePairingReport verify_side_pairing(const Domain& dom, const AffineDeformation& def,
                                             const BoundaryMap& bmap, long samples = 200,
                                             std::uint64_t seed = 7,
                                             const ToleranceContext& tol = {}) {
    SidePairingReport rep;
    CounterRng rng(seed);
    for (int i = 1; i <= dom.N; ++i) {
        const DomainWall& wm = dom.wall_of_letter(-i);
        const DomainWall& wp = dom.wall_of_letter(+i);
        Word gi(std::vector<int>{i});
        AffineMap A = affine_action(gi, def);
        const MatD& g = def.rep->letter_image(i);
        // flags map with start and end exchanged
        FlagD im_s = FlagD::from_basis(g * wm.flag_start.B, tol);
        FlagD im_e = FlagD::from_basis(g * wm.flag_end.B, tol);
        if (!flags_equal(im_s, wp.flag_end, tol) || !flags_equal(im_e, wp.flag_start, tol)) {
            rep.ok = false;
            rep.notes.push_back("wall flags of a" + std::to_string(i) + "- do not pair");
        }
        double resid = (g * wm.utilde + def.eval(gi) - wp.utilde).cwiseAbs().maxCoeff();
        rep.max_translation_residual = std::max(rep.max_translation_residual, resid);
        if (resid > tol.eps_eq * 10) {
            rep.ok = false;
            rep.notes.push_back("side-pairing translation residual " + std::to_string(resid));
        }
        for (long k = 0; k < samples; ++k) {
            VecD x = sample_halfspace_point<double>(wm.H, rng, false, 2.0);
            bool lhs = in_open_halfspace<double>(x, wm.H, tol);
            bool rhs = !in_closed_halfspace<double>(A.apply(x), wp.H, tol);
            if (lhs != rhs) ++rep.membership_mismatches;
        }
    }
    if (rep.membership_mismatches > 0) rep.ok = false;
    return rep;
}

// Pairwise wall disjointness: sampled points of each closed far halfspace
// stay out of every other closed far halfspace (origin excepted), plus the
// algebraic certificate: untranslated quadruple positivity and stem-quadrant
// membership of each wall displacement.
struct WallDisjointnessReport {
    bool ok = true;
    bool algebraic_ok = true;
    long violations = 0;
    std::vector<std::string> notes;
};

inline WallDisjointnessReport verify_wall_disjointness(const Domain& dom, long samples_per_pair,
                                                       std::uint64_t seed,
                                                       const ToleranceContext& tol = {}) {
    WallDisjointnessReport rep;
    const int W = int(dom.walls.size());
    CounterRng rng(seed);
    for (int a = 0; a < W; ++a) {
        const auto& wa = dom.walls[a];
        if (!in_stem_quadrant<double>(wa.utilde, wa.H, tol)) {
            rep.algebraic_ok = false;
            rep.notes.push_back("u~ of wall " + wa.wall.str() + " is not in its stem quadrant");
        }
    }
    for (int a = 0; a < W; ++a)
        for (int b = 0; b < W; ++b) {
            if (a == b) continue;
            const auto& wa = dom.walls[a];
            const auto& wb = dom.walls[b];
            // algebraic: (start_a, end_a, start_b, end_b) positive quadruple
            if (a < b) {
                bool quad = is_positive_tuple<double>(
                    {wa.flag_start, wa.flag_end, wb.flag_start, wb.flag_end}, tol) ||
                    is_positive_tuple<double>(
                    {wb.flag_start, wb.flag_end, wa.flag_start, wa.flag_end}, tol);
                if (!quad) {
                    rep.algebraic_ok = false;
                    rep.notes.push_back("walls " + wa.wall.str() + "," + wb.wall.str() +
                                        ": interval quadruple not positive");
                }
            }
            for (long k = 0; k < samples_per_pair; ++k) {
                VecD p = sample_halfspace_point<double>(wa.H, rng, true, 1.5);
                if ((p - wa.H.translation).cwiseAbs().maxCoeff() <= tol.eps_eq) continue;
                if (in_closed_halfspace<double>(p, wb.H, tol)) ++rep.violations;
            }
        }
    if (rep.violations > 0) rep.ok = false;
    rep.ok = rep.ok && rep.algebraic_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Point location. A point lies in at most one open far halfspace; crossing
// that wall and pulling back by the inverse side pairing walks the tiling
// toward the base domain. Ambiguous memberships retry once with eps/10.

struct TileLocation {
    bool located = false;
    Word word;
    int depth = 0;
    std::string failure;
};

inline TileLocation tile_locate(const VecD& p, const Domain& dom, const AffineDeformation& def,
                                int maxDepth, const ToleranceContext& tol = {}) {
    if (maxDepth < 1) throw std::invalid_argument("tile_locate: maxDepth >= 1");
    TileLocation out;
    VecD cur = p;
    std::vector<AffineMap> pull;  // per letter: inverse side pairing
    std::map<int, int> letter_index;
    for (const auto& w : dom.walls) {
        letter_index[w.letter] = int(pull.size());
        pull.push_back(affine_action(Word{std::vector<int>{-w.letter}}, def));
    }
    for (int depth = 0; depth <= maxDepth; ++depth) {
        int hit_letter = 0;
        int hits = 0;
        bool ambiguous = false;
        for (const auto& w : dom.walls) {
            SignVariation sv;
            bool inside;
            try {
                if (is_zero_after_translation<double>(cur, w.H, tol)) { inside = false; }
                else {
                    sv = halfspace_variation<double>(cur, w.H, tol);
                    ambiguous = ambiguous || sv.ambiguous;
                    inside = sv.upper < 2 * dom.n - 1 ||
                             (sv.upper == 2 * dom.n - 1 && sv.last_sign_upper > 0);
                }
            } catch (const std::invalid_argument&) {
                inside = false;
            }
            if (inside) { ++hits; hit_letter = w.letter; }
        }
        if (hits == 0) {
            out.located = true;
            out.depth = depth;
            return out;
        }
        if (hits > 1 || ambiguous) {
            // measure-zero wall proximity: one retry with tightened band
            ToleranceContext tight = tol.tightened(0.1);
            int thits = 0, tletter = 0;
            for (const auto& w : dom.walls)
                if (in_open_halfspace<double>(cur, w.H, tight)) { ++thits; tletter = w.letter; }
            if (thits == 0) {
                out.located = true;
                out.depth = depth;
                return out;
            }
            if (thits > 1) {
                out.failure = "ambiguous membership: multiple walls claim the point";
                return out;
            }
            hit_letter = tletter;
        }
        if (depth == maxDepth) break;
        cur = pull[letter_index[hit_letter]].apply(cur);
        out.word.ls.push_back(hit_letter);
    }
    out.failure = "max depth exceeded";
    return out;
}

struct TileReport {
    long samples = 0;
    long located = 0;
    long relocation_checks = 0;
    long relocation_mismatches = 0;
    std::vector<long> depth_histogram;
    std::vector<VecD> failures;
    double success_fraction() const { return samples ? double(located) / double(samples) : 1.0; }
    bool ok() const { return located == samples && relocation_mismatches == 0; }
};

inline TileReport tiling_experiment(const Domain& dom, const AffineDeformation& def, long samples,
                                    double radius, int maxDepth, std::uint64_t seed,
                                    const ToleranceContext& tol = {}) {
    TileReport rep;
    rep.samples = samples;
    const int d = 4 * dom.n - 1;
    CounterRng master(seed);
    for (long k = 0; k < samples; ++k) {
        CounterRng rng = master.split(std::uint64_t(k));
        VecD p(d);
        for (int i = 0; i < d; ++i) p(i) = rng.normal();
        double nrm = p.norm();
        if (nrm == 0) nrm = 1;
        p *= radius * std::pow(rng.u01(), 1.0 / d) / nrm;
        TileLocation loc = tile_locate(p, dom, def, maxDepth, tol);
        if (loc.located) {
            ++rep.located;
            if (int(rep.depth_histogram.size()) <= loc.depth)
                rep.depth_histogram.resize(loc.depth + 1, 0);
            ++rep.depth_histogram[loc.depth];
            // uniqueness spot check on a thin subsample: push the point back
            // to the base tile, re-apply the located word, locate again.
            if (k % std::max<long>(1, samples / 50) == 0 && loc.depth > 0) {
                AffineMap A = affine_action(loc.word, def);
                VecD q = A.inverse().apply(p);
                TileLocation loc2 = tile_locate(A.apply(q), dom, def, maxDepth, tol);
                ++rep.relocation_checks;
                if (!loc2.located || !(loc2.word == loc.word)) ++rep.relocation_mismatches;
            }
        } else if (rep.failures.size() < 8) {
            rep.failures.push_back(p);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Crooked plane mesh for n = 1: two wings and two stem quadrants, clipped to
// the coordinate box [-B, B]^3 of the basis E.

struct Mesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
};

inline Mesh mesh_emit(const HalfspaceD& H, double bounds) {
    if (H.n != 1) throw std::invalid_argument("mesh_emit: only n = 1 (d = 3) is supported");
    if (!(bounds > 0)) throw std::invalid_argument("mesh_emit: bounds must be positive");
    const double B = bounds;
    Mesh mesh;
    std::map<std::array<double, 3>, int> index;
    auto vertex = [&](double c1, double c2, double c3) {
        std::array<double, 3> key{c1, c2, c3};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        VecD c(3);
        c << c1, c2, c3;
        VecD a = H.ambient(c);
        mesh.vertices.emplace_back(a(0), a(1), a(2));
        int id = int(mesh.vertices.size()) - 1;
        index.emplace(key, id);
        return id;
    };
    auto quad = [&](std::array<std::array<double, 3>, 4> q) {
        int v0 = vertex(q[0][0], q[0][1], q[0][2]);
        int v1 = vertex(q[1][0], q[1][1], q[1][2]);
        int v2 = vertex(q[2][0], q[2][1], q[2][2]);
        int v3 = vertex(q[3][0], q[3][1], q[3][2]);
        mesh.faces.push_back({v0, v1, v2});
        mesh.faces.push_back({v0, v2, v3});
    };
    // wing {c3 = 0, c2 >= 0}
    quad({{{-B, 0, 0}, {B, 0, 0}, {B, B, 0}, {-B, B, 0}}});
    // stem quadrants {c2 = 0, c1 c3 >= 0}
    quad({{{0, 0, 0}, {B, 0, 0}, {B, 0, B}, {0, 0, B}}});
    quad({{{0, 0, 0}, {-B, 0, 0}, {-B, 0, -B}, {0, 0, -B}}});
    // wing {c1 = 0, c2 <= 0}
    quad({{{0, 0, -B}, {0, 0, B}, {0, -B, B}, {0, -B, -B}}});
    return mesh;
}

}  // namespace posaff
