#pragma once

// Arc vectors, the generalized infinitesimal strip-deformation cocycle u,
// the half-weighted wall displacement u~(a), and the affine action.

#include "posaff/posrep.hpp"

namespace posaff {

// Equivariant family of first-line vectors. Free choices live on one wall
// per generator orbit (the I_i^+ wall of the base tile); all other lifts are
// resolved through v_{gamma.a}^± = rho(gamma) v_a^±. The stored vectors are
// Euclidean unit and positively oriented in the cached endpoint flags;
// per-arc scales multiply the whole orbit.
struct ArcVectors {
    std::vector<VecD> vplus;   // at end(I_i^+), unit, positively oriented
    std::vector<VecD> vminus;  // at start(I_i^+)
    std::vector<double> scales;

    int rank() const { return int(vplus.size()); }
    VecD delta(int i) const { return scales[i] * (vplus[i] - vminus[i]); }
};

inline ArcVectors default_arc_vectors(const BoundaryMap& bmap, std::vector<double> scales = {}) {
    const int N = bmap.schottky().N;
    if (scales.empty()) scales.assign(N, 1.0);
    if (int(scales.size()) != N)
        throw std::invalid_argument("default_arc_vectors: need one scale per generator");
    for (double s : scales)
        if (!(s > 0)) throw std::invalid_argument("default_arc_vectors: scales must be positive");
    ArcVectors av;
    av.scales = scales;
    for (int i = 1; i <= N; ++i) {
        WallRef w{i, true};
        VecD vp = bmap.wall_flag_plus(w).line();
        VecD vm = bmap.wall_flag_minus(w).line();
        av.vplus.push_back(vp / vp.norm());
        av.vminus.push_back(vm / vm.norm());
    }
    return av;
}

// Affine map x -> A x + b.
struct AffineMap {
    MatD A;
    VecD b;

    static AffineMap identity(int d) { return {MatD::Identity(d, d), VecD::Zero(d)}; }
    AffineMap compose(const AffineMap& o) const { return {A * o.A, A * o.b + b}; }
    AffineMap inverse() const {
        MatD Ai = posaff::inverse<double>(A);
        return {Ai, -(Ai * b).eval()};
    }
    VecD apply(const VecD& x) const { return A * x + b; }
};

// rho together with the cocycle values on letters; words evaluate through
// the cocycle recursion u(l w) = u(l) + rho(l) u(w).
struct AffineDeformation {
    const Representation* rep = nullptr;
    ArcVectors av;
    std::vector<VecD> u_gen;  // u(g_i)
    std::vector<VecD> u_inv;  // u(g_i^{-1}) = -rho(g_i^{-1}) u(g_i)

    int dim() const { return rep->dim(); }

    const VecD& letter_u(int letter) const {
        int i = std::abs(letter) - 1;
        return letter > 0 ? u_gen[i] : u_inv[i];
    }

    VecD eval(const Word& w) const {
        VecD u = VecD::Zero(dim());
        MatD pref = MatD::Identity(dim(), dim());
        for (int l : w.ls) {
            u += pref * letter_u(l);
            pref = pref * rep->letter_image(l);
        }
        return u;
    }

    AffineMap affine(const Word& w) const { return {rep->word_image(w), eval(w)}; }
};

inline AffineDeformation make_deformation(const Representation& rep, const ArcVectors& av) {
    AffineDeformation def;
    def.rep = &rep;
    def.av = av;
    for (int i = 0; i < av.rank(); ++i) {
        VecD d = av.delta(i);
        def.u_gen.push_back(d);
        def.u_inv.push_back(-(rep.img_inv[i].M * d).eval());
    }
    return def;
}

// Coboundary deformation u(gamma) = v - rho(gamma) v; a control with
// Margulis invariant identically zero.
inline AffineDeformation coboundary_deformation(const Representation& rep, const VecD& v) {
    AffineDeformation def;
    def.rep = &rep;
    for (int i = 0; i < rep.N; ++i) {
        def.u_gen.push_back(v - rep.img[i].M * v);
        def.u_inv.push_back(v - rep.img_inv[i].M * v);
    }
    return def;
}

// Independent evaluation path: the sum over the crossing sequence,
// sigma(x) rho(prefix) (v_a^+ - v_a^-). Must agree with eval().
inline VecD cocycle_eval_crossings(const Word& w, const AffineDeformation& def,
                                   const ArcSystem& A) {
    VecD u = VecD::Zero(def.dim());
    for (const Crossing& c : crossing_sequence(w, A)) {
        int i = c.wall.gen - 1;
        VecD delta = def.av.delta(i);
        if (!c.wall.plus) delta = def.rep->img_inv[i].M * delta;  // transport to the I^- wall
        u += double(c.sign) * (def.rep->word_image(c.prefix) * delta);
    }
    return u;
}

inline VecD cocycle_identity_residual(const Word& w1, const Word& w2,
                                      const AffineDeformation& def) {
    return def.eval(w1 * w2) - def.rep->word_image(w1) * def.eval(w2) - def.eval(w1);
}

// u~ for a translated wall gamma . a: the crossing sum from the base tile to
// the far side of the wall, with the final crossing weighted 1/2. For a base
// wall of K this is +-(1/2) of the transported vector difference.
inline VecD tilde_u(const Word& gamma, const WallRef& wall, const AffineDeformation& def) {
    int i = wall.gen - 1;
    VecD delta = def.av.delta(i);
    VecD base;
    if (wall.plus) base = 0.5 * delta;
    else base = -0.5 * (def.rep->img_inv[i].M * delta).eval();
    if (gamma.empty()) return base;
    return def.eval(gamma) + def.rep->word_image(gamma) * base;
}

inline AffineMap affine_action(const Word& w, const AffineDeformation& def) {
    return def.affine(w);
}

}  // namespace posaff
