#pragma once

// Reduced words in a rank-N free group, Schottky data in SL(2,R) acting on
// the boundary circle RP^1, the dual arc system, and crossing sequences.

#include "posaff/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace posaff {

// ---------------------------------------------------------------------------
// Words. Letters are nonzero ints: +i is g_i, -i is g_i^{-1} (1-based i).

struct Word {
    std::vector<int> ls;

    Word() = default;
    explicit Word(std::vector<int> letters) : ls(std::move(letters)) {}

    static Word reduce(const std::vector<int>& letters) {
        Word w;
        for (int l : letters) {
            if (l == 0) throw std::invalid_argument("Word: 0 is not a letter");
            if (!w.ls.empty() && w.ls.back() == -l) w.ls.pop_back();
            else w.ls.push_back(l);
        }
        return w;
    }

    int size() const { return int(ls.size()); }
    bool empty() const { return ls.empty(); }

    Word inverse() const {
        Word w;
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) w.ls.push_back(-*it);
        return w;
    }

    Word operator*(const Word& o) const {
        std::vector<int> cat = ls;
        cat.insert(cat.end(), o.ls.begin(), o.ls.end());
        return reduce(cat);
    }

    Word pow(int k) const {
        Word w;
        Word base = k >= 0 ? *this : inverse();
        for (int i = 0; i < std::abs(k); ++i) w = w * base;
        return w;
    }

    bool operator==(const Word& o) const { return ls == o.ls; }
    bool operator<(const Word& o) const {
        if (ls.size() != o.ls.size()) return ls.size() < o.ls.size();
        for (size_t i = 0; i < ls.size(); ++i) {
            // letter order: 1 < -1 < 2 < -2 < ...
            auto rank = [](int l) { return 2 * std::abs(l) + (l < 0 ? 1 : 0); };
            if (rank(ls[i]) != rank(o.ls[i])) return rank(ls[i]) < rank(o.ls[i]);
        }
        return false;
    }

    std::string str() const {
        if (ls.empty()) return "e";
        std::ostringstream os;
        for (size_t i = 0; i < ls.size(); ++i) {
            if (i) os << ".";
            os << "g" << std::abs(ls[i]);
            if (ls[i] < 0) os << "'";
        }
        return os.str();
    }
};

// All reduced words of length 1..L; count per length l is 2N (2N-1)^(l-1).
inline std::vector<Word> enumerate_words(int N, int L) {
    if (N < 1 || L < 1) throw std::invalid_argument("enumerate_words: N, L >= 1");
    std::vector<Word> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int depth) {
        if (depth > 0) out.push_back(Word(cur));
        if (depth == L) return;
        for (int i = 1; i <= N; ++i)
            for (int s : {+1, -1}) {
                int l = s * i;
                if (!cur.empty() && cur.back() == -l) continue;
                cur.push_back(l);
                rec(depth + 1);
                cur.pop_back();
            }
    };
    rec(0);
    return out;
}

// Cyclic-conjugacy representative: cyclically reduce, then take the
// lexicographically smallest rotation.
inline Word cyclic_representative(const Word& w0) {
    Word w = w0;
    while (w.size() >= 2 && w.ls.front() == -w.ls.back()) {
        w.ls.erase(w.ls.begin());
        w.ls.pop_back();
    }
    if (w.size() <= 1) return w;
    Word best = w;
    Word rot = w;
    for (int r = 1; r < w.size(); ++r) {
        std::rotate(rot.ls.begin(), rot.ls.begin() + 1, rot.ls.end());
        if (rot < best) best = rot;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Circle RP^1 and SL(2,R).

using SL2 = Eigen::Matrix2d;

inline SL2 sl2_inverse(const SL2& g) {
    SL2 inv;
    inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return inv;  // adjugate; exact for det 1
}

// A point [p : q] of RP^1; the boundary coordinate is t = p/q, infinity is
// [1 : 0]. Normalized so that q > 0, or q = 0 and p = 1.
struct CirclePoint {
    double p = 0, q = 1;

    CirclePoint() = default;
    CirclePoint(double pp, double qq) : p(pp), q(qq) { normalize(); }
    static CirclePoint from_t(double t) { return CirclePoint(t, 1.0); }
    static CirclePoint infinity() { return CirclePoint(1.0, 0.0); }

    void normalize() {
        double m = std::max(std::abs(p), std::abs(q));
        if (m == 0) throw std::invalid_argument("CirclePoint: zero vector");
        p /= m; q /= m;
        if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    }

    bool is_infinity(double eps = 1e-14) const { return std::abs(q) <= eps * std::abs(p); }
    double t() const { return p / q; }

    // parameter increasing with t, wrapping through infinity; range [0, pi)
    double tau() const {
        double phi = std::atan2(q, p);  // in (-pi, pi]
        if (phi < 0) phi += M_PI;
        if (phi >= M_PI) phi -= M_PI;
        double tau = M_PI - phi;
        if (tau >= M_PI) tau -= M_PI;
        return tau;
    }
};

inline CirclePoint mobius(const SL2& g, const CirclePoint& x) {
    return CirclePoint(g(0, 0) * x.p + g(0, 1) * x.q, g(1, 0) * x.p + g(1, 1) * x.q);
}

inline double circle_distance(const CirclePoint& a, const CirclePoint& b) {
    double d = std::abs(a.tau() - b.tau());
    return std::min(d, M_PI - d);
}

// strict counter-clockwise cyclic order (a, b, c)
inline bool ccw(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
    auto gap = [](double x, double y) {  // (y - x) mod pi in (0, pi)
        double g = std::fmod(y - x, M_PI);
        if (g < 0) g += M_PI;
        return g;
    };
    double gb = gap(a.tau(), b.tau());
    double gc = gap(a.tau(), c.tau());
    return gb > 0 && gc > gb;
}

// closed ccw arc from start to end
struct CircleArc {
    CirclePoint start, end;

    bool contains(const CirclePoint& x, bool closed = true) const {
        if (ccw(start, x, end)) return true;
        if (!closed) return false;
        return circle_distance(x, start) == 0.0 || circle_distance(x, end) == 0.0;
    }
    bool contains_strict(const CirclePoint& x) const { return ccw(start, x, end); }
};

inline double sl2_trace(const SL2& g) { return g(0, 0) + g(1, 1); }

inline bool is_hyperbolic(const SL2& g, double eps = 1e-12) {
    return std::abs(sl2_trace(g)) > 2.0 + eps;
}

// Fixed points of the boundary action, attracting first.
inline std::pair<CirclePoint, CirclePoint> mobius_fixed_points(const SL2& g) {
    if (!is_hyperbolic(g)) throw NonRegularError("mobius_fixed_points: element is not hyperbolic");
    double tr = sl2_trace(g);
    double disc = std::sqrt(tr * tr - 4.0);
    double l1 = (tr + (tr > 0 ? disc : -disc)) / 2.0;  // larger |eigenvalue|
    double l2 = 1.0 / l1;
    auto eigvec = [&](double lam) {
        // rows of (g - lam I) are proportional; pick the more stable kernel vector
        Eigen::Vector2d v1(-g(0, 1), g(0, 0) - lam);
        Eigen::Vector2d v2(g(1, 1) - lam, -g(1, 0));
        Eigen::Vector2d v = (v1.norm() >= v2.norm()) ? v1 : v2;
        return CirclePoint(v(0), v(1));
    };
    return {eigvec(l1), eigvec(l2)};
}

// t(g) = 2 arccosh(|tr g| / 2)
inline double translation_length(const SL2& g) {
    if (!is_hyperbolic(g)) throw NonRegularError("translation_length: element is not hyperbolic");
    return 2.0 * std::acosh(std::abs(sl2_trace(g)) / 2.0);
}

// ---------------------------------------------------------------------------
// Schottky data: N hyperbolic generators with 2N pairwise disjoint closed
// intervals; g_i maps the complement of I_i^- onto I_i^+. The bundled
// examples use exact side pairing, so endpoint images may land on interval
// endpoints; interiors must map strictly inside.

struct SchottkyData {
    int N = 0;
    std::vector<SL2> gens;
    std::vector<CircleArc> Iminus, Iplus;  // per generator

    SL2 letter_matrix(int letter) const {
        int i = std::abs(letter) - 1;
        if (i < 0 || i >= N) throw std::out_of_range("letter out of range");
        return letter > 0 ? gens[i] : sl2_inverse(gens[i]);
    }

    SL2 word_matrix(const Word& w) const {
        SL2 m = SL2::Identity();
        for (int l : w.ls) m = m * letter_matrix(l);
        return m;
    }
};

struct PingPongReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(const std::string& msg) {
        ok = false;
        violations.push_back(msg);
    }
};

inline PingPongReport verify_ping_pong(const SchottkyData& S, double eps = 1e-9) {
    PingPongReport rep;
    if (S.N < 1 || int(S.gens.size()) != S.N || int(S.Iminus.size()) != S.N ||
        int(S.Iplus.size()) != S.N) {
        rep.fail("malformed Schottky data");
        return rep;
    }
    std::vector<const CircleArc*> arcs;
    std::vector<std::string> names;
    for (int i = 0; i < S.N; ++i) {
        arcs.push_back(&S.Iminus[i]); names.push_back("I" + std::to_string(i + 1) + "-");
        arcs.push_back(&S.Iplus[i]);  names.push_back("I" + std::to_string(i + 1) + "+");
    }
    // pairwise distinct endpoints and pairwise disjoint arcs
    for (size_t a = 0; a < arcs.size(); ++a)
        for (size_t b = a + 1; b < arcs.size(); ++b) {
            for (const CirclePoint* x : {&arcs[a]->start, &arcs[a]->end})
                if (arcs[b]->contains_strict(*x) || circle_distance(*x, arcs[b]->start) < eps ||
                    circle_distance(*x, arcs[b]->end) < eps)
                    rep.fail("intervals " + names[a] + " and " + names[b] + " overlap");
            for (const CirclePoint* x : {&arcs[b]->start, &arcs[b]->end})
                if (arcs[a]->contains_strict(*x))
                    rep.fail("intervals " + names[a] + " and " + names[b] + " overlap");
        }
    for (int i = 0; i < S.N; ++i) {
        if (!is_hyperbolic(S.gens[i]))
            rep.fail("generator " + std::to_string(i + 1) + " is not hyperbolic");
    }
    if (!rep.ok) return rep;
    // g_i maps the closed complement of int(I_i^-) onto I_i^+ reversing the
    // boundary roles: endpoints go to endpoints (or strictly inside), and
    // sampled interior points of the complement land inside I_i^+.
    for (int i = 0; i < S.N; ++i) {
        const SL2 g = S.gens[i];
        const SL2 gi = sl2_inverse(g);
        auto check_map = [&](const SL2& m, const CircleArc& src, const CircleArc& dst,
                             const std::string& label) {
            // closed complement of src is the ccw arc [src.end, src.start]
            CirclePoint a = mobius(m, src.end), b = mobius(m, src.start);
            auto inside = [&](const CirclePoint& x) {
                return dst.contains_strict(x) || circle_distance(x, dst.start) < eps ||
                       circle_distance(x, dst.end) < eps;
            };
            if (!inside(a) || !inside(b)) rep.fail(label + ": endpoint image escapes target");
            // interior samples of the complement arc
            double t0 = src.end.tau(), gapw = std::fmod(src.start.tau() - t0 + M_PI, M_PI);
            if (gapw <= 0) gapw += M_PI;
            for (double f : {0.25, 0.5, 0.75}) {
                double tau = t0 + f * gapw;
                CirclePoint x(std::cos(M_PI - tau), std::sin(M_PI - tau));
                CirclePoint y = mobius(m, x);
                if (!dst.contains_strict(y)) rep.fail(label + ": interior image escapes target");
            }
        };
        check_map(g, S.Iminus[i], S.Iplus[i], "g" + std::to_string(i + 1));
        check_map(gi, S.Iplus[i], S.Iminus[i], "g" + std::to_string(i + 1) + "'");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Arc system dual to the generators: each wall of the base tile K is the
// geodesic over one ping-pong interval. gamma_i maps the I_i^- wall to the
// I_i^+ wall, reversing interval endpoints: gamma_i(start I^-) = end I^+.
//
// Conventions (fixed once, used by the cocycle and the domains):
//   - a wall's transverse orientation points away from the base tile K;
//   - its left endpoint a^+ is the ccw END of its interval, a^- the START;
//   - leaving K through the I_i^+ wall is the positive crossing of arc i.

struct WallRef {
    int gen = 1;       // 1-based generator index
    bool plus = true;  // true: the I^+ wall, false: the I^- wall

    bool operator==(const WallRef& o) const { return gen == o.gen && plus == o.plus; }
    std::string str() const { return "a" + std::to_string(gen) + (plus ? "+" : "-"); }
};

struct ArcSystem {
    const SchottkyData* S = nullptr;

    ArcSystem() = default;
    explicit ArcSystem(const SchottkyData& s) : S(&s) {}

    CircleArc wall_interval(const WallRef& w) const {
        return w.plus ? S->Iplus[w.gen - 1] : S->Iminus[w.gen - 1];
    }
    CirclePoint endpoint_plus(const WallRef& w) const { return wall_interval(w).end; }
    CirclePoint endpoint_minus(const WallRef& w) const { return wall_interval(w).start; }

    // the wall crossed when leaving a tile by the given letter
    static WallRef wall_of_letter(int letter) {
        return WallRef{std::abs(letter), letter > 0};
    }
};

// One transverse crossing: the wall lift prefix * wall with sign +1 for
// generator letters and -1 for inverse letters.
struct Crossing {
    Word prefix;   // tile reached before the crossing
    WallRef wall;  // base wall of K being translated
    int sign = 1;
};

inline std::vector<Crossing> crossing_sequence(const Word& w, const ArcSystem&) {
    std::vector<Crossing> out;
    Word prefix;
    for (int l : w.ls) {
        Crossing c;
        c.prefix = prefix;
        c.wall = ArcSystem::wall_of_letter(l);
        c.sign = l > 0 ? 1 : -1;
        out.push_back(c);
        prefix.ls.push_back(l);  // stays reduced: w is reduced
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bundled rank-2 example: g1 = diag(5, 1/5), g2 its conjugate by the Cayley
// unit h: 0 -> -1, inf -> 1. The four walls sit over t = +-1/5, +-5 and
// their h-images; side pairing is exact.

inline SchottkyData bundled_rank2() {
    SchottkyData S;
    S.N = 2;
    SL2 g1; g1 << 5.0, 0.0, 0.0, 0.2;
    SL2 g2; g2 << 13.0 / 5.0, 12.0 / 5.0, 12.0 / 5.0, 13.0 / 5.0;
    S.gens = {g1, g2};
    S.Iminus.resize(2);
    S.Iplus.resize(2);
    S.Iminus[0] = {CirclePoint::from_t(-0.2), CirclePoint::from_t(0.2)};
    S.Iplus[0] = {CirclePoint::from_t(5.0), CirclePoint::from_t(-5.0)};
    S.Iminus[1] = {CirclePoint::from_t(-1.5), CirclePoint::from_t(-2.0 / 3.0)};
    S.Iplus[1] = {CirclePoint::from_t(2.0 / 3.0), CirclePoint::from_t(1.5)};
    return S;
}

inline SchottkyData bundled_rank1() {
    SchottkyData S;
    S.N = 1;
    SL2 g1; g1 << 5.0, 0.0, 0.0, 0.2;
    S.gens = {g1};
    S.Iminus.resize(1);
    S.Iplus.resize(1);
    S.Iminus[0] = {CirclePoint::from_t(-0.2), CirclePoint::from_t(0.2)};
    S.Iplus[0] = {CirclePoint::from_t(5.0), CirclePoint::from_t(-5.0)};
    return S;
}

}  // namespace posaff
