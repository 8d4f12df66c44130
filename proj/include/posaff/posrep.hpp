#pragma once

// SO(2n,2n-1) membership certificates, the Lusztig positive subsemigroup,
// the symmetric-power Fuchsian representation, the Veronese osculating
// boundary map and its equivariant extension to arc endpoints.

#include "posaff/flags.hpp"
#include "posaff/freegroup.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace posaff {

// ---------------------------------------------------------------------------
// Certified group elements.

template <class T>
struct GroupElement {
    MatX<T> M;
    double form_residual = 0.0;  // max |M^T J M - J|
    double det_residual = 0.0;   // |det M - 1|
};

template <class T>
GroupElement<T> certify_so(const MatX<T>& M, const JForm<T>& Jf, const ToleranceContext& tol = {}) {
    GroupElement<T> g;
    g.M = M;
    MatX<T> R = M.transpose() * Jf.J * M - Jf.J;
    g.form_residual = inf_norm(R);
    g.det_residual = std::abs(to_double(det<T>(M)) - 1.0);
    double bound = is_exact_v<T> ? 0.0 : tol.eps_eq * std::max(1.0, inf_norm(M));
    if (g.form_residual > bound || g.det_residual > bound)
        throw std::runtime_error("certify_so: matrix does not preserve J within tolerance");
    return g;
}

// ---------------------------------------------------------------------------
// Root data for so(2n,2n-1): generators X_i = E_{i,i+1} + E_{4n-1-i,4n-i},
// i = 1..2n-1, and the reduced word for the longest Weyl element
// w0' = ((s1 s3 ... s_{2n-1})(s2 s4 ... s_{2n-2}))^{2n-1}.

template <class T>
MatX<T> chevalley_generator(int i, int n) {
    if (i < 1 || i > 2 * n - 1) throw std::out_of_range("chevalley_generator: 1 <= i <= 2n-1");
    const int d = 4 * n - 1;
    MatX<T> X = MatX<T>::Zero(d, d);
    X(i - 1, i) = T(1);
    X(d - i - 1, d - i) = T(1);  // E_{4n-1-i, 4n-i} in 1-based indexing
    return X;
}

template <class T>
MatX<T> chevalley_generator_lower(int i, int n) {
    return chevalley_generator<T>(i, n).transpose().eval();
}

inline std::vector<int> so_longest_word(int n) {
    std::vector<int> w;
    for (int rep = 0; rep < 2 * n - 1; ++rep) {
        for (int i = 1; i <= 2 * n - 1; i += 2) w.push_back(i);
        for (int i = 2; i <= 2 * n - 2; i += 2) w.push_back(i);
    }
    return w;  // length (2n-1)^2
}

// exp(t X) for nilpotent X, exact on rational inputs
template <class T>
MatX<T> nilpotent_exp(const MatX<T>& X, const T& t) {
    const int d = int(X.rows());
    MatX<T> out = identity<T>(d);
    MatX<T> P = identity<T>(d);
    T coef(1);
    for (int k = 1; k <= d; ++k) {
        P = (P * X).eval();
        if (P.isZero(0)) break;
        coef *= t / T(k);
        out += coef * P;
    }
    return out;
}

struct RootData {
    int n;
    std::vector<int> word;  // indices of w0'
};

inline RootData root_data(int n) { return RootData{n, so_longest_word(n)}; }

// Product of exponentials along w0' with positive parameters; exact on
// rationals, lands in SO(2n,2n-1) and in the triangular TP semigroup.
template <class T>
MatX<T> positive_semigroup_element(int n, const std::vector<T>& params,
                                   TriangularSide side = TriangularSide::Upper) {
    const auto word = so_longest_word(n);
    if (params.size() != word.size())
        throw std::invalid_argument("positive_semigroup_element: need (2n-1)^2 parameters");
    const int d = 4 * n - 1;
    MatX<T> M = identity<T>(d);
    for (size_t k = 0; k < word.size(); ++k) {
        if (!(params[k] > 0))
            throw std::invalid_argument("positive_semigroup_element: parameters must be positive");
        MatX<T> X = (side == TriangularSide::Upper) ? chevalley_generator<T>(word[k], n)
                                                    : chevalley_generator_lower<T>(word[k], n);
        M = (M * nilpotent_exp<T>(X, params[k])).eval();
    }
    return M;
}

template <class T>
std::vector<T> random_semigroup_params(int n, CounterRng& rng) {
    std::vector<T> ps;
    for (size_t k = 0; k < so_longest_word(n).size(); ++k) {
        if constexpr (is_exact_v<T>) ps.push_back(rng.positive_rat(3, 6));
        else ps.push_back(rng.uniform(0.1, 2.0));
    }
    return ps;
}

// ---------------------------------------------------------------------------
// Symmetric power of SL(2,R) on degree m = 4n-2 binary forms in the weight
// basis b_k = sqrt(binom(m,k)) x^{m-k} y^k. Action: (sigma(g) f)(v) = f(v g)
// on row vectors v = (x, y). The invariant form's Gram matrix is J exactly.

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

inline MatD sym_matrix(const SL2& g, int n) {
    const int m = 4 * n - 2;
    const int d = m + 1;
    const double a = g(0, 0), b = g(0, 1), c = g(1, 0), dd = g(1, 1);
    std::vector<double> ck(d);
    for (int k = 0; k < d; ++k) ck[k] = std::sqrt(binom(m, k));
    MatD M(d, d);
    for (int l = 0; l < d; ++l) {
        // expand (a x + c y)^(m-l) (b x + d y)^l; coefficient of x^(m-k) y^k
        std::vector<double> poly(d, 0.0);  // index = power of y
        {
            std::vector<double> p1(m - l + 1), p2(l + 1);
            for (int j = 0; j <= m - l; ++j)
                p1[j] = binom(m - l, j) * std::pow(a, m - l - j) * std::pow(c, j);
            for (int j = 0; j <= l; ++j)
                p2[j] = binom(l, j) * std::pow(b, l - j) * std::pow(dd, j);
            for (int j1 = 0; j1 <= m - l; ++j1)
                for (int j2 = 0; j2 <= l; ++j2) poly[j1 + j2] += p1[j1] * p2[j2];
        }
        for (int k = 0; k < d; ++k) M(k, l) = ck[l] * poly[k] / ck[k];
    }
    return M;
}

inline GroupElement<double> sym_representation(const SL2& g, int n,
                                               const ToleranceContext& tol = {}) {
    if (std::abs(g.determinant() - 1.0) > tol.eps_eq)
        throw std::invalid_argument("sym_representation: need det g = 1");
    return certify_so<double>(sym_matrix(g, n), JForm<double>::standard(n), tol);
}

// ---------------------------------------------------------------------------
// Veronese osculating flags. In the chart s the curve is nu(s)_k = c_k s^k;
// the flag basis at s has columns nu^(j-1)(s)/(j-1)!. The boundary point
// [p : q] (t = p/q) maps to the parameter s = -q/p; the reversed chart covers
// |p| < |q| via a quarter rotation. A global sign twist on odd rows makes
// the map equivariant for sym_matrix and counter-clockwise positive.

namespace detail {

inline MatD veronese_chart_basis(double s, int n) {
    const int m = 4 * n - 2, d = m + 1;
    MatD W = MatD::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        double ck = std::sqrt(binom(m, k));
        for (int j = 1; j <= k + 1 && j <= d; ++j)
            W(k, j - 1) = ck * binom(k, j - 1) * std::pow(s, k - j + 1);
    }
    return W;
}

inline MatD veronese_twist(int n) {
    const int d = 4 * n - 1;
    MatD S = MatD::Zero(d, d);
    for (int k = 0; k < d; ++k) S(k, k) = (k % 2 == 0) ? -1.0 : 1.0;  // -Sigma, det +1
    return S;
}

}  // namespace detail

inline FlagD veronese_flag(const CirclePoint& x, int n, const ToleranceContext& tol = {}) {
    MatD twist = detail::veronese_twist(n);
    if (std::abs(x.q) <= std::abs(x.p)) {
        double s = -x.q / x.p;
        return FlagD::from_basis(twist * detail::veronese_chart_basis(s, n), tol);
    }
    // far chart: x = r . x' with r the quarter rotation, x' = r^{-1} x
    SL2 r; r << 0.0, -1.0, 1.0, 0.0;
    CirclePoint xp(x.q, -x.p);
    double s = -xp.q / xp.p;
    return FlagD::from_basis(sym_matrix(r, n) * twist * detail::veronese_chart_basis(s, n), tol);
}

// ---------------------------------------------------------------------------
// Representations of the Schottky group and the boundary map.

struct Representation {
    int n = 1;
    int N = 0;
    std::vector<GroupElement<double>> img;      // generator images
    std::vector<GroupElement<double>> img_inv;  // exact-inverse images
    std::string provenance = "fuchsian-sym";

    int dim() const { return 4 * n - 1; }

    const MatD& letter_image(int letter) const {
        int i = std::abs(letter) - 1;
        if (i < 0 || i >= N) throw std::out_of_range("letter out of range");
        return letter > 0 ? img[i].M : img_inv[i].M;
    }

    MatD word_image(const Word& w) const {
        MatD M = MatD::Identity(dim(), dim());
        for (int l : w.ls) M = M * letter_image(l);
        return M;
    }
};

inline Representation build_representation(const SchottkyData& S, int n,
                                           const ToleranceContext& tol = {}) {
    auto rep_ok = verify_ping_pong(S);
    if (!rep_ok.ok)
        throw std::invalid_argument("build_representation: Schottky data fails ping-pong: " +
                                    rep_ok.violations.front());
    Representation rep;
    rep.n = n;
    rep.N = S.N;
    for (int i = 0; i < S.N; ++i) {
        rep.img.push_back(sym_representation(S.gens[i], n, tol));
        rep.img_inv.push_back(sym_representation(sl2_inverse(S.gens[i]), n, tol));
    }
    return rep;
}

// Boundary map: Veronese flags cached at the wall endpoints, equivariantly
// extended to translated arcs on demand (single-writer memo, shared reads).
class BoundaryMap {
public:
    BoundaryMap() = default;
    BoundaryMap(const Representation& rep, const SchottkyData& S, const ArcSystem& A,
                const ToleranceContext& tol = {})
        : rep_(&rep), S_(&S), A_(A), tol_(tol) {
        for (int i = 1; i <= S.N; ++i)
            for (bool plus : {false, true}) {
                WallRef w{i, plus};
                cache_base(w);
            }
    }

    const Representation& rep() const { return *rep_; }
    const SchottkyData& schottky() const { return *S_; }
    const ArcSystem& arcs() const { return A_; }
    const ToleranceContext& tol() const { return tol_; }

    FlagD flag(const CirclePoint& x) const { return veronese_flag(x, rep_->n, tol_); }

    // flags at the endpoints of a base wall (a^+ = ccw end, a^- = ccw start)
    const FlagD& wall_flag_plus(const WallRef& w) const { return base_.at(key(w)).plus; }
    const FlagD& wall_flag_minus(const WallRef& w) const { return base_.at(key(w)).minus; }

    // flags at the endpoints of a translated wall gamma . w
    std::pair<FlagD, FlagD> translated_wall_flags(const Word& gamma, const WallRef& w) const {
        if (gamma.empty()) return {wall_flag_plus(w), wall_flag_minus(w)};
        std::string k = gamma.str() + "|" + w.str();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(k);
            if (it != memo_.end()) return it->second;
        }
        MatD g = rep_->word_image(gamma);
        std::pair<FlagD, FlagD> val{FlagD::from_basis(g * wall_flag_plus(w).B, tol_),
                                    FlagD::from_basis(g * wall_flag_minus(w).B, tol_)};
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(k, val);
        return val;
    }

private:
    struct BasePair {
        FlagD plus, minus;
    };
    static std::string key(const WallRef& w) { return w.str(); }
    void cache_base(const WallRef& w) {
        BasePair bp;
        bp.plus = veronese_flag(A_.endpoint_plus(w), rep_->n, tol_);
        bp.minus = veronese_flag(A_.endpoint_minus(w), rep_->n, tol_);
        base_.emplace(key(w), std::move(bp));
    }

    const Representation* rep_ = nullptr;
    const SchottkyData* S_ = nullptr;
    ArcSystem A_;
    ToleranceContext tol_;
    std::map<std::string, BasePair> base_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::pair<FlagD, FlagD>> memo_;
};

inline BoundaryMap build_boundary_map(const Representation& rep, const SchottkyData& S,
                                      const ArcSystem& A, const ToleranceContext& tol = {}) {
    return BoundaryMap(rep, S, A, tol);
}

// Flag-level ping-pong: interval endpoint flags map exactly under the
// generators (images equal as canonical forms), and closures nest into
// opposite intervals via quadruple positivity.
struct FlagPingPongReport {
    bool ok = true;
    std::vector<std::string> checks;
    std::vector<std::string> violations;
    void record(bool pass, const std::string& label) {
        checks.push_back(label + (pass ? ": ok" : ": FAIL"));
        if (!pass) {
            ok = false;
            violations.push_back(label);
        }
    }
};

inline FlagPingPongReport verify_flag_ping_pong(const Representation& rep, const BoundaryMap& bmap,
                                                const ArcSystem& A) {
    FlagPingPongReport out;
    const auto& S = bmap.schottky();
    const auto tol = bmap.tol();
    // (2): rho(g_i) maps the I_i^- endpoint flags onto the I_i^+ endpoint
    // flags, reversing start and end.
    for (int i = 1; i <= S.N; ++i) {
        WallRef wm{i, false}, wp{i, true};
        const MatD& g = rep.letter_image(i);
        FlagD im_start = FlagD::from_basis(g * bmap.wall_flag_minus(wm).B, tol);
        FlagD im_end = FlagD::from_basis(g * bmap.wall_flag_plus(wm).B, tol);
        out.record(flags_equal(im_start, bmap.wall_flag_plus(wp), tol),
                   "g" + std::to_string(i) + "(start I-) = end I+");
        out.record(flags_equal(im_end, bmap.wall_flag_minus(wp), tol),
                   "g" + std::to_string(i) + "(end I-) = start I+");
    }
    // (1): for distinct intervals J1, J2: cl(J1) subset J2^opp, certified by
    // positivity of the quadruple (s2-flag-reversed ...) = (G2, F1, G1, F2).
    struct Named {
        WallRef w;
        FlagD s, e;
    };
    std::vector<Named> iv;
    for (int i = 1; i <= S.N; ++i)
        for (bool plus : {false, true}) {
            WallRef w{i, plus};
            iv.push_back({w, bmap.wall_flag_minus(w), bmap.wall_flag_plus(w)});
        }
    for (size_t a = 0; a < iv.size(); ++a)
        for (size_t b = 0; b < iv.size(); ++b) {
            if (a == b) continue;
            bool pass = is_positive_tuple<double>({iv[b].e, iv[a].s, iv[a].e, iv[b].s}, tol);
            out.record(pass, "cl(" + iv[a].w.str() + ") in opp(" + iv[b].w.str() + ")");
        }
    return out;
}

}  // namespace posaff
