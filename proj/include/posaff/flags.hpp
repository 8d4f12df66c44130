#pragma once

// Oriented flags in R^{4n-1}, the bilinear form J of signature (2n, 2n-1),
// oriented transversality, the partial cyclic order on flags (positivity of
// tuples), intervals, adapted J-bases, neutral vectors and functionals.

#include "posaff/linalg.hpp"

#include <limits>
#include <sstream>
#include <vector>

namespace posaff {

// The form J: antidiagonal with J(r, d+1-r) = (-1)^r in 1-based indexing.
template <class T>
struct JForm {
    int n = 1;
    int d = 3;
    MatX<T> J;

    static JForm standard(int n) {
        if (n < 1) throw std::invalid_argument("JForm: n >= 1 required");
        JForm out;
        out.n = n;
        out.d = 4 * n - 1;
        out.J = MatX<T>::Zero(out.d, out.d);
        for (int r = 1; r <= out.d; ++r)
            out.J(r - 1, out.d - r) = (r % 2 == 0) ? T(1) : T(-1);
        return out;
    }
};

using JFormR = JForm<Rat>;
using JFormD = JForm<double>;

// Canonical form of a flag basis under right multiplication by upper
// triangular matrices with positive diagonal: prior pivot rows are cleared,
// then the column is scaled positively. The exact backend pins the topmost
// nonzero entry to |1|; the float backend normalizes to unit Euclidean norm
// and pivots on the largest remaining entry, which is stable.
template <class T>
MatX<T> canonicalize_flag_basis(const MatX<T>& B, const ToleranceContext& tol = {}) {
    const int d = int(B.rows());
    if (B.cols() != d) throw std::invalid_argument("flag basis must be square");
    MatX<T> C = B;
    std::vector<int> pivots;
    for (int i = 0; i < d; ++i) {
        if constexpr (!is_exact_v<T>) {
            double before = std::max(1e-300, double(C.col(i).norm()));
            C.col(i) /= before;
        }
        for (size_t j = 0; j < pivots.size(); ++j) {
            T coef = C(pivots[j], i) / C(pivots[j], int(j));
            C.col(i) -= coef * C.col(int(j));
        }
        int p = -1;
        if constexpr (is_exact_v<T>) {
            for (int r = 0; r < d; ++r)
                if (C(r, i) != 0) { p = r; break; }
            if (p < 0) throw SingularMatrixError("flag basis is singular");
            T scale = C(p, i);
            if (scale < 0) scale = -scale;
            C.col(i) /= scale;
        } else {
            double nrm = double(C.col(i).norm());
            if (nrm <= 1e5 * std::numeric_limits<double>::epsilon())
                throw SingularMatrixError("flag basis is singular");
            C.col(i) /= nrm;
            double best = 0;
            for (int r = 0; r < d; ++r) {
                double a = std::abs(double(C(r, i)));
                if (a > best) { best = a; p = r; }
            }
        }
        pivots.push_back(p);
    }
    (void)tol;
    return C;
}

template <class T>
struct OrientedFlag {
    MatX<T> B;  // canonical-form basis; column i spans F^(i)/F^(i-1)

    OrientedFlag() = default;

    static OrientedFlag from_basis(const MatX<T>& basis, const ToleranceContext& tol = {}) {
        OrientedFlag f;
        f.B = canonicalize_flag_basis<T>(basis, tol);
        return f;
    }

    static OrientedFlag ascending(int d) { return from_basis(identity<T>(d)); }

    int dim() const { return int(B.rows()); }

    // first-line representative, positively oriented
    VecX<T> line() const { return B.col(0); }
};

using FlagR = OrientedFlag<Rat>;
using FlagD = OrientedFlag<double>;

template <class T>
bool flags_equal(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                 const ToleranceContext& tol = {}) {
    if (F.dim() != G.dim()) return false;
    if constexpr (is_exact_v<T>) return F.B == G.B;
    else return (F.B - G.B).cwiseAbs().maxCoeff() <= tol.eps_eq;
}

// Opposite basis (e_d, -e_{d-1}, e_{d-2}, ..., -e_2, e_1).
template <class T>
MatX<T> opposite_basis(const MatX<T>& E) {
    const int d = int(E.rows());
    MatX<T> Op(d, d);
    for (int k = 1; k <= d; ++k) {
        T s = (k % 2 == 1) ? T(1) : T(-1);
        Op.col(k - 1) = s * E.col(d - k);
    }
    return Op;
}

template <class T>
OrientedFlag<T> descending_flag(const MatX<T>& E, const ToleranceContext& tol = {}) {
    return OrientedFlag<T>::from_basis(opposite_basis<T>(E), tol);
}

namespace detail {

template <class T>
MatX<T> concat_cols(std::initializer_list<std::pair<const MatX<T>*, int>> parts) {
    int d = int(parts.begin()->first->rows());
    MatX<T> M(d, d);
    int at = 0;
    for (auto& [mp, k] : parts) {
        if (k > 0) M.block(0, at, d, k) = mp->leftCols(k);
        at += k;
    }
    if (at != d) throw std::logic_error("concat_cols: column count mismatch");
    return M;
}

}  // namespace detail

// Oriented transversality: det(F_{1..i} | G_{1..d-i}) has sign +1 for all i.
// Ambiguous float signs raise AmbiguousSignError naming the offending i.
template <class T>
bool is_oriented_transverse(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                            const ToleranceContext& tol = {}) {
    const int d = F.dim();
    if (G.dim() != d) throw std::invalid_argument("flag dimension mismatch");
    for (int i = 0; i <= d; ++i) {
        MatX<T> M = detail::concat_cols<T>({{&F.B, i}, {&G.B, d - i}});
        int s = det_sign<T>(M, tol);
        if (s < 0) return false;
        if (s == 0) {
            if constexpr (is_exact_v<T>) return false;
            std::ostringstream os;
            os << "oriented transversality: ambiguous determinant sign at i=" << i;
            throw AmbiguousSignError(os.str());
        }
    }
    return true;
}

// Positive triple: every concatenated determinant with i+j+k = d is positive.
template <class T>
bool is_positive_triple(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                        const OrientedFlag<T>& H, const ToleranceContext& tol = {}) {
    const int d = F.dim();
    if (G.dim() != d || H.dim() != d) throw std::invalid_argument("flag dimension mismatch");
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            int k = d - i - j;
            MatX<T> M = detail::concat_cols<T>({{&F.B, i}, {&G.B, j}, {&H.B, k}});
            int s = det_sign<T>(M, tol);
            if (s < 0) return false;
            if (s == 0) {
                if constexpr (is_exact_v<T>) return false;
                std::ostringstream os;
                os << "positive triple: ambiguous determinant sign at (i,j,k)=(" << i << "," << j
                   << "," << k << ")";
                throw AmbiguousSignError(os.str());
            }
        }
    return true;
}

template <class T>
bool is_positive_tuple(const std::vector<OrientedFlag<T>>& flags,
                       const ToleranceContext& tol = {}) {
    const int k = int(flags.size());
    if (k < 3) throw std::invalid_argument("is_positive_tuple: need at least 3 flags");
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c)
                if (!is_positive_triple<T>(flags[a], flags[b], flags[c], tol)) return false;
    return true;
}

// Interval membership: X in ((F,G)) iff (F, X, G) is positive.
// Endpoints must be oriented transverse.
template <class T>
bool in_interval(const OrientedFlag<T>& X, const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                 const ToleranceContext& tol = {}) {
    if (!is_oriented_transverse<T>(F, G, tol))
        throw NonTransverseError("in_interval: endpoints are not oriented transverse");
    return is_positive_triple<T>(F, X, G, tol);
}

// Positive quadruple certificate; certifies cl(((G,H))) subset ((F,K)).
template <class T>
bool closure_nested(const OrientedFlag<T>& F, const OrientedFlag<T>& G, const OrientedFlag<T>& H,
                    const OrientedFlag<T>& K, const ToleranceContext& tol = {}) {
    return is_positive_tuple<T>({F, G, H, K}, tol);
}

// Isotropy per the flag compatibility conditions with J: vanishing Gram
// blocks F^(i) . F^(d-i) = 0, standard top orientation, and the alternating
// sign condition on the quotient pairings.
template <class T>
bool is_isotropic_flag(const OrientedFlag<T>& F, const JForm<T>& Jf,
                       const ToleranceContext& tol = {}) {
    const int d = F.dim();
    if (d != Jf.d) throw std::invalid_argument("is_isotropic_flag: dimension mismatch");
    if (det_sign<T>(F.B, tol) != 1) return false;
    MatX<T> G = F.B.transpose() * Jf.J * F.B;  // Gram matrix of the basis
    const double scale = inf_norm(G);
    // Gram blocks: rows 1..i against columns 1..d-i must vanish
    for (int i = 1; i <= d - 1; ++i)
        for (int a = 0; a < i; ++a)
            for (int b = 0; b < d - i; ++b)
                if (a + b < d - 1 && sign_of<T>(G(a, b), tol, scale) != 0) return false;
    // sign condition: (-1)^(i+1) f_{d-i} . f_{i+1} > 0 for i = 0..d-1
    for (int i = 0; i <= d - 1; ++i) {
        T prod = G(d - i - 1, i);
        int want = (i % 2 == 0) ? -1 : 1;  // sign of the product itself
        if (sign_of<T>(prod, tol, scale) != want) return false;
    }
    return true;
}

// Basis adapted to an oriented transverse pair: e_i spans F^(i) /\ G^(d+1-i),
// positively oriented in F's quotients; validates that the opposite basis
// realizes G's orientations (fails with NonTransverseError otherwise).
template <class T>
MatX<T> adapted_basis(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                      const ToleranceContext& tol = {}) {
    const int d = F.dim();
    if (G.dim() != d) throw std::invalid_argument("adapted_basis: dimension mismatch");
    MatX<T> E(d, d);
    for (int i = 1; i <= d; ++i) {
        const int gcols = d + 1 - i;
        MatX<T> M(d, i + gcols);
        M.block(0, 0, d, i) = F.B.leftCols(i);
        M.block(0, i, d, gcols) = -G.B.leftCols(gcols);
        Eigen::FullPivLU<MatX<T>> lu(M);
        if constexpr (!is_exact_v<T>) lu.setThreshold(tol.eps_sign);
        if (lu.dimensionOfKernel() != 1)
            throw NonTransverseError("adapted_basis: intersection line is not 1-dimensional");
        MatX<T> K = lu.kernel();
        VecX<T> x = K.col(0).head(i);      // coordinates in F's columns
        VecX<T> y = K.col(0).tail(gcols);  // coordinates in G's columns
        double kscale = 1.0;
        if constexpr (!is_exact_v<T>) kscale = std::max(1.0, double(K.col(0).cwiseAbs().maxCoeff()));
        int sx = sign_of<T>(x(i - 1), tol, kscale);
        if (sx == 0) throw NonTransverseError("adapted_basis: degenerate F-quotient coefficient");
        if (sx < 0) { x = -x; y = -y; }
        // G-side orientation: the coefficient in G's top quotient at level
        // d+1-i must carry the opposite-basis sign (-1)^(i+1).
        int sy = sign_of<T>(y(gcols - 1), tol, kscale);
        int want = (i % 2 == 1) ? 1 : -1;
        if (sy != want)
            throw NonTransverseError("adapted_basis: pair is not oriented transverse (G-side sign)");
        E.col(i - 1) = F.B.leftCols(i) * x;
    }
    return E;
}

// Adapted J-basis for an oriented transverse pair of isotropic flags:
// rescales the adapted basis so that E^T J E = J exactly. Pairs are scaled
// asymmetrically (rational-friendly); the middle vector takes a square root.
template <class T>
struct JBasisPair {
    MatX<T> E;
    OrientedFlag<T> ascending;   // F_E
    OrientedFlag<T> descending;  // F_{E-hat}
};

template <class T>
JBasisPair<T> adapted_J_basis(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                              const JForm<T>& Jf, const ToleranceContext& tol = {}) {
    const int d = Jf.d;
    MatX<T> E = adapted_basis<T>(F, G, tol);
    MatX<T> Gram = E.transpose() * Jf.J * E;
    const double scale = std::max(1.0, inf_norm(Gram));
    const int mid = (d + 1) / 2;  // 2n, 1-based
    for (int i = 1; i <= d; ++i) {
        int j = d + 1 - i;
        T m = Gram(i - 1, j - 1);
        T target = (i % 2 == 0) ? T(1) : T(-1);
        if (i < j) {
            if (sign_of<T>(m, tol, scale) != sign_of<T>(target, tol))
                throw NotIsotropicError("adapted_J_basis: rescaling infeasible (pairing sign)");
            E.col(i - 1) *= target / m;
        } else if (i == j) {
            if (sign_of<T>(m, tol, scale) <= 0)
                throw NotIsotropicError("adapted_J_basis: middle vector is not spacelike");
            E.col(i - 1) /= scalar_sqrt(m);
        }
    }
    if constexpr (is_exact_v<T>) {
        if (E.transpose() * Jf.J * E != Jf.J)
            throw NotIsotropicError("adapted_J_basis: exact J-normalization failed");
    }
    JBasisPair<T> out;
    out.E = E;
    out.ascending = OrientedFlag<T>::from_basis(E, tol);
    out.descending = descending_flag<T>(E, tol);
    return out;
}

// Positively oriented unit spacelike vector spanning X^(2n) /\ Y^(2n),
// oriented by X's middle quotient. X need not be isotropic.
template <class T>
VecX<T> middle_unit_vector(const OrientedFlag<T>& X, const OrientedFlag<T>& Y,
                           const JForm<T>& Jf, const ToleranceContext& tol = {}) {
    const int d = Jf.d;
    const int mid = 2 * Jf.n;  // 1-based level of the middle quotient
    MatX<T> M(d, 2 * mid);
    M.block(0, 0, d, mid) = X.B.leftCols(mid);
    M.block(0, mid, d, mid) = -Y.B.leftCols(mid);
    Eigen::FullPivLU<MatX<T>> lu(M);
    if constexpr (!is_exact_v<T>) lu.setThreshold(tol.eps_sign);
    if (lu.dimensionOfKernel() != 1)
        throw NonTransverseError("middle vector: intersection is not a line");
    MatX<T> K = lu.kernel();
    VecX<T> x = K.col(0).head(mid);
    double kscale = 1.0;
    if constexpr (!is_exact_v<T>) kscale = std::max(1.0, double(K.col(0).cwiseAbs().maxCoeff()));
    int sx = sign_of<T>(x(mid - 1), tol, kscale);
    if (sx == 0) throw NonTransverseError("middle vector: degenerate quotient coefficient");
    if (sx < 0) x = -x;
    VecX<T> v = X.B.leftCols(mid) * x;
    T q = v.dot(Jf.J * v);
    if (sign_of<T>(q, tol) <= 0)
        throw NotIsotropicError("middle vector is not spacelike");
    return v / scalar_sqrt(q);
}

// Neutral vector of a transverse isotropic pair: the middle column of the
// adapted J-basis, i.e. the unit spacelike middle vector.
template <class T>
VecX<T> neutral_vector(const OrientedFlag<T>& F, const OrientedFlag<T>& G, const JForm<T>& Jf,
                       const ToleranceContext& tol = {}) {
    return middle_unit_vector<T>(F, G, Jf, tol);
}

// Coefficient of x^0(X,Y) in the decomposition v = x + c x^0 + y with
// x in X^(2n-1), y in Y^(2n-1). Y must be isotropic, X transverse to Y.
template <class T>
T neutral_functional(const OrientedFlag<T>& X, const OrientedFlag<T>& Y, const VecX<T>& v,
                     const JForm<T>& Jf, const ToleranceContext& tol = {}) {
    const int d = Jf.d;
    const int half = 2 * Jf.n - 1;
    VecX<T> x0 = middle_unit_vector<T>(X, Y, Jf, tol);
    MatX<T> B(d, d);
    B.block(0, 0, d, half) = X.B.leftCols(half);
    B.col(half) = x0;
    B.block(0, half + 1, d, half) = Y.B.leftCols(half);
    VecX<T> c = solve<T>(B, v);
    return c(half);
}

// Random unipotent lower-triangular totally positive matrix: product of
// elementary exponentials (I + t E_{i+1,i}) with positive parameters along
// the reduced word (s_1)(s_2 s_1)...(s_{d-1} ... s_1).
template <class T>
MatX<T> random_unipotent_lower_tp(int d, CounterRng& rng) {
    MatX<T> U = identity<T>(d);
    for (int k = 1; k < d; ++k)
        for (int i = k; i >= 1; --i) {
            MatX<T> e = identity<T>(d);
            if constexpr (is_exact_v<T>) e(i, i - 1) = rng.positive_rat();
            else e(i, i - 1) = rng.uniform(0.05, 2.0);
            U = U * e;
        }
    return U;
}

template <class T>
MatX<T> random_unipotent_upper_tp(int d, CounterRng& rng) {
    return random_unipotent_lower_tp<T>(d, rng).transpose().eval();
}

// Random flag in the interval ((F,G)): span the adapted basis against a
// random unipotent lower TP matrix. Deterministic in the seed.
template <class T>
OrientedFlag<T> random_flag_in_interval(const OrientedFlag<T>& F, const OrientedFlag<T>& G,
                                        std::uint64_t seed, const ToleranceContext& tol = {}) {
    MatX<T> E = adapted_basis<T>(F, G, tol);
    CounterRng rng(seed);
    MatX<T> U = random_unipotent_lower_tp<T>(F.dim(), rng);
    return OrientedFlag<T>::from_basis(E * U, tol);
}

}  // namespace posaff
