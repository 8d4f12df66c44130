#pragma once

// Dense matrices over both scalar backends: minors, determinant signs,
// total-positivity tests, linear solves and real eigendecompositions.

#include "posaff/scalar.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace posaff {

template <class T> using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T> using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatR = MatX<Rat>;
using VecR = VecX<Rat>;
using MatD = Eigen::MatrixXd;
using VecD = Eigen::VectorXd;

template <class T>
MatX<T> identity(int d) { return MatX<T>::Identity(d, d); }

template <class T>
T det(const MatX<T>& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("det: matrix not square");
    if (M.rows() == 1) return M(0, 0);
    if (M.rows() == 2) return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    Eigen::FullPivLU<MatX<T>> lu(M);
    return lu.determinant();
}

inline double inf_norm(const MatD& M) { return M.cwiseAbs().maxCoeff(); }
inline double inf_norm(const MatR& M) {
    Rat m = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) m = std::max(m, Rat(abs(M(i, j))));
    return to_double(m);
}

// Sign of det(M) under the tolerance context. Float zero band is
// eps_sign * max(1, ||M||_inf); the exact backend is never ambiguous.
template <class T>
int det_sign(const MatX<T>& M, const ToleranceContext& tol = {}) {
    T d = det<T>(M);
    return sign_of<T>(d, tol, inf_norm(M));
}

// Minor on 0-based strictly increasing index sets.
template <class T>
T minor_det(const MatX<T>& M, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.empty() || rows.size() != cols.size())
        throw std::invalid_argument("minor: need equal, nonempty index sets");
    auto check = [&](const std::vector<int>& ix, Eigen::Index bound) {
        for (size_t k = 0; k < ix.size(); ++k) {
            if (ix[k] < 0 || ix[k] >= bound) throw std::out_of_range("minor: index out of bounds");
            if (k > 0 && ix[k] <= ix[k - 1])
                throw std::invalid_argument("minor: indices must be strictly increasing");
        }
    };
    check(rows, M.rows());
    check(cols, M.cols());
    const int k = int(rows.size());
    MatX<T> S(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) S(i, j) = M(rows[i], cols[j]);
    return det<T>(S);
}

namespace detail {

inline std::vector<int> window(int from, int len) {
    std::vector<int> w(len);
    for (int i = 0; i < len; ++i) w[i] = from + i;
    return w;
}

// enumerate all strictly increasing k-subsets of {0..d-1}
inline void for_each_subset(int d, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> ix(k);
    for (int i = 0; i < k; ++i) ix[i] = i;
    while (true) {
        f(ix);
        int i = k - 1;
        while (i >= 0 && ix[i] == d - k + i) --i;
        if (i < 0) break;
        ++ix[i];
        for (int j = i + 1; j < k; ++j) ix[j] = ix[j - 1] + 1;
    }
}

}  // namespace detail

// Gasca–Peña style test: a square matrix is totally positive iff all its
// initial minors (contiguous windows anchored at the first row or first
// column) are strictly positive. The all-minors brute force is kept as a
// small-d oracle in the tests.
template <class T>
bool is_totally_positive(const MatX<T>& M, const ToleranceContext& tol = {}) {
    if (M.rows() != M.cols()) throw std::invalid_argument("is_totally_positive: not square");
    const int d = int(M.rows());
    const double scale = inf_norm(M);
    for (int k = 1; k <= d; ++k) {
        auto lead = detail::window(0, k);
        for (int a = 0; a + k <= d; ++a) {
            if (sign_of<T>(minor_det<T>(M, detail::window(a, k), lead), tol, scale) <= 0) return false;
            if (a > 0 && sign_of<T>(minor_det<T>(M, lead, detail::window(a, k)), tol, scale) <= 0) return false;
        }
    }
    return true;
}

// Brute force over all minors; exponential, test oracle only.
template <class T>
bool is_totally_positive_bruteforce(const MatX<T>& M, const ToleranceContext& tol = {}) {
    const int d = int(M.rows());
    const double scale = inf_norm(M);
    bool ok = true;
    for (int k = 1; k <= d && ok; ++k) {
        std::vector<std::vector<int>> subs;
        detail::for_each_subset(d, k, [&](const std::vector<int>& s) { subs.push_back(s); });
        for (const auto& r : subs) {
            for (const auto& c : subs)
                if (sign_of<T>(minor_det<T>(M, r, c), tol, scale) <= 0) { ok = false; break; }
            if (!ok) break;
        }
    }
    return ok;
}

enum class TriangularSide { Lower, Upper };

template <class T>
bool is_triangular(const MatX<T>& M, TriangularSide side, const ToleranceContext& tol = {}) {
    const double scale = inf_norm(M);
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            bool structural_zero = (side == TriangularSide::Lower) ? (i < j) : (i > j);
            if (structural_zero && sign_of<T>(M(i, j), tol, scale) != 0) return false;
        }
    return true;
}

// A minor of a triangular matrix is structurally zero iff some selected row
// sits strictly on the wrong side of its column (both sets sorted).
inline bool triangular_minor_structural_zero(const std::vector<int>& rows,
                                             const std::vector<int>& cols, TriangularSide side) {
    for (size_t j = 0; j < rows.size(); ++j) {
        if (side == TriangularSide::Lower && rows[j] < cols[j]) return true;
        if (side == TriangularSide::Upper && rows[j] > cols[j]) return true;
    }
    return false;
}

namespace detail {

// A minor vanishes structurally (relative to the zero pattern of M) iff its
// permanent support admits no perfect matching; exempt minors are forced to
// equal zero, so the exemption never hides a nonzero value.
inline bool minor_forced_zero(const std::vector<std::vector<bool>>& support,
                              const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = int(rows.size());
    std::vector<int> match(k, -1);  // col slot -> row slot
    std::function<bool(int, std::vector<bool>&)> augment = [&](int r, std::vector<bool>& seen) {
        for (int c = 0; c < k; ++c) {
            if (seen[c] || !support[rows[r]][cols[c]]) continue;
            seen[c] = true;
            if (match[c] < 0 || augment(match[c], seen)) {
                match[c] = r;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < k; ++r) {
        std::vector<bool> seen(k, false);
        if (!augment(r, seen)) return true;
    }
    return false;
}

}  // namespace detail

// Triangular total positivity: every minor that is not forced to vanish by
// the triangular zero pattern is strictly positive. Full sweep; d <= 7.
template <class T>
bool is_triangular_totally_positive(const MatX<T>& M, TriangularSide side,
                                    const ToleranceContext& tol = {}) {
    if (M.rows() != M.cols()) throw std::invalid_argument("triangular TP: not square");
    if (!is_triangular<T>(M, side, tol))
        throw std::invalid_argument("triangular TP: matrix is not triangular of the declared side");
    const int d = int(M.rows());
    const double scale = inf_norm(M);
    std::vector<std::vector<bool>> support(d, std::vector<bool>(d, false));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) support[i][j] = sign_of<T>(M(i, j), tol, scale) != 0;
    for (int k = 1; k <= d; ++k) {
        std::vector<std::vector<int>> subs;
        detail::for_each_subset(d, k, [&](const std::vector<int>& s) { subs.push_back(s); });
        for (const auto& r : subs)
            for (const auto& c : subs) {
                if (triangular_minor_structural_zero(r, c, side)) continue;
                if (detail::minor_forced_zero(support, r, c)) continue;
                if (sign_of<T>(minor_det<T>(M, r, c), tol, scale) <= 0) return false;
            }
    }
    return true;
}

template <class T>
VecX<T> solve(const MatX<T>& M, const VecX<T>& b) {
    Eigen::FullPivLU<MatX<T>> lu(M);
    if constexpr (is_exact_v<T>) {
        if (lu.rank() < M.rows()) throw SingularMatrixError("solve: singular matrix");
    } else {
        if (!lu.isInvertible()) throw SingularMatrixError("solve: singular matrix");
    }
    return lu.solve(b);
}

template <class T>
MatX<T> inverse(const MatX<T>& M) {
    Eigen::FullPivLU<MatX<T>> lu(M);
    if constexpr (is_exact_v<T>) {
        if (lu.rank() < M.rows()) throw SingularMatrixError("inverse: singular matrix");
    } else {
        if (!lu.isInvertible()) throw SingularMatrixError("inverse: singular matrix");
    }
    return lu.inverse();
}

// Real eigendecomposition (float backend). Eigenpairs sorted by decreasing
// |eigenvalue|; reports whether the spectrum is simple and fully real.
struct EigenReal {
    std::vector<double> values;          // sorted by decreasing |value|
    std::vector<VecD> vectors;           // unit Euclidean norm
    bool fully_real = false;
    bool simple = false;
    double max_imag = 0.0;
};

inline EigenReal eigen_real(const MatD& M, const ToleranceContext& tol = {}) {
    Eigen::EigenSolver<MatD> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen_real: did not converge");
    const int d = int(M.rows());
    EigenReal out;
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    out.max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    out.fully_real = out.max_imag <= tol.eps_eq * scale;

    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    for (int i : order) {
        out.values.push_back(es.eigenvalues()(i).real());
        Eigen::VectorXcd vc = es.eigenvectors().col(i);
        VecD re = vc.real(), im = vc.imag();
        VecD v = (re.norm() >= im.norm()) ? re : im;
        if (v.norm() > 0) v.normalize();
        out.vectors.push_back(v);
    }
    out.simple = true;
    for (int i = 0; i + 1 < d; ++i)
        if (std::abs(out.values[i] - out.values[i + 1]) <= tol.eps_eq * scale &&
            std::abs(std::abs(out.values[i]) - std::abs(out.values[i + 1])) <= tol.eps_eq * scale)
            out.simple = false;
    return out;
}

template <class T>
MatX<T> random_matrix(int d, CounterRng& rng) {
    MatX<T> M(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if constexpr (is_exact_v<T>) M(i, j) = rng.rat();
            else M(i, j) = rng.uniform(-2.0, 2.0);
        }
    return M;
}

inline MatD to_float(const MatR& M) {
    MatD F(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) F(i, j) = to_double(M(i, j));
    return F;
}
inline VecD to_float(const VecR& v) {
    VecD f(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) f(i) = to_double(v(i));
    return f;
}

}  // namespace posaff
