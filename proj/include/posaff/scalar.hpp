#pragma once

// Scalar backends: exact rationals (GMP via Boost.Multiprecision) and
// binary64 floats whose sign decisions consult a ToleranceContext.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace posaff {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

template <class T>
inline constexpr bool is_exact_v = !std::is_floating_point_v<T>;

struct ToleranceContext {
    double eps_sign = 1e-9;   // below this (scaled), a float counts as zero
    double eps_eq   = 1e-8;   // equality of derived quantities

    ToleranceContext() = default;
    ToleranceContext(double s, double e) : eps_sign(s), eps_eq(e) {
        if (!(eps_sign > 0) || !(eps_eq >= eps_sign))
            throw std::invalid_argument("ToleranceContext: need 0 < eps_sign <= eps_eq");
    }
    ToleranceContext tightened(double factor) const {
        return ToleranceContext(eps_sign * factor, eps_eq * factor);
    }
};

struct AmbiguousSignError : std::runtime_error {
    explicit AmbiguousSignError(const std::string& what) : std::runtime_error(what) {}
};
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};
struct NonTransverseError : std::runtime_error {
    explicit NonTransverseError(const std::string& what) : std::runtime_error(what) {}
};
struct NotIsotropicError : std::runtime_error {
    explicit NotIsotropicError(const std::string& what) : std::runtime_error(what) {}
};
struct NonRegularError : std::runtime_error {
    explicit NonRegularError(const std::string& what) : std::runtime_error(what) {}
};

// Sign of a scalar. Floats treat |x| <= eps_sign * max(1, scale) as zero.
template <class T>
int sign_of(const T& x, const ToleranceContext& tol = {}, double scale = 1.0) {
    if constexpr (is_exact_v<T>) {
        (void)tol; (void)scale;
        if (x > 0) return 1;
        if (x < 0) return -1;
        return 0;
    } else {
        double band = tol.eps_sign * std::max(1.0, scale);
        if (x > band) return 1;
        if (x < -band) return -1;
        return 0;
    }
}

template <class T>
bool scalar_eq(const T& a, const T& b, const ToleranceContext& tol = {}, double scale = 1.0) {
    if constexpr (is_exact_v<T>) {
        (void)tol; (void)scale;
        return a == b;
    } else {
        return std::abs(a - b) <= tol.eps_eq * std::max(1.0, scale);
    }
}

inline double to_double(double x) { return x; }
inline double to_double(const Rat& x) { return x.convert_to<double>(); }

template <class T> T scalar_from_int(long v) { return T(v); }

// Exact square root of a rational when it is a perfect square; floats use sqrt.
inline double scalar_sqrt(double x) {
    if (x < 0) throw std::domain_error("scalar_sqrt: negative");
    return std::sqrt(x);
}
inline Rat scalar_sqrt(const Rat& x) {
    if (x < 0) throw std::domain_error("scalar_sqrt: negative");
    Int num = numerator(x), den = denominator(x);
    Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den)
        throw std::domain_error("scalar_sqrt: not a perfect rational square (use the float backend)");
    return Rat(sn, sd);
}

inline std::string rat_to_string(const Rat& x) { return x.str(); }
inline Rat rat_from_string(const std::string& s) { return Rat(s); }

// ---------------------------------------------------------------------------
// Counter-based splittable RNG. Streams are keyed, so parallel per-item
// substreams reproduce independently of evaluation order.

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace rng

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(rng::splitmix64(seed ^ (0xa076'1d64'78bd'642fULL * (stream + 1)))), ctr_(0) {}

    CounterRng split(std::uint64_t stream) const {
        CounterRng r(key_, stream * 0x9e3779b97f4a7c15ULL + 0x632b'e59b'd9b4'e019ULL);
        return r;
    }

    std::uint64_t next_u64() { return rng::splitmix64(key_ + 0x9e3779b97f4a7c15ULL * (++ctr_)); }

    // uniform in [0,1)
    double u01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    // standard normal (Box-Muller on our own uniforms, for cross-run determinism)
    double normal() {
        double u1 = std::max(u01(), 0x1.0p-60), u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    long uniform_int(long lo, long hi) {  // inclusive bounds
        return lo + long(next_u64() % std::uint64_t(hi - lo + 1));
    }

    // small random rational in [-range, range] with denominator <= maxden
    Rat rat(long range = 4, long maxden = 8) {
        long den = uniform_int(1, maxden);
        long num = uniform_int(-range * den, range * den);
        return Rat(num, den);
    }
    Rat positive_rat(long range = 4, long maxden = 8) {
        long den = uniform_int(1, maxden);
        long num = uniform_int(1, range * den);
        return Rat(num, den);
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace posaff
