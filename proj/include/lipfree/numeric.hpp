// Scalar abstraction: the whole library runs on either binary64 or exact
// rationals. Identity-level checks use the rational instantiation, where
// every comparison is exact and residuals are required to be zero.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lipfree {

using Rational = boost::multiprecision::cpp_rational;

template <class R>
struct num_traits;

template <>
struct num_traits<double> {
    static constexpr bool exact = false;
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static const char* name() { return "binary64"; }
};

template <>
struct num_traits<Rational> {
    static constexpr bool exact = true;
    // Every finite binary64 is a dyadic rational; the conversion is exact.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational image");
        return Rational(x);
    }
    static double to_double(const Rational& x) { return x.template convert_to<double>(); }
    static const char* name() { return "rational"; }
};

template <class R>
inline R num_abs(const R& x) {
    using std::abs;
    return abs(x);
}

template <class R>
inline bool num_finite(const R&) { return true; }
inline bool num_finite(double x) { return std::isfinite(x); }

/// Shared comparison policy. One knob for the whole project; the exact
/// instantiation ignores it and compares bitwise.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;
    double duality_rel = 1e-7;  // primal/dual agreement; two solvers accumulate error

    bool close(double a, double b) const {
        const double diff = std::fabs(a - b);
        return diff <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
    }
    bool is_zero(double x) const { return std::fabs(x) <= abs; }
};

template <class R>
inline bool tol_close(const R& a, const R& b, const Tolerance& t) {
    if constexpr (num_traits<R>::exact)
        return a == b;
    else
        return t.close(a, b);
}

template <class R>
inline bool tol_zero(const R& x, const Tolerance& t) {
    if constexpr (num_traits<R>::exact)
        return x == 0;
    else
        return t.is_zero(x);
}

/// Residuals are reported as binary64 regardless of the working scalar.
template <class R>
inline double residual_of(const R& a, const R& b) {
    return num_traits<R>::to_double(num_abs<R>(a - b));
}

// Pivot/entering thresholds for the solvers: zero in exact mode.
template <class R>
inline R solver_eps() {
    if constexpr (num_traits<R>::exact)
        return R(0);
    else
        return R(1e-11);
}

}  // namespace lipfree
