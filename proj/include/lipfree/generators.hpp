// Random spaces, functions, and molecules for the verification suites and
// property tests.
//
// Random metrics are built on a dyadic integer lattice: edge weights are
// integers, the triangle inequality is enforced by an integer shortest-path
// closure, and the result is scaled by a power of two. Every distance is
// then exact in binary64 and identical in the rational instantiation, and
// validate() accepts the space with zero slack.
#pragma once

#include <vector>

#include "lipfree/lip_function.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/rng.hpp"

namespace lipfree {

/// Uniform value, snapped to multiples of 2^-10 in the exact instantiation so
/// rational arithmetic stays small.
template <class R>
R random_value(Rng& rng, double lo, double hi) {
    double v = rng.uniform(lo, hi);
    if constexpr (num_traits<R>::exact) {
        v = std::nearbyint(v * 1024.0) / 1024.0;
        if (v < lo) v = lo;
        if (v > hi) v = hi;
    }
    return num_traits<R>::from_double(v);
}

template <class R>
BasicMetricSpace<R> random_space(Rng& rng, int n, bool pointed) {
    // Integer weights in [13, 128] (about 0.2 .. 2.0 after scaling by 2^-6).
    std::vector<std::vector<long>> w(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.range(13, 128);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (w[i][k] + w[k][j] < w[i][j]) w[i][j] = w[i][k] + w[k][j];

    const double scale = std::ldexp(1.0, static_cast<int>(rng.range(-8, -4)));  // 2^-8 .. 2^-4
    typename BasicMetricSpace<R>::Matrix m(n, std::vector<R>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = num_traits<R>::from_double(static_cast<double>(w[i][j]) * scale);

    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    std::optional<int> base;
    if (pointed) base = static_cast<int>(rng.below(n));
    return BasicMetricSpace<R>::make(std::move(labels), std::move(m), base);
}

template <class R>
BasicLipFunction<R> random_function(Rng& rng, const SpacePtr<R>& space, double lo, double hi) {
    std::vector<R> v(space->size());
    for (auto& x : v) x = random_value<R>(rng, lo, hi);
    return BasicLipFunction<R>(space, std::move(v));
}

/// Random f with f(e) = 0 and L(f) <= 1 (up to roundoff): sample, then
/// rescale by 1 / max(1, L(f)).
template <class R>
BasicLipFunction<R> random_lip0_unit_ball(Rng& rng, const SpacePtr<R>& space) {
    std::vector<R> v(space->size());
    for (auto& x : v) x = random_value<R>(rng, -1.0, 1.0);
    v[space->base_index()] = R(0);
    BasicLipFunction<R> f(space, std::move(v));
    const R L = lipschitz_number(f);
    if (L <= 1) return f;
    std::vector<R> w = f.values();
    for (auto& x : w) x = x / L;
    return f.with_values(std::move(w));
}

/// Random f >= 0 with max(L(f), sup|f|) <= 1 (up to roundoff).
template <class R>
BasicLipFunction<R> random_positive_unit_ball(Rng& rng, const SpacePtr<R>& space) {
    std::vector<R> v(space->size());
    for (auto& x : v) x = random_value<R>(rng, 0.0, 1.0);
    BasicLipFunction<R> f(space, std::move(v));
    const R norm = lip_norm(f);
    if (norm <= 1) return f;
    std::vector<R> w = f.values();
    for (auto& x : w) x = x / norm;
    return f.with_values(std::move(w));
}

/// Random molecule supported on up to max_support non-base points.
template <class R>
BasicMolecule<R> random_molecule(Rng& rng, const SpacePtr<R>& space, int max_support) {
    std::vector<R> c(space->size(), R(0));
    const int e = space->base_index();
    const int avail = space->size() - 1;
    const int k = static_cast<int>(rng.range(1, std::max(1, std::min(max_support, avail))));
    for (int t = 0; t < k; ++t) {
        int p = static_cast<int>(rng.below(space->size()));
        if (p == e) p = (p + 1) % space->size();
        c[p] = c[p] + random_value<R>(rng, -2.0, 2.0);
    }
    return BasicMolecule<R>(space, std::move(c));
}

}  // namespace lipfree
