// Molecules: finitely supported elements of the free space over a pointed
// metric space, the duality pairing with Lipschitz functions, and the
// alternating dyadic example family used throughout the verification suites.
#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/lip_function.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree {

template <class R>
class BasicMolecule {
public:
    BasicMolecule(SpacePtr<R> space, std::vector<R> coeffs)
        : space_(std::move(space)), coeffs_(std::move(coeffs)) {
        if (!space_) throw InvalidInput("molecule needs a space");
        if (!space_->pointed()) throw InvalidInput("molecule needs a pointed space");
        if (static_cast<int>(coeffs_.size()) != space_->size())
            throw InvalidInput("molecule has wrong number of coefficients for its space");
        for (const R& c : coeffs_)
            if (!num_finite(c)) throw InvalidInput("molecule coefficient is not finite");
    }

    static BasicMolecule zero(SpacePtr<R> space) {
        const int n = space->size();
        return BasicMolecule(std::move(space), std::vector<R>(n, R(0)));
    }

    const SpacePtr<R>& space() const { return space_; }
    const std::vector<R>& coeffs() const { return coeffs_; }
    const R& operator()(int i) const { return coeffs_.at(i); }
    int size() const { return static_cast<int>(coeffs_.size()); }

    BasicMolecule with_coeffs(std::vector<R> c) const { return BasicMolecule(space_, std::move(c)); }

private:
    SpacePtr<R> space_;
    std::vector<R> coeffs_;
};

using Molecule = BasicMolecule<double>;

/// delta_p as a molecule.
template <class R>
BasicMolecule<R> point_mass(SpacePtr<R> space, int p) {
    std::vector<R> c(space->size(), R(0));
    c.at(p) = R(1);
    return BasicMolecule<R>(std::move(space), std::move(c));
}

/// delta_p - delta_q.
template <class R>
BasicMolecule<R> point_difference(SpacePtr<R> space, int p, int q) {
    std::vector<R> c(space->size(), R(0));
    c.at(p) = R(1);
    c.at(q) = c.at(q) - R(1);
    return BasicMolecule<R>(std::move(space), std::move(c));
}

/// Zero the base-point coefficient. delta_e is the zero functional, so the
/// pairing with every Lip0 function is unchanged.
template <class R>
BasicMolecule<R> canonicalize(const BasicMolecule<R>& m) {
    std::vector<R> c = m.coeffs();
    c[m.space()->base_index()] = R(0);
    return m.with_coeffs(std::move(c));
}

template <class R>
bool is_canonical(const BasicMolecule<R>& m) {
    return m(m.space()->base_index()) == 0;
}

/// <m, f> = sum of coeffs(p) * f(p).
template <class R>
R pairing(const BasicMolecule<R>& m, const BasicLipFunction<R>& f) {
    if (!same_space(m.space(), f.space())) throw InvalidInput("pairing: molecule and function live on different spaces");
    R s(0);
    for (int i = 0; i < m.size(); ++i) s += m(i) * f(i);
    return s;
}

/// Coefficientwise positive/negative parts: the minimal nonnegative
/// decomposition m = m+ - m-. Any other nonnegative decomposition dominates
/// both parts coefficientwise.
template <class R>
std::pair<BasicMolecule<R>, BasicMolecule<R>> minimal_positive_decomposition(const BasicMolecule<R>& m) {
    const auto canon = canonicalize(m);
    std::vector<R> pos(canon.size()), neg(canon.size());
    for (int i = 0; i < canon.size(); ++i) {
        pos[i] = canon(i) > 0 ? canon(i) : R(0);
        neg[i] = canon(i) < 0 ? -canon(i) : R(0);
    }
    return {canon.with_coeffs(std::move(pos)), canon.with_coeffs(std::move(neg))};
}

template <class R>
struct ExampleMolecule {
    SpacePtr<R> space;
    BasicMolecule<R> molecule;
    std::vector<int> positive_points;  // indices of 2^-2k, k = 0..N
    std::vector<int> negative_points;  // indices of 2^-2k-1, k = 0..N
    int zero_index = -1;               // the point 0
};

/// The alternating dyadic molecule on the augmented unit interval: carrier
/// {e} u {0} u {2^-k : k = 0..2N+1} with |x-y| inside the interval and the
/// base point one unit from everything, m = sum over k<=N of
/// (delta_{2^-2k} - delta_{2^-2k-1}). N is capped where 2^-2N still carries
/// meaning at binary64.
template <class R>
ExampleMolecule<R> example_molecule(int N) {
    if (N < 0 || N > 25) throw InvalidInput("example_molecule: N out of range [0, 25]");
    const int levels = 2 * N + 2;  // points 2^0 .. 2^-(2N+1)

    std::vector<R> pos(levels + 1);
    std::vector<std::string> labels(levels + 1);
    R p(1);
    for (int k = 0; k < levels; ++k) {
        pos[k] = p;
        labels[k] = k == 0 ? "1" : "2^-" + std::to_string(k);
        p = p / R(2);
    }
    pos[levels] = R(0);
    labels[levels] = "0";

    const int n = levels + 1;
    typename BasicMetricSpace<R>::Matrix m(n, std::vector<R>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = num_abs<R>(pos[i] - pos[j]);

    auto interval = BasicMetricSpace<R>::make(std::move(labels), std::move(m));
    auto space = share(augment_base(interval));  // truncation at 2 is vacuous inside [0,1]

    std::vector<R> coeffs(space->size(), R(0));
    ExampleMolecule<R> out{space, BasicMolecule<R>::zero(space), {}, {}, levels};
    for (int k = 0; k <= N; ++k) {
        coeffs[2 * k] = R(1);
        coeffs[2 * k + 1] = R(-1);
        out.positive_points.push_back(2 * k);
        out.negative_points.push_back(2 * k + 1);
    }
    out.molecule = BasicMolecule<R>(space, std::move(coeffs));
    return out;
}

/// The separating function for the example family: value 1 at the positive
/// points, 0 at the negative points and at everything at or below 2^-(2N+1),
/// 0 at the base point. Satisfies 0 <= f <= 1 and pairs with the molecule to
/// exactly N+1.
template <class R>
BasicLipFunction<R> example_separating_function(const ExampleMolecule<R>& ex) {
    std::vector<R> v(ex.space->size(), R(0));
    for (int i : ex.positive_points) v[i] = R(1);
    return BasicLipFunction<R>(ex.space, std::move(v));
}

}  // namespace lipfree
