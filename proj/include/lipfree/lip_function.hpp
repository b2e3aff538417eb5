// Lipschitz functions on a finite (pointed) space: the Lipschitz number and
// the two norms, lattice operations, zero-extension to an amalgam, base-point
// change, finite liminf combinations, the clipped distance function h, and
// membership in the vanishing ideal of a subset.
#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "lipfree/metric_space.hpp"

namespace lipfree {

template <class R>
class BasicLipFunction {
public:
    BasicLipFunction(SpacePtr<R> space, std::vector<R> values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (!space_) throw InvalidInput("function needs a space");
        if (static_cast<int>(values_.size()) != space_->size())
            throw InvalidInput("function has wrong number of values for its space");
        for (const R& v : values_)
            if (!num_finite(v)) throw InvalidInput("function value is not finite");
    }

    const SpacePtr<R>& space() const { return space_; }
    const std::vector<R>& values() const { return values_; }
    const R& operator()(int i) const { return values_.at(i); }
    int size() const { return static_cast<int>(values_.size()); }

    BasicLipFunction with_values(std::vector<R> v) const { return BasicLipFunction(space_, std::move(v)); }

private:
    SpacePtr<R> space_;
    std::vector<R> values_;
};

using LipFunction = BasicLipFunction<double>;

template <class R>
bool same_space(const SpacePtr<R>& a, const SpacePtr<R>& b) {
    return a == b || (a && b && a->same_structure(*b));
}

template <class R>
void require_same_space(const BasicLipFunction<R>& f, const BasicLipFunction<R>& g) {
    if (!same_space(f.space(), g.space())) throw InvalidInput("functions live on different spaces");
}

/// max over distinct pairs of |f(p)-f(q)| / dist(p,q); 0 on a single point
/// (empty sup convention, matching the seminorm's kernel of constants).
template <class R>
R lipschitz_number(const BasicLipFunction<R>& f) {
    const auto& x = *f.space();
    R best(0);
    for (int p = 0; p < x.size(); ++p)
        for (int q = p + 1; q < x.size(); ++q) {
            const R slope = num_abs<R>(f(p) - f(q)) / x.dist(p, q);
            if (slope > best) best = slope;
        }
    return best;
}

template <class R>
R sup_norm(const BasicLipFunction<R>& f) {
    R best(0);
    for (const R& v : f.values())
        if (num_abs<R>(v) > best) best = num_abs<R>(v);
    return best;
}

template <class R>
R lip_norm(const BasicLipFunction<R>& f) {
    return std::max(lipschitz_number(f), sup_norm(f));
}

/// Lip0 membership is a checked predicate, not a distinct type: the same
/// function value flows through both pipelines.
template <class R>
bool vanishes_at_base(const BasicLipFunction<R>& f, const Tolerance& tol) {
    return tol_zero(f(f.space()->base_index()), tol);
}

template <class R>
BasicLipFunction<R> join(const BasicLipFunction<R>& f, const BasicLipFunction<R>& g) {
    require_same_space(f, g);
    std::vector<R> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = std::max(f(i), g(i));
    return f.with_values(std::move(v));
}

template <class R>
BasicLipFunction<R> meet(const BasicLipFunction<R>& f, const BasicLipFunction<R>& g) {
    require_same_space(f, g);
    std::vector<R> v(f.size());
    for (int i = 0; i < f.size(); ++i) v[i] = std::min(f(i), g(i));
    return f.with_values(std::move(v));
}

template <class R>
BasicLipFunction<R> family_join(const std::vector<BasicLipFunction<R>>& fs) {
    if (fs.empty()) throw InvalidInput("family_join: empty family");
    BasicLipFunction<R> acc = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) acc = join(acc, fs[i]);
    return acc;
}

template <class R>
BasicLipFunction<R> family_meet(const std::vector<BasicLipFunction<R>>& fs) {
    if (fs.empty()) throw InvalidInput("family_meet: empty family");
    BasicLipFunction<R> acc = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) acc = meet(acc, fs[i]);
    return acc;
}

/// Extend f on X by zero at the base point of Y = augment_base(X). Y is
/// checked structurally against X so a mismatched amalgam is rejected.
template <class R>
BasicLipFunction<R> extend_by_zero(const BasicLipFunction<R>& f, const SpacePtr<R>& y) {
    const auto& x = *f.space();
    if (x.pointed()) throw InvalidInput("extend_by_zero: source space must be unpointed");
    if (!y || !y->pointed() || y->size() != x.size() + 1 || y->base_index() != x.size())
        throw InvalidInput("extend_by_zero: target is not the amalgam of the source");
    const R two(2), one(1);
    for (int i = 0; i < x.size(); ++i) {
        if (y->label(i) != x.label(i)) throw InvalidInput("extend_by_zero: point labels disagree");
        if (!(y->dist(i, x.size()) == one)) throw InvalidInput("extend_by_zero: base distances are not 1");
        for (int j = 0; j < x.size(); ++j) {
            const R expect = x.dist(i, j) > two ? two : x.dist(i, j);
            if (!(y->dist(i, j) == expect)) throw InvalidInput("extend_by_zero: distances are not the truncation of the source");
        }
    }
    std::vector<R> v = f.values();
    v.push_back(R(0));
    return BasicLipFunction<R>(y, std::move(v));
}

/// f - f(e') * 1_X: moves a function vanishing at one point to a function
/// vanishing at e'. The Lipschitz number is unchanged.
template <class R>
BasicLipFunction<R> rebase(const BasicLipFunction<R>& f, int new_base) {
    if (new_base < 0 || new_base >= f.size()) throw InvalidInput("rebase: unknown point");
    const R c = f(new_base);
    std::vector<R> v = f.values();
    for (R& x : v) x = x - c;
    return f.with_values(std::move(v));
}

/// Pointwise max over n of (min over k >= n of f_k): the finite liminf-style
/// combination. Suffix minima right-to-left, then a running max.
template <class R>
BasicLipFunction<R> liminf_limit(const std::vector<BasicLipFunction<R>>& fs) {
    if (fs.empty()) throw InvalidInput("liminf_limit: empty sequence");
    for (size_t i = 1; i < fs.size(); ++i) require_same_space(fs[0], fs[i]);
    const int n = fs[0].size();
    std::vector<R> suffix_min = fs.back().values();
    std::vector<R> out = suffix_min;
    for (int k = static_cast<int>(fs.size()) - 2; k >= 0; --k) {
        for (int i = 0; i < n; ++i) {
            suffix_min[i] = std::min(suffix_min[i], fs[k](i));
            if (suffix_min[i] > out[i]) out[i] = suffix_min[i];
        }
    }
    return fs[0].with_values(std::move(out));
}

/// h(p) = min(dist(p, e), n): the clipped distance-to-base. Vanishes at e,
/// Lipschitz number at most 1.
template <class R>
BasicLipFunction<R> h_function(const SpacePtr<R>& space, const R& n) {
    if (!(n > 0)) throw InvalidInput("h_function: radius must be positive");
    const int e = space->base_index();
    std::vector<R> v(space->size());
    for (int i = 0; i < space->size(); ++i) v[i] = std::min(space->dist(i, e), n);
    return BasicLipFunction<R>(space, std::move(v));
}

/// f vanishes (within absolute tolerance) on all of K. K must contain the
/// base point.
template <class R>
bool ideal_membership(const BasicLipFunction<R>& f, const std::vector<int>& K, const Tolerance& tol) {
    const int e = f.space()->base_index();
    if (std::find(K.begin(), K.end(), e) == K.end())
        throw InvalidInput("ideal_membership: subset must contain the base point");
    for (int i : K) {
        if (i < 0 || i >= f.size()) throw InvalidInput("ideal_membership: index out of range");
        if (!tol_zero(f(i), tol)) return false;
    }
    return true;
}

/// McShane-style extension of values given on a subset K:
/// ext(p) = min over q in K of f(q) + L * dist(p, q). For L >= the Lipschitz
/// number of f on K this is an extension with Lipschitz number <= L. Used to
/// synthesize adversarial test functions.
template <class R>
BasicLipFunction<R> mcshane_extend(const SpacePtr<R>& space, const std::vector<int>& K,
                                   const std::vector<R>& values_on_K, const R& lip_bound) {
    if (K.empty()) throw InvalidInput("mcshane_extend: empty subset");
    if (K.size() != values_on_K.size()) throw InvalidInput("mcshane_extend: subset/values size mismatch");
    std::vector<R> v(space->size());
    for (int p = 0; p < space->size(); ++p) {
        bool first = true;
        for (size_t a = 0; a < K.size(); ++a) {
            const R cand = values_on_K[a] + lip_bound * space->dist(p, K[a]);
            if (first || cand < v[p]) {
                v[p] = cand;
                first = false;
            }
        }
    }
    return BasicLipFunction<R>(space, std::move(v));
}

}  // namespace lipfree
