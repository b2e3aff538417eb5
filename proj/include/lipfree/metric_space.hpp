// Finite (optionally pointed) metric spaces: validation against the metric
// axioms and the constructions the rest of the library lives on (truncation,
// base-point amalgam, rescaling, metric balls, interval grids, convexity
// diagnostics). Spaces are immutable after construction.
#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lipfree/numeric.hpp"

namespace lipfree {

enum class MetricAxiom {
    NonSquare,
    NonFinite,
    NegativeEntry,
    NonzeroDiagonal,
    ZeroOffDiagonal,
    Asymmetry,
    TriangleViolation,
    BadBasePoint,
};

inline const char* axiom_name(MetricAxiom a) {
    switch (a) {
        case MetricAxiom::NonSquare: return "non-square matrix";
        case MetricAxiom::NonFinite: return "non-finite entry";
        case MetricAxiom::NegativeEntry: return "negative entry";
        case MetricAxiom::NonzeroDiagonal: return "nonzero diagonal";
        case MetricAxiom::ZeroOffDiagonal: return "zero off-diagonal distance";
        case MetricAxiom::Asymmetry: return "asymmetric entry";
        case MetricAxiom::TriangleViolation: return "triangle inequality violation";
        case MetricAxiom::BadBasePoint: return "base point out of range";
    }
    return "unknown";
}

/// First violated axiom plus the witnessing indices (-1 where unused).
struct MetricDiagnostic {
    MetricAxiom axiom;
    int i = -1;
    int j = -1;
    int k = -1;

    std::string message() const {
        std::ostringstream os;
        os << axiom_name(axiom);
        if (i >= 0) {
            os << " at (" << i;
            if (j >= 0) os << "," << j;
            if (k >= 0) os << "," << k;
            os << ")";
        }
        return os.str();
    }
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class R>
class BasicMetricSpace {
public:
    using Matrix = std::vector<std::vector<R>>;

    /// Validate a candidate distance matrix and build the space, or report the
    /// first violated axiom with its witnessing triple. The triangle check
    /// allows the policy's roundoff slack in the inexact instantiation, so
    /// spaces produced by exact-in-math transformations (rescaling in
    /// particular) are not rejected over 1-ulp noise; the exact instantiation
    /// compares with no slack at all.
    static std::variant<BasicMetricSpace, MetricDiagnostic> validated(
        std::vector<std::string> labels, Matrix dist, std::optional<int> base = std::nullopt,
        const Tolerance& tol = Tolerance{}) {
        const int n = static_cast<int>(dist.size());
        if (n == 0) return MetricDiagnostic{MetricAxiom::NonSquare};
        for (int i = 0; i < n; ++i)
            if (static_cast<int>(dist[i].size()) != n) return MetricDiagnostic{MetricAxiom::NonSquare, i};
        if (static_cast<int>(labels.size()) != n) return MetricDiagnostic{MetricAxiom::NonSquare, -1};

        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!num_finite(dist[i][j])) return MetricDiagnostic{MetricAxiom::NonFinite, i, j};
                if (dist[i][j] < 0) return MetricDiagnostic{MetricAxiom::NegativeEntry, i, j};
            }
        for (int i = 0; i < n; ++i)
            if (!(dist[i][i] == 0)) return MetricDiagnostic{MetricAxiom::NonzeroDiagonal, i, i};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j && dist[i][j] == 0) return MetricDiagnostic{MetricAxiom::ZeroOffDiagonal, i, j};
                if (!(dist[i][j] == dist[j][i])) return MetricDiagnostic{MetricAxiom::Asymmetry, i, j};
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const R bound = dist[i][j] + dist[j][k];
                    bool broken;
                    if constexpr (num_traits<R>::exact)
                        broken = dist[i][k] > bound;
                    else
                        broken = dist[i][k] > bound + (tol.abs + tol.rel * bound);
                    if (broken) return MetricDiagnostic{MetricAxiom::TriangleViolation, i, j, k};
                }
        if (base && (*base < 0 || *base >= n)) return MetricDiagnostic{MetricAxiom::BadBasePoint, *base};

        BasicMetricSpace s;
        s.labels_ = std::move(labels);
        s.dist_ = std::move(dist);
        s.base_ = base;
        return s;
    }

    /// Construction for inputs known to be valid; throws otherwise.
    static BasicMetricSpace make(std::vector<std::string> labels, Matrix dist,
                                 std::optional<int> base = std::nullopt) {
        auto v = validated(std::move(labels), std::move(dist), base);
        if (auto* diag = std::get_if<MetricDiagnostic>(&v))
            throw InvalidInput("invalid metric space: " + diag->message());
        return std::get<BasicMetricSpace>(std::move(v));
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Matrix& matrix() const { return dist_; }
    const R& dist(int i, int j) const { return dist_[i][j]; }

    bool pointed() const { return base_.has_value(); }
    std::optional<int> base() const { return base_; }
    int base_index() const {
        if (!base_) throw InvalidInput("space has no base point");
        return *base_;
    }
    const std::string& base_label() const { return labels_.at(base_index()); }

    std::optional<int> index_of(std::string_view lbl) const {
        for (int i = 0; i < size(); ++i)
            if (labels_[i] == lbl) return i;
        return std::nullopt;
    }

    R diameter() const {
        R d(0);
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (dist_[i][j] > d) d = dist_[i][j];
        return d;
    }

    bool same_structure(const BasicMetricSpace& other) const {
        if (this == &other) return true;
        return labels_ == other.labels_ && base_ == other.base_ && dist_ == other.dist_;
    }

    BasicMetricSpace with_base(int idx) const {
        if (idx < 0 || idx >= size()) throw InvalidInput("base index out of range");
        BasicMetricSpace s(*this);
        s.base_ = idx;
        return s;
    }

    BasicMetricSpace without_base() const {
        BasicMetricSpace s(*this);
        s.base_ = std::nullopt;
        return s;
    }

private:
    BasicMetricSpace() = default;
    std::vector<std::string> labels_;
    Matrix dist_;
    std::optional<int> base_;
};

using MetricSpace = BasicMetricSpace<double>;

template <class R>
using SpacePtr = std::shared_ptr<const BasicMetricSpace<R>>;

template <class R>
SpacePtr<R> share(BasicMetricSpace<R> s) {
    return std::make_shared<const BasicMetricSpace<R>>(std::move(s));
}

/// dist'[i][j] = min(dist[i][j], cap) off the diagonal. Min with a constant
/// preserves all metric axioms.
template <class R>
BasicMetricSpace<R> truncate(const BasicMetricSpace<R>& x, const R& cap) {
    if (!(cap > 0)) throw InvalidInput("truncate: cap must be positive");
    auto m = x.matrix();
    for (auto& row : m)
        for (auto& d : row)
            if (d > cap) d = cap;
    return BasicMetricSpace<R>::make(x.labels(), std::move(m), x.base());
}

/// The amalgam: distances among old points truncated at 2, a new base point
/// at distance exactly 1 from every old point. Input must be unpointed.
template <class R>
BasicMetricSpace<R> augment_base(const BasicMetricSpace<R>& x, std::string base_label = "e") {
    if (x.pointed()) throw InvalidInput("augment_base: input is already pointed");
    while (x.index_of(base_label)) base_label += "'";

    const int n = x.size();
    typename BasicMetricSpace<R>::Matrix m(n + 1, std::vector<R>(n + 1, R(0)));
    const R two(2), one(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = x.dist(i, j) > two ? two : x.dist(i, j);
    for (int i = 0; i < n; ++i) m[i][n] = m[n][i] = one;

    auto labels = x.labels();
    labels.push_back(std::move(base_label));
    return BasicMetricSpace<R>::make(std::move(labels), std::move(m), n);
}

/// All distances multiplied by r > 0; base point preserved.
template <class R>
BasicMetricSpace<R> rescale(const BasicMetricSpace<R>& x, const R& r) {
    if (!(r > 0)) throw InvalidInput("rescale: factor must be positive");
    auto m = x.matrix();
    for (auto& row : m)
        for (auto& d : row) d = d * r;
    return BasicMetricSpace<R>::make(x.labels(), std::move(m), x.base());
}

template <class R>
struct Subspace {
    BasicMetricSpace<R> space;
    std::vector<int> parent_index;  // parent_index[i] = index in the ambient space
};

/// Restriction to {p : dist(p, base) <= radius}; always contains the base.
template <class R>
Subspace<R> closed_ball(const BasicMetricSpace<R>& x, const R& radius) {
    const int e = x.base_index();
    if (radius < 0) throw InvalidInput("closed_ball: radius must be nonnegative");
    std::vector<int> keep;
    for (int i = 0; i < x.size(); ++i)
        if (x.dist(i, e) <= radius) keep.push_back(i);

    const int k = static_cast<int>(keep.size());
    typename BasicMetricSpace<R>::Matrix m(k, std::vector<R>(k));
    std::vector<std::string> labels(k);
    int new_base = -1;
    for (int a = 0; a < k; ++a) {
        labels[a] = x.label(keep[a]);
        if (keep[a] == e) new_base = a;
        for (int b = 0; b < k; ++b) m[a][b] = x.dist(keep[a], keep[b]);
    }
    return Subspace<R>{BasicMetricSpace<R>::make(std::move(labels), std::move(m), new_base), std::move(keep)};
}

namespace detail {
std::string position_label(double x);
}

/// Points {0, spacing, 2*spacing, ..., length} with the |x-y| metric, base 0.
/// length must be an integer multiple of spacing.
template <class R>
BasicMetricSpace<R> interval_grid(const R& length, const R& spacing) {
    if (!(length > 0) || !(spacing > 0)) throw InvalidInput("interval_grid: length and spacing must be positive");
    long steps;
    if constexpr (num_traits<R>::exact) {
        const R q = length / spacing;
        if (denominator(q) != 1) throw InvalidInput("interval_grid: length is not a multiple of spacing");
        steps = numerator(q).template convert_to<long>();
    } else {
        const double q = length / spacing;
        steps = std::lround(q);
        if (steps < 1 || std::fabs(q - static_cast<double>(steps)) > 1e-9 * std::max(1.0, q))
            throw InvalidInput("interval_grid: length is not a multiple of spacing");
    }

    const int n = static_cast<int>(steps) + 1;
    std::vector<R> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = spacing * R(i);
    pos[n - 1] = length;  // avoid drift at the far end

    std::vector<std::string> labels(n);
    typename BasicMetricSpace<R>::Matrix m(n, std::vector<R>(n));
    for (int i = 0; i < n; ++i) {
        labels[i] = detail::position_label(num_traits<R>::to_double(pos[i]));
        for (int j = 0; j < n; ++j) m[i][j] = num_abs<R>(pos[i] - pos[j]);
    }
    return BasicMetricSpace<R>::make(std::move(labels), std::move(m), 0);
}

template <class R>
struct ConvexityReport {
    bool has_witness = false;  // false only for 2-point spaces: no third point exists
    R defect{0};               // max over splittable pairs of the best chain slack; 0 = convex at grid resolution
    int worst_p = -1;
    int worst_q = -1;
};

/// Chain-splitting diagnostic. A candidate r splits the pair (p,q) only if it
/// lies in their metric lens, max(dist(p,r), dist(r,q)) <= dist(p,q); the
/// pair's defect is the best candidate's slack dist(p,r)+dist(r,q)-dist(p,q).
/// Pairs with no candidate at all (adjacent grid points, spokes of a star)
/// cannot be split by any chain and count as vacuously witnessed. Defect 0
/// therefore means every splittable pair has an exact midpoint-chain witness,
/// which is what the three-ball argument consumes on grids.
template <class R>
ConvexityReport<R> convexity_defect(const BasicMetricSpace<R>& x) {
    const int n = x.size();
    if (n < 2) throw InvalidInput("convexity_defect: need at least two points");
    ConvexityReport<R> rep;
    if (n == 2) {
        rep.has_witness = false;
        rep.worst_p = 0;
        rep.worst_q = 1;
        return rep;  // flagged sentinel: no candidate r exists
    }
    rep.has_witness = true;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            bool have = false;
            R best{0};
            for (int r = 0; r < n; ++r) {
                if (r == p || r == q) continue;
                if (x.dist(p, r) > x.dist(p, q) || x.dist(r, q) > x.dist(p, q)) continue;
                const R slack = x.dist(p, r) + x.dist(r, q) - x.dist(p, q);
                if (!have || slack < best) {
                    best = slack;
                    have = true;
                }
            }
            if (have && best > rep.defect) {
                rep.defect = best;
                rep.worst_p = p;
                rep.worst_q = q;
            }
        }
    return rep;
}

}  // namespace lipfree
