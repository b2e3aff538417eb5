// Executable verification suites for the finitely checkable identities:
// the amalgam isometry between Lip and Lip0, the positive-ball translation
// relation, the finite liminf lattice identity, the rescaling isometry, the
// three-ball characterization of the vanishing ideal, the elementary slope
// inequality, the alternating dyadic molecule growth table, and primal/dual
// agreement of the free-space norm.
//
// Every suite is deterministic given a seed. A failure carries a replayable
// counterexample payload: replay_counterexample() rebuilds the instance from
// the payload alone and recomputes the violated residual.
//
// Residual accounting: each trial contributes its *excess* over what the
// identity allows (0 when the assertion holds with slack), except where a
// raw residual is the natural diagnostic (rescaling, duality gap, growth
// table); passed results always have max_residual at or below the suite's
// limit, and the exact-rational instantiation reports 0.
#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "lipfree/free_space.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/json_io.hpp"
#include "lipfree/lip_function.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/rng.hpp"

namespace lipfree {

struct LabConfig {
    uint64_t seed = 0;
    long trials = 10000;
    int n_max = 8;  // growth-table depth
    Tolerance tol{};
};

struct CheckResult {
    std::string name;
    bool passed = true;
    long trials = 0;
    double max_residual = 0.0;
    json counterexample = nullptr;
    json detail = nullptr;
};

inline json check_result_to_json(const CheckResult& r) {
    json j{{"check", r.name},
           {"passed", r.passed},
           {"trials", r.trials},
           {"max_residual", r.max_residual},
           {"counterexample", r.counterexample}};
    if (!r.detail.is_null()) j["detail"] = r.detail;
    return j;
}

namespace lab_detail {

template <class R>
std::vector<double> to_doubles(const std::vector<R>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = num_traits<R>::to_double(v[i]);
    return out;
}

template <class R>
std::vector<R> from_doubles(const std::vector<double>& v) {
    std::vector<R> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = num_traits<R>::from_double(v[i]);
    return out;
}

inline void note(CheckResult& r, double excess, double limit, const std::function<json()>& payload) {
    if (excess > r.max_residual) r.max_residual = excess;
    if (excess > limit && r.passed) {
        r.passed = false;
        r.counterexample = payload();
    }
}

}  // namespace lab_detail

// ---------------------------------------------------------------------------
// Amalgam isometry: the Lip norm over the cap-2 truncation of X equals the
// Lipschitz number of the zero-extension on Y = augment_base(X), and
// truncation at 2 does not move the Lip norm at all.

template <class R>
CheckResult check_amalgam_isometry(const BasicMetricSpace<R>& X, long trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"amalgam"};
    const double limit = cfg.tol.abs;
    auto xp = share(X);
    auto xt = share(truncate(X, R(2)));
    auto y = share(augment_base(X));
    for (long t = 0; t < trials; ++t) {
        ++out.trials;
        auto f = random_function<R>(rng, xp, -3.0, 3.0);
        auto ft = BasicLipFunction<R>(xt, f.values());
        auto ext = extend_by_zero(ft.with_values(f.values()), y);
        const R norm_orig = lip_norm(f);
        const R norm_trunc = lip_norm(ft);
        const R ext_lip = lipschitz_number(ext);
        const double r1 = residual_of(norm_trunc, ext_lip);
        const double r2 = residual_of(norm_orig, norm_trunc);
        const double excess = std::max(r1, r2);
        lab_detail::note(out, excess, limit, [&] {
            return json{{"kind", "amalgam"},
                        {"space", space_to_json(X)},
                        {"f", lab_detail::to_doubles(f.values())},
                        {"lip_norm_original", num_traits<R>::to_double(norm_orig)},
                        {"lip_norm_truncated", num_traits<R>::to_double(norm_trunc)},
                        {"extension_lipschitz_number", num_traits<R>::to_double(ext_lip)},
                        {"residual", excess}};
        });
        if (!out.passed) break;
    }
    return out;
}

template <class R>
CheckResult run_amalgam_suite(const LabConfig& cfg) {
    Rng rng = Rng(cfg.seed).fork("amalgam");
    CheckResult out{"amalgam"};
    out.max_residual = 0.0;
    const long spaces = std::max(1L, cfg.trials / 10);
    for (long s = 0; s < spaces && out.passed; ++s) {
        auto X = random_space<R>(rng, static_cast<int>(rng.range(2, 10)), false);
        auto sub = check_amalgam_isometry(X, 10, cfg, rng.fork("f" + std::to_string(s)));
        out.trials += sub.trials;
        if (sub.max_residual > out.max_residual) out.max_residual = sub.max_residual;
        if (!sub.passed) {
            out.passed = false;
            out.counterexample = sub.counterexample;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Positive unit ball translation: f >= 0 with ||f||_L <= 1 forces
// ||f - 1||_L <= 1, and conversely anything in both the ball and the
// translated ball is nonnegative.

template <class R>
CheckResult check_ball_translation(const BasicMetricSpace<R>& X, long trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"ball-translation"};
    const double limit = cfg.tol.abs;
    auto xp = share(X);
    auto shifted = [&](const BasicLipFunction<R>& f, const R& c) {
        std::vector<R> v = f.values();
        for (auto& x : v) x = x + c;
        return f.with_values(std::move(v));
    };
    for (long t = 0; t < trials; ++t) {
        ++out.trials;
        // Direction 1: positive unit ball lands in the translated ball.
        auto f = random_positive_unit_ball<R>(rng, xp);
        const R norm_shift = lip_norm(shifted(f, R(-1)));
        double excess = std::max(0.0, num_traits<R>::to_double(norm_shift) - 1.0);
        lab_detail::note(out, excess, limit, [&] {
            return json{{"kind", "ball-translation"},
                        {"direction", 1},
                        {"space", space_to_json(X)},
                        {"f", lab_detail::to_doubles(f.values())},
                        {"norm_f_minus_one", num_traits<R>::to_double(norm_shift)},
                        {"residual", excess}};
        });
        if (!out.passed) break;

        // Direction 2: g in the ball with g - 1 in the ball must be >= 0.
        std::vector<R> hv(X.size());
        for (auto& x : hv) x = random_value<R>(rng, -1.0, 0.0);
        BasicLipFunction<R> h0(xp, std::move(hv));
        const R lh = lipschitz_number(h0);
        if (lh > 1) {
            std::vector<R> w = h0.values();
            for (auto& x : w) x = x / lh;
            h0 = h0.with_values(std::move(w));
        }
        auto g = shifted(h0, R(1));
        const double in_ball = std::max(0.0, num_traits<R>::to_double(lip_norm(g)) - 1.0);
        const double back_in_ball = std::max(0.0, num_traits<R>::to_double(lip_norm(shifted(g, R(-1)))) - 1.0);
        double neg = 0.0;
        for (int i = 0; i < g.size(); ++i)
            neg = std::max(neg, -num_traits<R>::to_double(g(i)));
        excess = std::max({in_ball, back_in_ball, neg});
        lab_detail::note(out, excess, limit, [&] {
            return json{{"kind", "ball-translation"},
                        {"direction", 2},
                        {"space", space_to_json(X)},
                        {"f", lab_detail::to_doubles(g.values())},
                        {"residual", excess}};
        });
        if (!out.passed) break;
    }
    return out;
}

template <class R>
CheckResult run_ball_translation_suite(const LabConfig& cfg) {
    Rng rng = Rng(cfg.seed).fork("ball-translation");
    CheckResult out{"ball-translation"};
    const long spaces = std::max(1L, cfg.trials / 10);
    for (long s = 0; s < spaces && out.passed; ++s) {
        auto X = random_space<R>(rng, static_cast<int>(rng.range(2, 10)), false);
        auto sub = check_ball_translation(X, 10, cfg, rng.fork("f" + std::to_string(s)));
        out.trials += sub.trials;
        if (sub.max_residual > out.max_residual) out.max_residual = sub.max_residual;
        if (!sub.passed) {
            out.passed = false;
            out.counterexample = sub.counterexample;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite liminf identity: join over n of (meet over k >= n) recovers the
// pointwise limit of a bounded sequence.

template <class R>
CheckResult check_liminf_identity(const BasicMetricSpace<R>& X, long trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"liminf"};
    const double limit = cfg.tol.abs;
    auto xp = share(X);
    auto fail_payload = [&](const char* family, const std::vector<BasicLipFunction<R>>& seq,
                            const BasicLipFunction<R>& target, double got, double allowed) {
        json terms = json::array();
        for (const auto& fk : seq) terms.push_back(lab_detail::to_doubles(fk.values()));
        return json{{"kind", "liminf"},
                    {"family", family},
                    {"space", space_to_json(X)},
                    {"sequence", std::move(terms)},
                    {"target", lab_detail::to_doubles(target.values())},
                    {"residual", got},
                    {"allowed", allowed}};
    };
    for (long t = 0; t < trials; ++t) {
        ++out.trials;
        auto target = random_function<R>(rng, xp, -2.0, 2.0);

        // Constant tail: junk terms followed by the target twice.
        {
            std::vector<BasicLipFunction<R>> seq;
            const int junk = static_cast<int>(rng.range(0, 4));
            for (int k = 0; k < junk; ++k) seq.push_back(random_function<R>(rng, xp, -5.0, 5.0));
            seq.push_back(target);
            seq.push_back(target);
            auto lim = liminf_limit(seq);
            double res = 0.0;
            for (int i = 0; i < target.size(); ++i) res = std::max(res, residual_of(lim(i), target(i)));
            lab_detail::note(out, res, limit, [&] { return fail_payload("constant-tail", seq, target, res, 0.0); });
            if (!out.passed) break;
        }

        // Shrinking perturbations: the residual is bounded by the final
        // amplitude.
        {
            const int terms = 50;
            const double amp0 = 1.0;
            std::vector<BasicLipFunction<R>> seq;
            for (int k = 1; k <= terms; ++k) {
                const double amp = amp0 / k;
                std::vector<R> v = target.values();
                for (auto& x : v) x = x + random_value<R>(rng, -amp, amp);
                seq.push_back(target.with_values(std::move(v)));
            }
            const double allowed = amp0 / terms;
            auto lim = liminf_limit(seq);
            double res = 0.0;
            for (int i = 0; i < target.size(); ++i) res = std::max(res, residual_of(lim(i), target(i)));
            const double excess = std::max(0.0, res - allowed);
            lab_detail::note(out, excess, limit, [&] { return fail_payload("shrinking", seq, target, res, allowed); });
            if (!out.passed) break;
        }

        // Monotone increasing: the join of tails is the last element.
        {
            std::vector<BasicLipFunction<R>> seq;
            auto cur = random_function<R>(rng, xp, -2.0, 0.0);
            seq.push_back(cur);
            for (int k = 0; k < 6; ++k) {
                std::vector<R> v = cur.values();
                for (auto& x : v) x = x + random_value<R>(rng, 0.0, 0.5);
                cur = cur.with_values(std::move(v));
                seq.push_back(cur);
            }
            auto lim = liminf_limit(seq);
            double res = 0.0;
            for (int i = 0; i < cur.size(); ++i) res = std::max(res, residual_of(lim(i), cur(i)));
            lab_detail::note(out, res, limit, [&] { return fail_payload("monotone", seq, cur, res, 0.0); });
            if (!out.passed) break;
        }

        // Alternating g,h,...,h collapses to h.
        {
            auto g = random_function<R>(rng, xp, -2.0, 2.0);
            auto h = random_function<R>(rng, xp, -2.0, 2.0);
            std::vector<BasicLipFunction<R>> seq;
            for (int k = 0; k < 4; ++k) {
                seq.push_back(g);
                seq.push_back(h);
            }
            auto lim = liminf_limit(seq);
            double res = 0.0;
            for (int i = 0; i < h.size(); ++i) res = std::max(res, residual_of(lim(i), h(i)));
            lab_detail::note(out, res, limit, [&] { return fail_payload("alternating", seq, h, res, 0.0); });
            if (!out.passed) break;
        }
    }
    return out;
}

template <class R>
CheckResult run_liminf_suite(const LabConfig& cfg) {
    Rng rng = Rng(cfg.seed).fork("liminf");
    CheckResult out{"liminf"};
    const long spaces = std::max(1L, cfg.trials / 20);
    for (long s = 0; s < spaces && out.passed; ++s) {
        auto X = random_space<R>(rng, static_cast<int>(rng.range(2, 8)), false);
        auto sub = check_liminf_identity(X, 5, cfg, rng.fork("f" + std::to_string(s)));
        out.trials += sub.trials;
        if (sub.max_residual > out.max_residual) out.max_residual = sub.max_residual;
        if (!sub.passed) {
            out.passed = false;
            out.counterexample = sub.counterexample;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rescaling: Lipschitz numbers scale by 1/r, and once all base distances sit
// at or below 1 the sup norm is dominated by the Lipschitz number, so the
// Lip and Lip0 norms coincide.

template <class R>
R unit_ball_rescale_factor(const BasicMetricSpace<R>& X) {
    const R diam = X.diameter();
    R r = R(1) / diam;
    if constexpr (!num_traits<R>::exact) {
        // Nudge down until every rescaled base distance really is <= 1 in
        // binary64, not just mathematically.
        const int e = X.base_index();
        for (bool ok = false; !ok;) {
            ok = true;
            for (int p = 0; p < X.size(); ++p)
                if (X.dist(p, e) * r > 1.0) ok = false;
            if (!ok) r = std::nextafter(r, 0.0);
        }
    }
    return r;
}

template <class R>
CheckResult check_rescale(const BasicMetricSpace<R>& X, const R& r, long trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"rescale"};
    const double limit = std::max(cfg.tol.abs, 1e-12);
    auto xp = share(X);
    auto xr = share(rescale(X, r));
    for (long t = 0; t < trials; ++t) {
        ++out.trials;
        auto f = random_function<R>(rng, xp, -3.0, 3.0);
        const R lhs = lipschitz_number(BasicLipFunction<R>(xr, f.values()));
        const R rhs = lipschitz_number(f) / r;
        const double denom = std::max(1.0, num_traits<R>::to_double(rhs));
        const double rel = residual_of(lhs, rhs) / denom;
        lab_detail::note(out, rel, limit, [&] {
            return json{{"kind", "rescale"},
                        {"part", "scaling"},
                        {"space", space_to_json(X)},
                        {"r", num_traits<R>::to_double(r)},
                        {"f", lab_detail::to_doubles(f.values())},
                        {"residual", rel}};
        });
        if (!out.passed) break;
    }

    // Second half: with base distances <= 1, sup norm <= Lipschitz number
    // for functions vanishing at the base point.
    auto xunit = share(rescale(X, unit_ball_rescale_factor(X)));
    for (long t = 0; t < trials && out.passed; ++t) {
        ++out.trials;
        auto f = random_lip0_unit_ball<R>(rng, xunit);
        const double excess =
            std::max(0.0, num_traits<R>::to_double(sup_norm(f)) - num_traits<R>::to_double(lipschitz_number(f)));
        lab_detail::note(out, excess, limit, [&] {
            return json{{"kind", "rescale"},
                        {"part", "sup-dominated"},
                        {"space", space_to_json(*xunit)},
                        {"f", lab_detail::to_doubles(f.values())},
                        {"residual", excess}};
        });
    }
    return out;
}

template <class R>
CheckResult run_rescale_suite(const LabConfig& cfg) {
    Rng rng = Rng(cfg.seed).fork("rescale");
    CheckResult out{"rescale"};
    const long spaces = std::max(1L, cfg.trials / 20);
    for (long s = 0; s < spaces && out.passed; ++s) {
        auto X = random_space<R>(rng, static_cast<int>(rng.range(3, 10)), true);
        const R r = random_value<R>(rng, 0.1, 4.0);
        auto sub = check_rescale(X, r, 10, cfg, rng.fork("f" + std::to_string(s)));
        out.trials += sub.trials;
        if (sub.max_residual > out.max_residual) out.max_residual = sub.max_residual;
        if (!sub.passed) {
            out.passed = false;
            out.counterexample = sub.counterexample;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Three-ball ideal characterization. With h the clipped distance-to-base and
// K the closed ball of radius n:
//   membership side (needs an exact splitting point, so line grids with n a
//   grid point): f in the ideal implies L(f+h) <= 1 and L(f-h) <= 1;
//   violation side (every pointed space): any f with f(p) != 0 inside the
//   ball pushes max(L(f+h), L(f-h)) to at least 1 + |f(p)| / dist(p, e).

template <class R>
struct IdealBallInstance {
    SpacePtr<R> space;
    R radius;
    BasicLipFunction<R> h;
    std::vector<int> ball;  // indices with dist(p, e) <= radius
};

template <class R>
IdealBallInstance<R> make_ideal_ball_instance(const SpacePtr<R>& space, const R& radius, bool require_grid_point) {
    const int e = space->base_index();
    if (!(radius > 0)) throw InvalidInput("ideal-ball: radius must be positive");
    if (require_grid_point) {
        bool hit = false;
        for (int p = 0; p < space->size(); ++p)
            if (space->dist(p, e) == radius) hit = true;
        R diam(0);
        for (int p = 0; p < space->size(); ++p) diam = std::max(diam, space->dist(p, e));
        if (!hit || !(radius < diam))
            throw InvalidInput("ideal-ball: radius must be an interior grid point; refusing to approximate");
    }
    IdealBallInstance<R> inst{space, radius, h_function(space, radius), {}};
    for (int p = 0; p < space->size(); ++p)
        if (space->dist(p, e) <= radius) inst.ball.push_back(p);
    return inst;
}

template <class R>
R ideal_ball_norm_max(const IdealBallInstance<R>& inst, const BasicLipFunction<R>& f) {
    std::vector<R> plus = f.values(), minus = f.values();
    for (int i = 0; i < f.size(); ++i) {
        plus[i] += inst.h(i);
        minus[i] -= inst.h(i);
    }
    return std::max(lipschitz_number(f.with_values(std::move(plus))),
                    lipschitz_number(f.with_values(std::move(minus))));
}

/// Lower bound forced by a value at a ball point: 1 + max |f(p)| / dist(p,e).
template <class R>
R ideal_ball_violation_bound(const IdealBallInstance<R>& inst, const BasicLipFunction<R>& f) {
    const int e = inst.space->base_index();
    R bound(1);
    for (int p : inst.ball) {
        if (p == e) continue;
        const R b = R(1) + num_abs<R>(f(p)) / inst.space->dist(p, e);
        if (b > bound) bound = b;
    }
    return bound;
}

template <class R>
void ideal_ball_run_trial(CheckResult& out, const IdealBallInstance<R>& inst, const BasicLipFunction<R>& f,
                          bool convex_side, const LabConfig& cfg, const char* generator) {
    ++out.trials;
    const double limit = cfg.tol.abs;
    const int e = inst.space->base_index();
    const R M = ideal_ball_norm_max(inst, f);
    double margin = 0.0;
    for (int p : inst.ball)
        if (p != e) margin = std::max(margin, std::fabs(num_traits<R>::to_double(f(p))));
    const bool member = ideal_membership(f, inst.ball, cfg.tol);

    auto payload = [&](const char* side, double excess) {
        return json{{"kind", "ideal-ball"},
                    {"side", side},
                    {"generator", generator},
                    {"space", space_to_json(*inst.space)},
                    {"radius", num_traits<R>::to_double(inst.radius)},
                    {"f", lab_detail::to_doubles(f.values())},
                    {"norm_max", num_traits<R>::to_double(M)},
                    {"member", member},
                    {"residual", excess}};
    };

    if (member && convex_side) {
        // Membership forces both translated norms into the unit ball.
        const double excess = std::max(0.0, num_traits<R>::to_double(M) - 1.0);
        lab_detail::note(out, excess, limit, [&] { return payload("membership", excess); });
        return;
    }
    if (!member) {
        // Quantitative violation bound, valid on every pointed space.
        const R bound = ideal_ball_violation_bound(inst, f);
        const double excess = std::max(0.0, num_traits<R>::to_double(bound) - num_traits<R>::to_double(M));
        lab_detail::note(out, excess, limit, [&] { return payload("violation-bound", excess); });
        if (out.passed && margin >= 1e-6 && !(num_traits<R>::to_double(M) > 1.0)) {
            lab_detail::note(out, 1.0, limit, [&] { return payload("violation-strict", 1.0); });
        }
    }
}

template <class R>
CheckResult check_ideal_ball_identity(const SpacePtr<R>& grid, const R& radius, long random_trials,
                                      long adversarial_trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"ideal-ball"};
    auto inst = make_ideal_ball_instance(grid, radius, true);
    const int e = grid->base_index();

    for (long t = 0; t < random_trials && out.passed; ++t) {
        if (t % 2 == 0) {
            // Forced member: exactly zero on the ball, random outside.
            std::vector<R> v(grid->size(), R(0));
            for (int p = 0; p < grid->size(); ++p)
                if (grid->dist(p, e) > radius) v[p] = random_value<R>(rng, -1.0, 1.0);
            BasicLipFunction<R> f(grid, std::move(v));
            const R L = lipschitz_number(f);
            if (L > 1) {
                std::vector<R> w = f.values();
                for (auto& x : w) x = x / L;
                f = f.with_values(std::move(w));
            }
            ideal_ball_run_trial(out, inst, f, true, cfg, "member");
        } else {
            auto f = random_lip0_unit_ball<R>(rng, grid);
            ideal_ball_run_trial(out, inst, f, true, cfg, "random");
        }
    }

    // Adversarial: single-point spikes inside the ball, the boundary ramp
    // (in the ideal, norms exactly 1), and +/- h itself.
    for (long t = 0; t < adversarial_trials && out.passed; ++t) {
        const int which = static_cast<int>(t % 3);
        if (which == 0) {
            std::vector<int> off_base;
            for (int q : inst.ball)
                if (q != e) off_base.push_back(q);
            if (off_base.empty()) continue;
            const int p = off_base[static_cast<size_t>(rng.below(static_cast<long>(off_base.size())))];
            const double sign = rng.coin() ? 1.0 : -1.0;
            const double eps_choices[] = {1e-3, 0.05, 0.3};
            std::vector<R> v(grid->size(), R(0));
            v[p] = num_traits<R>::from_double(sign * eps_choices[rng.below(3)]);
            BasicLipFunction<R> f(grid, std::move(v));
            const R L = lipschitz_number(f);
            if (L > 1) {
                std::vector<R> w = f.values();
                for (auto& x : w) x = x / L;
                f = f.with_values(std::move(w));
            }
            ideal_ball_run_trial(out, inst, f, true, cfg, "spike");
        } else if (which == 1) {
            std::vector<R> v(grid->size());
            for (int p = 0; p < grid->size(); ++p) {
                const R d = grid->dist(p, e);
                v[p] = d > radius ? R(d - radius) : R(0);
            }
            ideal_ball_run_trial(out, inst, BasicLipFunction<R>(grid, std::move(v)), true, cfg, "boundary-ramp");
        } else {
            std::vector<R> v = inst.h.values();
            if (rng.coin())
                for (auto& x : v) x = -x;
            ideal_ball_run_trial(out, inst, BasicLipFunction<R>(grid, std::move(v)), true, cfg, "h-aligned");
        }
    }
    return out;
}

template <class R>
CheckResult run_ideal_ball_suite(const LabConfig& cfg) {
    Rng rng = Rng(cfg.seed).fork("ideal-ball");
    CheckResult out{"ideal-ball"};
    const long per_config = std::max(1L, cfg.trials);
    const long adversarial = std::max(1L, cfg.trials / 100);

    const double lengths[] = {3.0, 4.0, 8.0};
    const double spacings[] = {1.0, 0.5};
    for (double len : lengths)
        for (double sp : spacings) {
            auto grid = share(interval_grid<R>(num_traits<R>::from_double(len), num_traits<R>::from_double(sp)));
            const int steps = static_cast<int>(std::lround(len / sp));
            for (int k = 1; k < steps && out.passed; ++k) {
                const R radius = num_traits<R>::from_double(sp) * R(k);
                auto sub = check_ideal_ball_identity(grid, radius, per_config, adversarial, cfg,
                                                     rng.fork("grid" + std::to_string(k) + "_" +
                                                              std::to_string(len) + "_" + std::to_string(sp)));
                out.trials += sub.trials;
                if (sub.max_residual > out.max_residual) out.max_residual = sub.max_residual;
                if (!sub.passed) {
                    out.passed = false;
                    out.counterexample = sub.counterexample;
                }
            }
            if (!out.passed) break;
        }

    // Violation side alone on random spaces with no convexity to lean on.
    const long nonconvex_spaces = 50;
    for (long s = 0; s < nonconvex_spaces && out.passed; ++s) {
        auto X = share(random_space<R>(rng, static_cast<int>(rng.range(4, 10)), true));
        const int e = X->base_index();
        std::vector<R> base_dists;
        for (int p = 0; p < X->size(); ++p)
            if (p != e) base_dists.push_back(X->dist(p, e));
        std::sort(base_dists.begin(), base_dists.end());
        const R radius = base_dists[base_dists.size() / 2];
        auto inst = make_ideal_ball_instance(X, radius, false);
        for (long t = 0; t < adversarial && out.passed; ++t) {
            auto f = random_lip0_unit_ball<R>(rng, X);
            ideal_ball_run_trial(out, inst, f, false, cfg, "nonconvex");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elementary slope inequality: (b+d)/(a+c) <= max(b/a, d/c) for positive
// denominators and nonnegative numerators, with equality at matched slopes.

template <class R>
CheckResult check_elementary_inequality(long trials, const LabConfig& cfg, Rng rng) {
    CheckResult out{"elementary"};
    const double limit = cfg.tol.abs;
    for (long t = 0; t < trials; ++t) {
        ++out.trials;
        const R a = random_value<R>(rng, 0.01, 2.0);
        const R c = random_value<R>(rng, 0.01, 2.0);
        const R b = random_value<R>(rng, 0.0, 2.0);
        const R d = random_value<R>(rng, 0.0, 2.0);
        const R lhs = (b + d) / (a + c);
        const R rhs = std::max(b / a, d / c);
        const double excess = std::max(0.0, num_traits<R>::to_double(lhs) - num_traits<R>::to_double(rhs));
        lab_detail::note(out, excess, limit, [&] {
            return json{{"kind", "elementary"},
                        {"a", num_traits<R>::to_double(a)},
                        {"b", num_traits<R>::to_double(b)},
                        {"c", num_traits<R>::to_double(c)},
                        {"d", num_traits<R>::to_double(d)},
                        {"residual", excess}};
        });
        if (!out.passed) break;

        // Matched slopes witness equality, within roundoff of the products.
        const R slope = random_value<R>(rng, 0.0, 2.0);
        const R b2 = a * slope, d2 = c * slope;
        const R lhs2 = (b2 + d2) / (a + c);
        const R rhs2 = std::max(b2 / a, d2 / c);
        const double eq_res = residual_of(lhs2, rhs2);
        const double eq_limit =
            num_traits<R>::exact ? 0.0 : cfg.tol.rel * std::max(1.0, num_traits<R>::to_double(rhs2));
        if (eq_res > eq_limit && out.passed) {
            out.passed = false;
            out.counterexample = json{{"kind", "elementary"},
                                      {"equality_case", true},
                                      {"a", num_traits<R>::to_double(a)},
                                      {"slope", num_traits<R>::to_double(slope)},
                                      {"c", num_traits<R>::to_double(c)},
                                      {"residual", eq_res}};
        }
        if (!out.passed) break;
    }
    return out;
}

template <class R>
CheckResult run_elementary_suite(const LabConfig& cfg) {
    return check_elementary_inequality<R>(cfg.trials, cfg, Rng(cfg.seed).fork("elementary"));
}

// ---------------------------------------------------------------------------
// Growth table for the alternating dyadic molecule: the free-space norm stays
// under 2/3 while the positive part's pairing with the indicator grows as
// N+1, and the separating function realizes <m_N, f_N> = N+1 exactly.

template <class R>
CheckResult run_example25_suite(const LabConfig& cfg) {
    CheckResult out{"example25"};
    const double norm_limit = std::max(cfg.tol.rel, 1e-12);
    out.detail = json::array();
    double prev_ratio = -1.0;
    for (int N = 0; N <= cfg.n_max && out.passed; ++N) {
        ++out.trials;
        auto ex = example_molecule<R>(N);

        // Expected norm: the sum of the elementary molecule norms, exact in
        // binary64 (a sum of distinct powers of two).
        R expected(0);
        for (int k = 0; k <= N; ++k) expected += R(1) / R(static_cast<long>(1L << std::min(60, 2 * k + 1)));

        const auto dual = ae_norm_dual(ex.molecule);
        const auto primal = ae_norm_primal(ex.molecule);
        const auto checks = check_certificates(ex.molecule, primal, dual, cfg.tol);

        const double r_dual = residual_of(dual.value, expected);
        const double r_primal = residual_of(primal.value, expected);

        auto [mplus, mminus] = minimal_positive_decomposition(ex.molecule);
        std::vector<R> ones(ex.space->size(), R(1));
        ones[ex.space->base_index()] = R(0);
        BasicLipFunction<R> one_off_base(ex.space, std::move(ones));
        const R plus_pairing = pairing(mplus, one_off_base);

        const auto f_n = example_separating_function(ex);
        const R mn_pairing = pairing(ex.molecule, f_n);
        bool f_range_ok = true;
        for (int i = 0; i < f_n.size(); ++i)
            if (f_n(i) < 0 || f_n(i) > 1) f_range_ok = false;

        const double norm_excess = std::max(r_dual, r_primal);
        const bool pairings_exact = plus_pairing == R(N + 1) && mn_pairing == R(N + 1);
        const bool bounded = num_traits<R>::to_double(dual.value) <= 2.0 / 3.0 + cfg.tol.abs;
        const double ratio = num_traits<R>::to_double(plus_pairing) / num_traits<R>::to_double(dual.value);
        const bool ratio_increasing = ratio > prev_ratio;
        prev_ratio = ratio;

        out.detail.push_back(json{{"N", N},
                                  {"ae_norm", num_traits<R>::to_double(dual.value)},
                                  {"expected_norm", num_traits<R>::to_double(expected)},
                                  {"positive_pairing", num_traits<R>::to_double(plus_pairing)},
                                  {"separating_pairing", num_traits<R>::to_double(mn_pairing)},
                                  {"ratio", ratio}});

        if (norm_excess > out.max_residual) out.max_residual = norm_excess;
        if (norm_excess > norm_limit || !pairings_exact || !bounded || !f_range_ok || !ratio_increasing ||
            !checks.all()) {
            out.passed = false;
            out.counterexample = json{{"kind", "example25"},
                                      {"N", N},
                                      {"ae_norm_dual", num_traits<R>::to_double(dual.value)},
                                      {"ae_norm_primal", num_traits<R>::to_double(primal.value)},
                                      {"expected", num_traits<R>::to_double(expected)},
                                      {"positive_pairing", num_traits<R>::to_double(plus_pairing)},
                                      {"separating_pairing", num_traits<R>::to_double(mn_pairing)},
                                      {"certificates_ok", checks.all()},
                                      {"residual", norm_excess}};
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Primal/dual agreement with full certification, plus the isometric
// embedding: elementary molecules recover distances exactly.

template <class R>
CheckResult check_duality(const LabConfig& cfg, Rng rng, long spaces, int molecules_per_space) {
    CheckResult out{"duality"};
    const double limit = cfg.tol.duality_rel;
    const double embed_limit = std::max(cfg.tol.rel, 1e-12);
    for (long s = 0; s < spaces && out.passed; ++s) {
        auto X = share(random_space<R>(rng, static_cast<int>(rng.range(3, 12)), true));
        const int e = X->base_index();

        // Embedding isometry on every point and pair of this space, by both
        // routes: elementary molecules must recover distances exactly.
        auto embed_case = [&](const BasicMolecule<R>& mol, const R& expect, const char* label, int p, int q) {
            ++out.trials;
            const auto primal = ae_norm_primal(mol);
            const auto dual = ae_norm_dual(mol);
            const double denom = std::max(1.0, num_traits<R>::to_double(expect));
            const double r = std::max(residual_of(primal.value, expect), residual_of(dual.value, expect)) / denom;
            lab_detail::note(out, r, embed_limit, [&] {
                return json{{"kind", "duality"},
                            {"case", label},
                            {"space", space_to_json(*X)},
                            {"p", p},
                            {"q", q},
                            {"primal", num_traits<R>::to_double(primal.value)},
                            {"dual", num_traits<R>::to_double(dual.value)},
                            {"expected", num_traits<R>::to_double(expect)},
                            {"residual", r}};
            });
        };
        for (int p = 0; p < X->size() && out.passed; ++p) {
            if (p == e) continue;
            embed_case(point_mass(X, p), X->dist(p, e), "embedding-single", p, -1);
            for (int q = p + 1; q < X->size() && out.passed; ++q) {
                if (q == e) continue;
                embed_case(point_difference(X, p, q), X->dist(p, q), "embedding-pair", p, q);
            }
        }

        for (int t = 0; t < molecules_per_space && out.passed; ++t) {
            ++out.trials;
            auto m = random_molecule<R>(rng, X, 6);
            const auto dual = ae_norm_dual(m);
            const auto primal = ae_norm_primal(m);
            const auto checks = check_certificates(m, primal, dual, cfg.tol);
            const double pv = num_traits<R>::to_double(primal.value);
            const double dv = num_traits<R>::to_double(dual.value);
            const double gap = std::fabs(pv - dv) / std::max(1.0, std::max(pv, dv));
            const bool ok = checks.all();
            lab_detail::note(out, ok ? gap : std::max(gap, limit * 2), limit, [&] {
                return json{{"kind", "duality"},
                            {"case", "molecule"},
                            {"space", space_to_json(*X)},
                            {"coeffs", lab_detail::to_doubles(m.coeffs())},
                            {"primal", pv},
                            {"dual", dv},
                            {"certificates_ok", ok},
                            {"residual", gap}};
            });
        }
    }
    return out;
}

template <class R>
CheckResult run_duality_suite(const LabConfig& cfg) {
    const long spaces = std::max(1L, cfg.trials / 5);
    return check_duality<R>(cfg, Rng(cfg.seed).fork("duality"), spaces, 5);
}

// ---------------------------------------------------------------------------
// Registry and replay.

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"amalgam",    "ball-translation", "liminf",    "rescale",
                                                "ideal-ball", "elementary",       "example25", "duality"};
    return names;
}

template <class R>
CheckResult run_suite(const std::string& name, const LabConfig& cfg) {
    if (name == "amalgam") return run_amalgam_suite<R>(cfg);
    if (name == "ball-translation") return run_ball_translation_suite<R>(cfg);
    if (name == "liminf") return run_liminf_suite<R>(cfg);
    if (name == "rescale") return run_rescale_suite<R>(cfg);
    if (name == "ideal-ball") return run_ideal_ball_suite<R>(cfg);
    if (name == "elementary") return run_elementary_suite<R>(cfg);
    if (name == "example25") return run_example25_suite<R>(cfg);
    if (name == "duality") return run_duality_suite<R>(cfg);
    throw InvalidInput("unknown verification suite: " + name);
}

/// Rebuild a counterexample payload and recompute the violated residual, so
/// failures are checkable in isolation from the run that found them.
double replay_counterexample(const json& ce);

}  // namespace lipfree
