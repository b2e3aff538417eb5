// Counterexample replay: rebuild the instance a suite failure recorded and
// recompute the violated residual from scratch, independent of the run that
// found it.
#include "lipfree/theorem_lab.hpp"

namespace lipfree {

namespace {

SpacePtr<double> payload_space(const json& ce) {
    return share(space_from_json<double>(ce.at("space")));
}

LipFunction payload_function(const json& ce, const char* key, const SpacePtr<double>& space) {
    std::vector<double> v = ce.at(key).get<std::vector<double>>();
    return LipFunction(space, std::move(v));
}

double replay_amalgam(const json& ce) {
    auto xp = payload_space(ce);
    auto f = payload_function(ce, "f", xp);
    auto xt = share(truncate(*xp, 2.0));
    auto y = share(augment_base(*xp));
    LipFunction ft(xt, f.values());
    auto ext = extend_by_zero(f, y);
    const double r1 = std::fabs(lip_norm(ft) - lipschitz_number(ext));
    const double r2 = std::fabs(lip_norm(f) - lip_norm(ft));
    return std::max(r1, r2);
}

double replay_ball_translation(const json& ce) {
    auto xp = payload_space(ce);
    auto f = payload_function(ce, "f", xp);
    auto shifted = [&](const LipFunction& g, double c) {
        std::vector<double> v = g.values();
        for (auto& x : v) x += c;
        return g.with_values(std::move(v));
    };
    if (ce.at("direction").get<int>() == 1) return std::max(0.0, lip_norm(shifted(f, -1.0)) - 1.0);
    double excess = std::max(0.0, lip_norm(f) - 1.0);
    excess = std::max(excess, std::max(0.0, lip_norm(shifted(f, -1.0)) - 1.0));
    for (int i = 0; i < f.size(); ++i) excess = std::max(excess, -f(i));
    return excess;
}

double replay_liminf(const json& ce) {
    auto xp = payload_space(ce);
    std::vector<LipFunction> seq;
    for (const auto& term : ce.at("sequence")) seq.emplace_back(xp, term.get<std::vector<double>>());
    auto target = payload_function(ce, "target", xp);
    auto lim = liminf_limit(seq);
    double res = 0.0;
    for (int i = 0; i < target.size(); ++i) res = std::max(res, std::fabs(lim(i) - target(i)));
    return std::max(0.0, res - ce.at("allowed").get<double>());
}

double replay_rescale(const json& ce) {
    auto xp = payload_space(ce);
    auto f = payload_function(ce, "f", xp);
    if (ce.at("part").get<std::string>() == "scaling") {
        const double r = ce.at("r").get<double>();
        auto xr = share(rescale(*xp, r));
        const double lhs = lipschitz_number(LipFunction(xr, f.values()));
        const double rhs = lipschitz_number(f) / r;
        return std::fabs(lhs - rhs) / std::max(1.0, rhs);
    }
    // sup-dominated: the stored space is already rescaled.
    return std::max(0.0, sup_norm(f) - lipschitz_number(f));
}

double replay_ideal_ball(const json& ce) {
    auto xp = payload_space(ce);
    auto f = payload_function(ce, "f", xp);
    const double radius = ce.at("radius").get<double>();
    auto inst = make_ideal_ball_instance(xp, radius, false);
    const double M = ideal_ball_norm_max(inst, f);
    const std::string side = ce.at("side").get<std::string>();
    if (side == "membership") return std::max(0.0, M - 1.0);
    if (side == "violation-bound") return std::max(0.0, ideal_ball_violation_bound(inst, f) - M);
    return M > 1.0 ? 0.0 : 1.0;  // violation-strict
}

double replay_elementary(const json& ce) {
    const double a = ce.at("a").get<double>();
    const double c = ce.at("c").get<double>();
    if (ce.contains("equality_case")) {
        const double t = ce.at("slope").get<double>();
        const double b = a * t, d = c * t;
        return std::fabs((b + d) / (a + c) - std::max(b / a, d / c));
    }
    const double b = ce.at("b").get<double>();
    const double d = ce.at("d").get<double>();
    return std::max(0.0, (b + d) / (a + c) - std::max(b / a, d / c));
}

double replay_example25(const json& ce) {
    const int N = ce.at("N").get<int>();
    auto ex = example_molecule<double>(N);
    double expected = 0.0;
    for (int k = 0; k <= N; ++k) expected += 1.0 / static_cast<double>(1L << (2 * k + 1));
    const auto dual = ae_norm_dual(ex.molecule);
    const auto primal = ae_norm_primal(ex.molecule);
    return std::max(std::fabs(dual.value - expected), std::fabs(primal.value - expected));
}

double replay_duality(const json& ce) {
    auto xp = payload_space(ce);
    const std::string kase = ce.at("case").get<std::string>();
    if (kase == "molecule") {
        Molecule m(xp, ce.at("coeffs").get<std::vector<double>>());
        const auto dual = ae_norm_dual(m);
        const auto primal = ae_norm_primal(m);
        return std::fabs(primal.value - dual.value) / std::max(1.0, std::max(primal.value, dual.value));
    }
    const int p = ce.at("p").get<int>();
    Molecule m = kase == "embedding-single" ? point_mass(xp, p) : point_difference(xp, p, ce.at("q").get<int>());
    const double expect = kase == "embedding-single" ? xp->dist(p, xp->base_index()) : xp->dist(p, ce.at("q").get<int>());
    const auto dual = ae_norm_dual(m);
    const auto primal = ae_norm_primal(m);
    return std::max(std::fabs(primal.value - expect), std::fabs(dual.value - expect)) / std::max(1.0, expect);
}

}  // namespace

double replay_counterexample(const json& ce) {
    const std::string kind = ce.at("kind").get<std::string>();
    if (kind == "amalgam") return replay_amalgam(ce);
    if (kind == "ball-translation") return replay_ball_translation(ce);
    if (kind == "liminf") return replay_liminf(ce);
    if (kind == "rescale") return replay_rescale(ce);
    if (kind == "ideal-ball") return replay_ideal_ball(ce);
    if (kind == "elementary") return replay_elementary(ce);
    if (kind == "example25") return replay_example25(ce);
    if (kind == "duality") return replay_duality(ce);
    throw InvalidInput("unknown counterexample kind: " + kind);
}

}  // namespace lipfree
