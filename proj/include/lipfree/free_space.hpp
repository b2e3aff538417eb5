// The free-space norm of a molecule, computed two independent ways with
// mutual certification:
//
//   dual   — maximize <m, f> over {f : f(e) = 0, |f(p)-f(q)| <= dist(p,q)},
//            a dense LP over the Lipschitz unit ball; the optimizer is the
//            dual certificate.
//   primal — minimum-cost transportation of the positive part onto the
//            negative part, with the base point absorbing any mass imbalance
//            (delta_e is the zero element); the plan is the primal witness.
//
// Strong duality makes the two values agree; check_certificates verifies
// both witnesses and the gap, and weak duality (pairing <= plan cost) holds
// for any feasible pair whether or not it is optimal.
#pragma once

#include <vector>

#include "lipfree/lip_function.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/simplex.hpp"
#include "lipfree/transport.hpp"

namespace lipfree {

struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class R>
struct DualCertificate {
    BasicLipFunction<R> witness;  // L(witness) <= 1, witness(e) = 0
    R value;
};

template <class R>
struct PlanEntry {
    int source;  // index into the space
    int sink;
    R flow;
};

template <class R>
struct TransportPlan {
    std::vector<PlanEntry<R>> entries;
    R cost{0};
};

template <class R>
struct DualNorm {
    R value;
    DualCertificate<R> certificate;
};

template <class R>
struct PrimalNorm {
    R value;
    TransportPlan<R> plan;
};

/// Lipschitz-ball LP. Variables are the function values off the base point;
/// the pair constraints with e become the variable bounds, so the
/// all-lower-bound start (f = -dist(., e)) is feasible by the reverse
/// triangle inequality.
template <class R>
DualNorm<R> ae_norm_dual(const BasicMolecule<R>& m) {
    const auto canon = canonicalize(m);
    const auto& x = *canon.space();
    const int e = x.base_index();
    const int n = x.size();

    std::vector<int> var_point;
    for (int p = 0; p < n; ++p)
        if (p != e) var_point.push_back(p);
    const int nv = static_cast<int>(var_point.size());

    LinearProgram<R> lp;
    lp.num_vars = nv;
    lp.objective.resize(nv);
    lp.lower.resize(nv);
    lp.upper.resize(nv);
    for (int k = 0; k < nv; ++k) {
        lp.objective[k] = canon(var_point[k]);
        lp.upper[k] = x.dist(var_point[k], e);
        lp.lower[k] = -lp.upper[k];
    }
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
            const R d = x.dist(var_point[a], var_point[b]);
            std::vector<R> row(nv, R(0));
            row[a] = R(1);
            row[b] = R(-1);
            lp.rows.push_back(row);
            lp.rhs.push_back(d);
            row[a] = R(-1);
            row[b] = R(1);
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(d);
        }

    const auto res = solve_bounded_simplex(lp);
    if (res.status != SolveStatus::Optimal)
        throw SolverFailure(std::string("dual LP did not solve: ") + solve_status_name(res.status));

    std::vector<R> values(n, R(0));
    for (int k = 0; k < nv; ++k) values[var_point[k]] = res.x[k];
    BasicLipFunction<R> witness(canon.space(), std::move(values));
    return DualNorm<R>{res.objective, DualCertificate<R>{std::move(witness), res.objective}};
}

/// Transportation formulation. The molecule is canonicalized, split into
/// positive and negative parts, and the base point is appended as a free
/// source or sink for the mass imbalance.
template <class R>
PrimalNorm<R> ae_norm_primal(const BasicMolecule<R>& m) {
    const auto canon = canonicalize(m);
    const auto& x = *canon.space();
    const int e = x.base_index();

    std::vector<int> sources, sinks;
    R pos_mass(0), neg_mass(0);
    for (int p = 0; p < canon.size(); ++p) {
        if (canon(p) > 0) {
            sources.push_back(p);
            pos_mass += canon(p);
        } else if (canon(p) < 0) {
            sinks.push_back(p);
            neg_mass -= canon(p);
        }
    }

    TransportProblem<R> pr;
    for (int p : sources) pr.supply.push_back(canon(p));
    for (int q : sinks) pr.demand.push_back(-canon(q));
    const R imbalance = pos_mass - neg_mass;
    if (imbalance > 0) {
        sinks.push_back(e);
        pr.demand.push_back(imbalance);
    } else if (imbalance < 0) {
        sources.push_back(e);
        pr.supply.push_back(-imbalance);
    }
    pr.cost.assign(pr.supply.size(), std::vector<R>(pr.demand.size()));
    for (size_t i = 0; i < sources.size(); ++i)
        for (size_t j = 0; j < sinks.size(); ++j) pr.cost[i][j] = x.dist(sources[i], sinks[j]);

    const auto res = solve_transportation(pr);
    if (res.status != SolveStatus::Optimal)
        throw SolverFailure(std::string("transportation solve failed: ") + solve_status_name(res.status));

    PrimalNorm<R> out;
    out.value = res.total_cost;
    out.plan.cost = res.total_cost;
    for (size_t i = 0; i < sources.size(); ++i)
        for (size_t j = 0; j < sinks.size(); ++j)
            if (!(res.flow[i][j] == 0))
                out.plan.entries.push_back(PlanEntry<R>{sources[i], sinks[j], res.flow[i][j]});
    return out;
}

struct CertificateChecks {
    bool plan_feasible = false;          // flows >= 0 and marginals match (base point exempt)
    bool plan_cost_consistent = false;   // stated cost = sum flow * dist
    bool witness_feasible = false;       // f(e) = 0 and L(f) <= 1
    bool witness_pairing_consistent = false;
    bool duality_gap_ok = false;         // |primal - dual| within the duality tolerance
    bool weak_duality_ok = false;        // pairing <= cost, valid for ANY feasible pair

    bool all() const {
        return plan_feasible && plan_cost_consistent && witness_feasible &&
               witness_pairing_consistent && duality_gap_ok && weak_duality_ok;
    }
};

template <class R>
CertificateChecks check_certificates(const BasicMolecule<R>& m, const PrimalNorm<R>& primal,
                                     const DualNorm<R>& dual, const Tolerance& tol) {
    const auto canon = canonicalize(m);
    const auto& x = *canon.space();
    const int e = x.base_index();
    CertificateChecks out;

    // Plan feasibility: nonnegative flows, net outflow = coefficient at every
    // non-base point.
    std::vector<R> net(canon.size(), R(0));
    bool nonneg = true;
    for (const auto& entry : primal.plan.entries) {
        if (entry.flow < 0) nonneg = false;
        net[entry.source] += entry.flow;
        net[entry.sink] -= entry.flow;
    }
    bool marginals = true;
    for (int p = 0; p < canon.size(); ++p) {
        if (p == e) continue;  // imbalance absorption
        if (!tol_close(net[p], canon(p), tol)) marginals = false;
    }
    out.plan_feasible = nonneg && marginals;

    R plan_cost(0);
    for (const auto& entry : primal.plan.entries) plan_cost += entry.flow * x.dist(entry.source, entry.sink);
    out.plan_cost_consistent = tol_close(plan_cost, primal.plan.cost, tol) && tol_close(plan_cost, primal.value, tol);

    const auto& f = dual.certificate.witness;
    const bool vanishes = tol_zero(f(e), tol);
    const R lip = lipschitz_number(f);
    if constexpr (num_traits<R>::exact)
        out.witness_feasible = vanishes && lip <= 1;
    else
        out.witness_feasible = vanishes && num_traits<R>::to_double(lip) <= 1.0 + tol.rel;

    const R pair_value = pairing(canon, f);
    out.witness_pairing_consistent = tol_close(pair_value, dual.certificate.value, tol) &&
                                     tol_close(pair_value, dual.value, tol);

    const double pv = num_traits<R>::to_double(primal.value);
    const double dv = num_traits<R>::to_double(dual.value);
    if constexpr (num_traits<R>::exact)
        out.duality_gap_ok = primal.value == dual.value;
    else
        out.duality_gap_ok = std::fabs(pv - dv) <= tol.duality_rel * std::max(1.0, std::max(pv, dv));

    if constexpr (num_traits<R>::exact)
        out.weak_duality_ok = pair_value <= plan_cost;
    else
        out.weak_duality_ok = num_traits<R>::to_double(pair_value) <=
                              num_traits<R>::to_double(plan_cost) +
                                  tol.duality_rel * std::max(1.0, num_traits<R>::to_double(plan_cost));
    return out;
}

}  // namespace lipfree
