// Dense bounded-variable primal simplex:
//
//     maximize c.x   subject to  A x <= b,  lo <= x <= hi
//
// All structural bounds must be finite and the all-lower-bound point must be
// feasible (A lo <= b); the Lipschitz-ball programs built by free_space
// satisfy both by the reverse triangle inequality, so no phase 1 is needed.
// Slack variables complete the initial basis.
//
// Pivoting uses Bland's rule (smallest eligible index enters; among the rows
// that win the ratio test, the smallest basic index leaves), so runs are
// deterministic and, in exact arithmetic, cycle-free. A nonbasic variable
// whose ratio test is won by its own opposite bound flips without a pivot.
//
// The tableau B^-1 [A I] is kept explicitly and updated on each pivot; the
// basic solution is recomputed from the nonbasic bound values every
// iteration, which keeps accumulated error out of the ratio test.
#pragma once

#include <vector>

#include "lipfree/numeric.hpp"

namespace lipfree {

template <class R>
struct LinearProgram {
    int num_vars = 0;
    std::vector<R> objective;          // size num_vars
    std::vector<R> lower, upper;       // finite bounds, size num_vars
    std::vector<std::vector<R>> rows;  // each size num_vars
    std::vector<R> rhs;                // one per row
};

enum class SolveStatus { Optimal, Unbounded, Infeasible, IterationLimit };

inline const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::IterationLimit: return "iteration limit";
    }
    return "unknown";
}

template <class R>
struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    R objective{0};
    std::vector<R> x;
    long iterations = 0;
};

template <class R>
LpSolution<R> solve_bounded_simplex(const LinearProgram<R>& lp) {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    const int total = n + m;  // structurals then slacks
    const R eps = solver_eps<R>();

    LpSolution<R> sol;
    for (int j = 0; j < n; ++j)
        if (lp.lower[j] > lp.upper[j]) return sol;  // Infeasible

    enum class St { Basic, Lower, Upper };
    std::vector<St> status(total, St::Lower);
    std::vector<int> basis(m);
    std::vector<R> nb_val(total, R(0));  // value of each nonbasic variable

    // T = B^-1 [A I | b]; the rhs rides along as the last column so B^-1 b is
    // always available. The initial basis is the slacks, so T starts as
    // [A I | b].
    std::vector<std::vector<R>> T(m, std::vector<R>(total + 1, R(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = lp.rows[i][j];
        T[i][n + i] = R(1);
        T[i][total] = lp.rhs[i];
        basis[i] = n + i;
        status[n + i] = St::Basic;
    }
    for (int j = 0; j < n; ++j) nb_val[j] = lp.lower[j];

    auto obj_coeff = [&](int col) { return col < n ? lp.objective[col] : R(0); };
    auto lower_of = [&](int col) { return col < n ? lp.lower[col] : R(0); };
    auto has_upper = [&](int col) { return col < n; };  // slacks are unbounded above
    auto upper_of = [&](int col) { return lp.upper[col]; };

    std::vector<R> xb(m);
    auto recompute_basics = [&] {
        for (int i = 0; i < m; ++i) xb[i] = T[i][total];  // B^-1 b
        for (int j = 0; j < total; ++j) {
            if (status[j] == St::Basic || nb_val[j] == 0) continue;
            for (int i = 0; i < m; ++i) xb[i] -= T[i][j] * nb_val[j];
        }
    };

    recompute_basics();
    for (int i = 0; i < m; ++i)
        if (xb[i] < -(eps + eps)) return sol;  // A lo <= b violated: precondition broken

    const long max_iter = 200L * (m + n) + 2000;
    long it = 0;
    for (; it < max_iter; ++it) {
        // Reduced costs d_j = c_j - c_B . T_j; Bland: smallest eligible index.
        int enter = -1;
        for (int j = 0; j < total && enter < 0; ++j) {
            if (status[j] == St::Basic) continue;
            if (has_upper(j) && upper_of(j) == lower_of(j)) continue;  // fixed variable
            R d = obj_coeff(j);
            for (int i = 0; i < m; ++i) {
                const R cb = obj_coeff(basis[i]);
                if (!(cb == 0)) d -= cb * T[i][j];
            }
            if ((status[j] == St::Lower && d > eps) || (status[j] == St::Upper && d < -eps)) enter = j;
        }
        if (enter < 0) break;  // optimal

        const bool increasing = status[enter] == St::Lower;

        // Ratio test over the basic variables.
        bool have_row = false;
        R t_row(0);
        int leave_row = -1;
        bool leave_at_upper = false;
        for (int i = 0; i < m; ++i) {
            const R coef = increasing ? T[i][enter] : R(-T[i][enter]);
            R t;
            bool at_upper;
            if (coef > eps) {  // this basic variable moves down toward its lower bound
                R room = xb[i] - lower_of(basis[i]);
                if (room < 0) room = R(0);
                t = room / coef;
                at_upper = false;
            } else if (coef < -eps && has_upper(basis[i])) {  // moves up toward its upper bound
                R room = upper_of(basis[i]) - xb[i];
                if (room < 0) room = R(0);
                t = room / (-coef);
                at_upper = true;
            } else {
                continue;
            }
            if (!have_row || t < t_row || (t == t_row && basis[i] < basis[leave_row])) {
                have_row = true;
                t_row = t;
                leave_row = i;
                leave_at_upper = at_upper;
            }
        }

        const bool flip_possible = has_upper(enter);
        const R t_flip = flip_possible ? R(upper_of(enter) - lower_of(enter)) : R(0);
        if (!have_row && !flip_possible) {
            sol.status = SolveStatus::Unbounded;
            sol.iterations = it;
            return sol;
        }

        if (flip_possible && (!have_row || t_flip < t_row)) {
            status[enter] = increasing ? St::Upper : St::Lower;
            nb_val[enter] = increasing ? upper_of(enter) : lower_of(enter);
        } else {
            const int out = basis[leave_row];
            status[out] = leave_at_upper ? St::Upper : St::Lower;
            nb_val[out] = leave_at_upper ? upper_of(out) : lower_of(out);

            const R piv = T[leave_row][enter];
            for (int j = 0; j <= total; ++j) T[leave_row][j] = T[leave_row][j] / piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave_row) continue;
                const R factor = T[i][enter];
                if (factor == 0) continue;
                for (int j = 0; j <= total; ++j) T[i][j] -= factor * T[leave_row][j];
            }
            basis[leave_row] = enter;
            status[enter] = St::Basic;
        }
        recompute_basics();
    }

    sol.iterations = it;
    if (it >= max_iter) {
        sol.status = SolveStatus::IterationLimit;
        return sol;
    }

    sol.status = SolveStatus::Optimal;
    sol.x.assign(n, R(0));
    for (int j = 0; j < n; ++j)
        if (status[j] != St::Basic) sol.x[j] = nb_val[j];
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = xb[i];
    sol.objective = R(0);
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace lipfree
