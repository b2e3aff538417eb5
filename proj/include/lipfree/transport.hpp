// Transportation simplex (MODI / u-v method) for dense balanced
// transportation problems:
//
//     minimize  sum_{ij} flow_ij * cost_ij
//     s.t.      sum_j flow_ij = supply_i,   sum_i flow_ij = demand_j,
//               flow >= 0
//
// The basis is a spanning tree of the bipartite supply/demand graph with
// M + N - 1 cells, seeded by the northwest-corner rule (which yields exactly
// that many cells regardless of degeneracy). Each iteration solves the
// potentials on the tree, scans cells row-major for the first negative
// reduced cost (Bland-style, deterministic), walks the unique tree cycle
// through the entering cell, and pivots by the minimum flow on the leaving
// arcs, breaking ties toward the lexicographically smallest cell.
#pragma once

#include <utility>
#include <vector>

#include "lipfree/numeric.hpp"
#include "lipfree/simplex.hpp"  // SolveStatus

namespace lipfree {

template <class R>
struct TransportProblem {
    std::vector<R> supply;              // all >= 0
    std::vector<R> demand;              // all >= 0, total equals total supply
    std::vector<std::vector<R>> cost;   // supply-major, size M x N
};

template <class R>
struct TransportSolution {
    SolveStatus status = SolveStatus::Infeasible;
    R total_cost{0};
    std::vector<std::vector<R>> flow;  // M x N
    long iterations = 0;
};

template <class R>
TransportSolution<R> solve_transportation(const TransportProblem<R>& pr) {
    const int M = static_cast<int>(pr.supply.size());
    const int N = static_cast<int>(pr.demand.size());
    const R eps = solver_eps<R>();

    TransportSolution<R> sol;
    sol.flow.assign(std::max(M, 0), std::vector<R>(std::max(N, 0), R(0)));
    if (M == 0 || N == 0) {
        // Legal only when there is no mass at all.
        R total(0);
        for (const R& s : pr.supply) total += s;
        for (const R& d : pr.demand) total += d;
        sol.status = num_abs(total) <= eps ? SolveStatus::Optimal : SolveStatus::Infeasible;
        return sol;
    }
    for (const R& s : pr.supply)
        if (s < 0) return sol;
    for (const R& d : pr.demand)
        if (d < 0) return sol;

    // Northwest-corner start: one basic cell per step, advancing exactly one
    // pointer, ends at (M-1, N-1) with M+N-1 basic cells.
    std::vector<std::vector<char>> basic(M, std::vector<char>(N, 0));
    {
        std::vector<R> a = pr.supply, b = pr.demand;
        int i = 0, j = 0;
        while (true) {
            R alloc = a[i] < b[j] ? a[i] : b[j];
            if (alloc < 0) alloc = R(0);
            sol.flow[i][j] = alloc;
            basic[i][j] = 1;
            a[i] -= alloc;
            b[j] -= alloc;
            if (i == M - 1 && j == N - 1) break;
            if ((a[i] < b[j] && i < M - 1) || j == N - 1)
                ++i;
            else
                ++j;
        }
    }

    std::vector<R> u(M), v(N);
    std::vector<char> u_set(M), v_set(N);
    // Row node i <-> column node M + j adjacency over basic cells. Returns
    // false if the basis ever stops spanning the graph (a defect, not an
    // expected outcome).
    auto solve_potentials = [&]() -> bool {
        std::fill(u_set.begin(), u_set.end(), 0);
        std::fill(v_set.begin(), v_set.end(), 0);
        u[0] = R(0);
        u_set[0] = 1;
        std::vector<int> queue{0};
        while (!queue.empty()) {
            const int node = queue.back();
            queue.pop_back();
            if (node < M) {
                for (int j = 0; j < N; ++j)
                    if (basic[node][j] && !v_set[j]) {
                        v[j] = pr.cost[node][j] - u[node];
                        v_set[j] = 1;
                        queue.push_back(M + j);
                    }
            } else {
                const int j = node - M;
                for (int i = 0; i < M; ++i)
                    if (basic[i][j] && !u_set[i]) {
                        u[i] = pr.cost[i][j] - v[j];
                        u_set[i] = 1;
                        queue.push_back(i);
                    }
            }
        }
        for (int i = 0; i < M; ++i)
            if (!u_set[i]) return false;
        for (int j = 0; j < N; ++j)
            if (!v_set[j]) return false;
        return true;
    };

    // Unique cycle through the entering cell (ei, ej): path in the basis tree
    // from column node ej back to row node ei, via parent pointers.
    std::vector<int> parent(M + N);
    auto find_cycle = [&](int ei, int ej, std::vector<std::pair<int, int>>& cycle) -> bool {
        std::fill(parent.begin(), parent.end(), -2);
        parent[M + ej] = -1;
        std::vector<int> queue{M + ej};
        while (!queue.empty() && parent[ei] == -2) {
            const int node = queue.back();
            queue.pop_back();
            if (node < M) {
                for (int j = 0; j < N; ++j)
                    if (basic[node][j] && parent[M + j] == -2) {
                        parent[M + j] = node;
                        queue.push_back(M + j);
                    }
            } else {
                const int j = node - M;
                for (int i = 0; i < M; ++i)
                    if (basic[i][j] && parent[i] == -2) {
                        parent[i] = node;
                        queue.push_back(i);
                    }
            }
        }
        if (parent[ei] == -2) return false;
        cycle.clear();
        cycle.emplace_back(ei, ej);  // entering arc gets +theta
        int node = ei;
        while (parent[node] != -1) {
            const int up = parent[node];
            if (node < M)
                cycle.emplace_back(node, up - M);  // row -> column arc, alternating -theta
            else
                cycle.emplace_back(up, node - M);
            node = up;
        }
        return true;
    };

    const long max_iter = 200L * (M + N) + 2000;
    std::vector<std::pair<int, int>> cycle;
    long it = 0;
    for (; it < max_iter; ++it) {
        if (!solve_potentials()) {
            sol.status = SolveStatus::IterationLimit;
            sol.iterations = it;
            return sol;
        }

        int ei = -1, ej = -1;
        for (int i = 0; i < M && ei < 0; ++i)
            for (int j = 0; j < N; ++j) {
                if (basic[i][j]) continue;
                if (pr.cost[i][j] - u[i] - v[j] < -eps) {
                    ei = i;
                    ej = j;
                    break;
                }
            }
        if (ei < 0) break;  // optimal

        if (!find_cycle(ei, ej, cycle)) {
            sol.status = SolveStatus::IterationLimit;
            sol.iterations = it;
            return sol;
        }

        // Odd positions along the cycle lose flow; theta = their minimum.
        R theta(0);
        int leave = -1;
        for (size_t k = 1; k < cycle.size(); k += 2) {
            const auto [i, j] = cycle[k];
            if (leave < 0 || sol.flow[i][j] < theta ||
                (sol.flow[i][j] == theta &&
                 (i < cycle[leave].first || (i == cycle[leave].first && j < cycle[leave].second)))) {
                theta = sol.flow[i][j];
                leave = static_cast<int>(k);
            }
        }

        for (size_t k = 0; k < cycle.size(); ++k) {
            const auto [i, j] = cycle[k];
            if (k % 2 == 0)
                sol.flow[i][j] += theta;
            else
                sol.flow[i][j] -= theta;
        }
        const auto [li, lj] = cycle[leave];
        if (sol.flow[li][lj] < 0) sol.flow[li][lj] = R(0);
        basic[li][lj] = 0;
        basic[ei][ej] = 1;
    }

    sol.iterations = it;
    if (it >= max_iter) {
        sol.status = SolveStatus::IterationLimit;
        return sol;
    }

    sol.total_cost = R(0);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j)
            if (!(sol.flow[i][j] == 0)) sol.total_cost += sol.flow[i][j] * pr.cost[i][j];
    sol.status = SolveStatus::Optimal;
    return sol;
}

}  // namespace lipfree
