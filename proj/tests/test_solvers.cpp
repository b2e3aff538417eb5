#include <doctest.h>

#include <vector>

#include "lipfree/rng.hpp"
#include "lipfree/simplex.hpp"
#include "lipfree/transport.hpp"

using namespace lipfree;

namespace {

// Independent oracle: enumerate every candidate basis (cell subsets of size
// M+N-1), solve the marginal equations by peeling rows/columns with a single
// unresolved cell, and keep the cheapest feasible vertex. Exponential, test
// sizes only.
double brute_force_transport(const TransportProblem<double>& pr) {
    const int M = static_cast<int>(pr.supply.size());
    const int N = static_cast<int>(pr.demand.size());
    const int cells = M * N;
    const int want = M + N - 1;
    double best = std::numeric_limits<double>::infinity();

    std::vector<int> pick(want);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == want) {
            std::vector<double> flow(cells, 0.0);
            std::vector<bool> in_basis(cells, false);
            for (int idx : pick) in_basis[idx] = true;
            std::vector<double> a = pr.supply, b = pr.demand;
            std::vector<bool> solved(cells, false);
            int remaining = want;
            bool progress = true;
            while (remaining > 0 && progress) {
                progress = false;
                for (int i = 0; i < M; ++i) {
                    int open = -1, count = 0;
                    for (int j = 0; j < N; ++j)
                        if (in_basis[i * N + j] && !solved[i * N + j]) {
                            open = j;
                            ++count;
                        }
                    if (count == 1) {
                        flow[i * N + open] = a[i];
                        a[i] = 0;
                        b[open] -= flow[i * N + open];
                        solved[i * N + open] = true;
                        --remaining;
                        progress = true;
                    }
                }
                for (int j = 0; j < N; ++j) {
                    int open = -1, count = 0;
                    for (int i = 0; i < M; ++i)
                        if (in_basis[i * N + j] && !solved[i * N + j]) {
                            open = i;
                            ++count;
                        }
                    if (count == 1) {
                        flow[open * N + j] = b[j];
                        b[j] = 0;
                        a[open] -= flow[open * N + j];
                        solved[open * N + j] = true;
                        --remaining;
                        progress = true;
                    }
                }
            }
            if (remaining > 0) return;  // subset contains a cycle
            bool feasible = true;
            for (int i = 0; i < M && feasible; ++i)
                if (std::fabs(a[i]) > 1e-9) feasible = false;
            for (int j = 0; j < N && feasible; ++j)
                if (std::fabs(b[j]) > 1e-9) feasible = false;
            for (int c = 0; c < cells && feasible; ++c)
                if (flow[c] < -1e-9) feasible = false;
            if (!feasible) return;
            double cost = 0;
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < N; ++j) cost += flow[i * N + j] * pr.cost[i][j];
            best = std::min(best, cost);
            return;
        }
        if (start >= cells) return;
        if (cells - start < want - chosen) return;
        pick[chosen] = start;
        rec(start + 1, chosen + 1);
        rec(start + 1, chosen);
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST_CASE("bounded simplex solves hand-sized programs") {
    {
        // One variable, one row: max x, x <= 0.7, |x| <= 1.
        LinearProgram<double> lp;
        lp.num_vars = 1;
        lp.objective = {1};
        lp.lower = {-1};
        lp.upper = {1};
        lp.rows = {{1}};
        lp.rhs = {0.7};
        auto sol = solve_bounded_simplex(lp);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(0.7));
        CHECK(sol.x[0] == doctest::Approx(0.7));
    }
    {
        // Bound flip only: max x with no rows lands on the upper bound.
        LinearProgram<double> lp;
        lp.num_vars = 1;
        lp.objective = {1};
        lp.lower = {-2};
        lp.upper = {3};
        auto sol = solve_bounded_simplex(lp);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(3.0));
    }
    {
        // max x+y s.t. x+y <= 1.5 on the unit box.
        LinearProgram<double> lp;
        lp.num_vars = 2;
        lp.objective = {1, 1};
        lp.lower = {0, 0};
        lp.upper = {1, 1};
        lp.rows = {{1, 1}};
        lp.rhs = {1.5};
        auto sol = solve_bounded_simplex(lp);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(1.5));
    }
    {
        // Degenerate duplicate rows.
        LinearProgram<double> lp;
        lp.num_vars = 1;
        lp.objective = {1};
        lp.lower = {0};
        lp.upper = {2};
        lp.rows = {{1}, {1}};
        lp.rhs = {1, 1};
        auto sol = solve_bounded_simplex(lp);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(1.0));
    }
}

TEST_CASE("transportation simplex on hand-sized problems") {
    {
        TransportProblem<double> pr{{2}, {2}, {{3}}};
        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.total_cost == doctest::Approx(6.0));
        CHECK(sol.flow[0][0] == doctest::Approx(2.0));
    }
    {
        TransportProblem<double> pr{{1, 1}, {1, 1}, {{0, 1}, {1, 0}}};
        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.total_cost == doctest::Approx(0.0));
    }
    {
        // Hand-solved: cost is 7 - 3*f11, so f11 = 1 is optimal.
        TransportProblem<double> pr{{2, 1}, {1, 2}, {{1, 2}, {3, 1}}};
        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.total_cost == doctest::Approx(4.0));
    }
    {
        // Fully tied costs; any feasible plan costs 2.
        TransportProblem<double> pr{{1, 1}, {1, 1}, {{1, 1}, {1, 1}}};
        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.total_cost == doctest::Approx(2.0));
    }
    {
        // No mass at all.
        TransportProblem<double> pr{{}, {}, {}};
        CHECK(solve_transportation(pr).status == SolveStatus::Optimal);
    }
}

TEST_CASE("transportation simplex matches the vertex-enumeration oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int M = static_cast<int>(rng.range(1, 3));
        const int N = static_cast<int>(rng.range(1, 3));
        TransportProblem<double> pr;
        pr.supply.resize(M);
        pr.demand.resize(N);
        pr.cost.assign(M, std::vector<double>(N));
        // Dyadic masses so both sides balance exactly.
        double total = 0;
        for (int i = 0; i < M; ++i) {
            pr.supply[i] = static_cast<double>(rng.range(1, 32)) / 16.0;
            total += pr.supply[i];
        }
        double left = total;
        for (int j = 0; j < N - 1; ++j) {
            pr.demand[j] = left * 0.5;
            left -= pr.demand[j];
        }
        pr.demand[N - 1] = left;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) pr.cost[i][j] = static_cast<double>(rng.range(0, 64)) / 16.0;

        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        const double oracle = brute_force_transport(pr);
        CHECK(sol.total_cost == doctest::Approx(oracle).epsilon(1e-9));

        // Marginals of the returned plan.
        for (int i = 0; i < M; ++i) {
            double out = 0;
            for (int j = 0; j < N; ++j) out += sol.flow[i][j];
            CHECK(out == doctest::Approx(pr.supply[i]).epsilon(1e-9));
        }
        for (int j = 0; j < N; ++j) {
            double in = 0;
            for (int i = 0; i < M; ++i) in += sol.flow[i][j];
            CHECK(in == doctest::Approx(pr.demand[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("the two engines agree through LP duality on transportation instances") {
    // max sum a_i u_i + sum b_j v_j  s.t.  u_i + v_j <= c_ij  equals the
    // minimal transport cost; potentials are boxed well past any optimum.
    Rng rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const int M = static_cast<int>(rng.range(1, 4));
        const int N = static_cast<int>(rng.range(1, 4));
        TransportProblem<double> pr;
        pr.supply.resize(M);
        pr.demand.resize(N);
        pr.cost.assign(M, std::vector<double>(N));
        double total = 0;
        for (int i = 0; i < M; ++i) {
            pr.supply[i] = static_cast<double>(rng.range(1, 16)) / 8.0;
            total += pr.supply[i];
        }
        double left = total;
        for (int j = 0; j < N - 1; ++j) {
            pr.demand[j] = left * 0.5;
            left -= pr.demand[j];
        }
        pr.demand[N - 1] = left;
        double cmax = 1;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                pr.cost[i][j] = static_cast<double>(rng.range(0, 40)) / 8.0;
                cmax = std::max(cmax, pr.cost[i][j]);
            }

        LinearProgram<double> lp;
        lp.num_vars = M + N;
        lp.objective.resize(M + N);
        const double box = (M + N + 1) * cmax;
        lp.lower.assign(M + N, -box);
        lp.upper.assign(M + N, box);
        for (int i = 0; i < M; ++i) lp.objective[i] = pr.supply[i];
        for (int j = 0; j < N; ++j) lp.objective[M + j] = pr.demand[j];
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                std::vector<double> row(M + N, 0.0);
                row[i] = 1;
                row[M + j] = 1;
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(pr.cost[i][j]);
            }

        auto primal = solve_transportation(pr);
        auto dual = solve_bounded_simplex(lp);
        REQUIRE(primal.status == SolveStatus::Optimal);
        REQUIRE(dual.status == SolveStatus::Optimal);
        CHECK(primal.total_cost == doctest::Approx(dual.objective).epsilon(1e-9));
    }
}

TEST_CASE("exact-rational instantiation of both engines") {
    auto q = [](long num, long den) { return Rational(num) / Rational(den); };
    {
        TransportProblem<Rational> pr{{q(3, 2), q(1, 2)}, {q(1, 1), q(1, 1)}, {{q(1, 3), q(2, 1)}, {q(1, 1), q(1, 7)}}};
        auto sol = solve_transportation(pr);
        REQUIRE(sol.status == SolveStatus::Optimal);
        // Ship 1 at cost 1/3, 1/2 at cost 2, 1/2 at cost 1/7: total 1/3 + 1 + 1/14.
        // Alternative bases are costlier; exact arithmetic must hit it dead on.
        CHECK(sol.total_cost == q(1, 3) + q(1, 1) + q(1, 14));
    }
    {
        LinearProgram<Rational> lp;
        lp.num_vars = 2;
        lp.objective = {q(1, 1), q(1, 3)};
        lp.lower = {q(-1, 1), q(-1, 1)};
        lp.upper = {q(1, 1), q(1, 1)};
        lp.rows = {{q(1, 1), q(1, 1)}};
        lp.rhs = {q(3, 2)};
        auto sol = solve_bounded_simplex(lp);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == q(1, 1) + q(1, 3) * q(1, 2));  // x=1, y=1/2
    }
}
