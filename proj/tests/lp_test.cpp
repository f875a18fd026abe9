#include "doctest.h"

#include <cmath>

#include "fairclust/lp.hpp"
#include "fairclust/rng.hpp"
#include "oracles.hpp"

using namespace fairclust;
using namespace fairclust::lp;

namespace {

// Random bounded LP: every variable has a finite upper bound, rows lean
// feasible (anchored at a random box point) but are allowed to conflict.
LinearProgram random_lp(Rng& rng, std::size_t vars, std::size_t nrows) {
    LinearProgram prog;
    std::vector<double> anchor(vars);
    for (std::size_t j = 0; j < vars; ++j) {
        const double upper = rng.range(0.5, 3.0);
        prog.add_var(rng.range(-2.0, 2.0), upper);
        anchor[j] = rng.range(0.0, upper);
    }
    for (std::size_t r = 0; r < nrows; ++r) {
        std::vector<std::pair<int, double>> coef;
        double at_anchor = 0.0;
        for (std::size_t j = 0; j < vars; ++j) {
            if (rng.unit() < 0.3) continue;
            const double c = rng.range(-2.0, 2.0);
            coef.emplace_back(static_cast<int>(j), c);
            at_anchor += c * anchor[j];
        }
        if (coef.empty()) continue;
        const double roll = rng.unit();
        const Rel rel = roll < 0.5 ? Rel::LE : (roll < 0.8 ? Rel::GE : Rel::EQ);
        double rhs;
        if (rng.unit() < 0.75) {
            // consistent with the anchor
            const double slack = rng.range(0.0, 1.0);
            rhs = rel == Rel::LE   ? at_anchor + slack
                  : rel == Rel::GE ? at_anchor - slack
                                   : at_anchor;
        } else {
            rhs = rng.range(-2.0, 2.0);
        }
        prog.add_row(std::move(coef), rel, rhs);
    }
    return prog;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("known optimum by hand") {
    // min -x - 2y st x + y <= 4, x <= 3, y <= 2 -> (2, 2), value -6
    LinearProgram prog;
    const int x = prog.add_var(-1.0, 3.0);
    const int y = prog.add_var(-2.0, 2.0);
    prog.add_row({{x, 1.0}, {y, 1.0}}, Rel::LE, 4.0);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == doctest::Approx(-6.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
    CHECK(sol.x[1] == doctest::Approx(2.0));
}

TEST_CASE("equality and GE rows") {
    // min x + y st x + y = 2, x >= 0.5 -> value 2
    LinearProgram prog;
    const int x = prog.add_var(1.0);
    const int y = prog.add_var(1.0);
    prog.add_row({{x, 1.0}, {y, 1.0}}, Rel::EQ, 2.0);
    prog.add_row({{x, 1.0}}, Rel::GE, 0.5);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
    CHECK(sol.x[0] >= 0.5 - 1e-9);
    CHECK(sol.x[0] + sol.x[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible program is reported with a positive residual") {
    LinearProgram prog;
    const int x = prog.add_var(0.0, 1.0);
    prog.add_row({{x, 1.0}}, Rel::GE, 2.0);
    const LpSolution sol = solve(prog);
    CHECK(sol.status == Status::Infeasible);
    CHECK(sol.objective > 0.0);
}

TEST_CASE("unbounded program is detected") {
    LinearProgram prog;
    const int x = prog.add_var(-1.0);
    prog.add_row({{x, -1.0}}, Rel::LE, 0.0);
    const LpSolution sol = solve(prog);
    CHECK(sol.status == Status::Unbounded);
}

TEST_CASE("negative rhs rows are handled") {
    // min x st -x <= -1  ->  x >= 1
    LinearProgram prog;
    const int x = prog.add_var(1.0);
    prog.add_row({{x, -1.0}}, Rel::LE, -1.0);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("duplicate column entries in one row are summed") {
    LinearProgram prog;
    const int x = prog.add_var(-1.0, 10.0);
    prog.add_row({{x, 0.5}, {x, 0.5}}, Rel::LE, 2.0);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.x[0] == doctest::Approx(2.0));
}

TEST_CASE("degenerate programs terminate") {
    // many redundant rows through the origin force degenerate pivots
    LinearProgram prog;
    const int x = prog.add_var(-1.0, 1.0);
    const int y = prog.add_var(-1.0, 1.0);
    for (int i = 0; i < 6; ++i)
        prog.add_row({{x, 1.0 + 0.1 * i}, {y, 1.0}}, Rel::GE, 0.0);
    prog.add_row({{x, 1.0}, {y, 1.0}}, Rel::LE, 1.0);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == doctest::Approx(-1.0));
}

TEST_CASE("random programs match the vertex enumeration oracle") {
    Rng rng(2024);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 25; ++t) {
        const std::size_t vars = 2 + rng.index(4);
        const std::size_t nrows = 1 + rng.index(4);
        const LinearProgram prog = random_lp(rng, vars, nrows);
        const LpSolution sol = solve(prog);
        const testutil::OracleLp ref = testutil::lp_vertex_oracle(prog);
        if (ref.feasible) {
            ++optimal;
            REQUIRE(sol.status == Status::Optimal);
            CHECK(sol.objective == doctest::Approx(ref.objective).epsilon(1e-6));
        } else {
            ++infeasible;
            REQUIRE(sol.status == Status::Infeasible);
        }
    }
    // the generator must exercise both outcomes
    CHECK(optimal > 0);
    CHECK(infeasible > 0);
}

TEST_CASE("transportation agrees with hand values and the oracle") {
    {
        // single cheap lane takes everything it can
        const TransportPlan plan = solve_transportation(
            {1.0, 1.0}, {1.0, 1.0}, {{0.0, 10.0}, {10.0, 0.0}});
        CHECK(plan.value == doctest::Approx(0.0));
        CHECK(plan.flow[0][0] == doctest::Approx(1.0));
        CHECK(plan.flow[1][1] == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(
        solve_transportation({1.0}, {2.0}, {{1.0}}), std::invalid_argument);

    Rng rng(55);
    for (int t = 0; t < 8; ++t) {
        const std::size_t s = 2 + rng.index(2), d = 2 + rng.index(2);
        std::vector<double> supply(s), demand(d);
        double total = 0.0;
        for (auto& v : supply) {
            v = rng.range(0.2, 2.0);
            total += v;
        }
        double dt = 0.0;
        for (std::size_t j = 0; j + 1 < d; ++j) {
            demand[j] = rng.range(0.0, total - dt);
            dt += demand[j];
        }
        demand[d - 1] = total - dt;
        std::vector<std::vector<double>> cost(s, std::vector<double>(d));
        for (auto& row : cost)
            for (auto& v : row) v = rng.range(0.0, 3.0);

        const TransportPlan plan = solve_transportation(supply, demand, cost);
        LinearProgram prog;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < d; ++j)
                prog.add_var(cost[i][j], total);
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<std::pair<int, double>> coef;
            for (std::size_t j = 0; j < d; ++j)
                coef.emplace_back(static_cast<int>(i * d + j), 1.0);
            prog.add_row(std::move(coef), Rel::EQ, supply[i]);
        }
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<std::pair<int, double>> coef;
            for (std::size_t i = 0; i < s; ++i)
                coef.emplace_back(static_cast<int>(i * d + j), 1.0);
            prog.add_row(std::move(coef), Rel::EQ, demand[j]);
        }
        const testutil::OracleLp ref = testutil::lp_vertex_oracle(prog);
        REQUIRE(ref.feasible);
        CHECK(plan.value == doctest::Approx(ref.objective).epsilon(1e-6));

        // marginals hold
        for (std::size_t i = 0; i < s; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += plan.flow[i][j];
            CHECK(row == doctest::Approx(supply[i]));
        }
    }
}

TEST_CASE("solution vector respects bounds and rows") {
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        const LinearProgram prog = random_lp(rng, 3 + rng.index(3), 2 + rng.index(3));
        const LpSolution sol = solve(prog);
        if (sol.status != Status::Optimal) continue;
        for (std::size_t j = 0; j < prog.num_vars(); ++j) {
            CHECK(sol.x[j] >= -1e-7);
            CHECK(sol.x[j] <= prog.uppers()[j] + 1e-7);
        }
        for (const auto& row : prog.rows()) {
            double lhs = 0.0;
            for (const auto& [j, v] : row.coef)
                lhs += v * sol.x[static_cast<std::size_t>(j)];
            if (row.rel == Rel::LE) CHECK(lhs <= row.rhs + 1e-6);
            if (row.rel == Rel::GE) CHECK(lhs >= row.rhs - 1e-6);
            if (row.rel == Rel::EQ) CHECK(lhs == doctest::Approx(row.rhs).epsilon(1e-6));
        }
    }
}

}  // TEST_SUITE
