#include "fairclust/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fairclust/kernels.hpp"

namespace fairclust::lp {

int LinearProgram::add_var(double cost, double upper) {
    if (upper < 0.0) throw std::invalid_argument("variable upper bound below 0");
    cost_.push_back(cost);
    upper_.push_back(upper);
    return static_cast<int>(cost_.size()) - 1;
}

void LinearProgram::add_row(std::vector<std::pair<int, double>> coef, Rel rel,
                            double rhs) {
    for (const auto& [j, v] : coef) {
        (void)v;
        if (j < 0 || static_cast<std::size_t>(j) >= cost_.size())
            throw std::invalid_argument("row references unknown variable");
    }
    rows_.push_back(RowRef{std::move(coef), rel, rhs});
}

namespace {

struct DenseRow {
    std::vector<double> a;
    Rel rel;
    double rhs;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt) {
    const std::size_t n = lp.num_vars();
    const double tol = opt.tol;

    std::vector<DenseRow> rows;
    rows.reserve(lp.num_rows());
    for (const auto& r : lp.rows()) {
        DenseRow dr{std::vector<double>(n, 0.0), r.rel, r.rhs};
        for (const auto& [j, v] : r.coef) dr.a[static_cast<std::size_t>(j)] += v;
        rows.push_back(std::move(dr));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isfinite(lp.uppers()[j])) {
            DenseRow dr{std::vector<double>(n, 0.0), Rel::LE, lp.uppers()[j]};
            dr.a[j] = 1.0;
            rows.push_back(std::move(dr));
        }
    }
    for (auto& r : rows) {
        if (r.rhs < 0.0) {
            for (double& v : r.a) v = -v;
            r.rhs = -r.rhs;
            if (r.rel == Rel::LE)
                r.rel = Rel::GE;
            else if (r.rel == Rel::GE)
                r.rel = Rel::LE;
        }
    }

    const std::size_t m = rows.size();

    // Column layout: structural vars, then one slack or surplus per
    // inequality row, then one artificial per GE/EQ row.
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Rel::EQ) ++n_slack;
        if (r.rel != Rel::LE) ++n_art;
    }
    const std::size_t total = n + n_slack + n_art;
    const std::size_t first_art = n + n_slack;
    const std::size_t cols = total + 1;
    const std::size_t rhs_col = total;

    // Body rows, then the cost row, then the phase-1 row.
    std::vector<double> tab((m + 2) * cols, 0.0);
    std::vector<int> basis(m, -1);

    std::size_t next_slack = n, next_art = first_art;
    for (std::size_t r = 0; r < m; ++r) {
        double* row = tab.data() + r * cols;
        std::copy(rows[r].a.begin(), rows[r].a.end(), row);
        row[rhs_col] = rows[r].rhs;
        switch (rows[r].rel) {
            case Rel::LE:
                row[next_slack] = 1.0;
                basis[r] = static_cast<int>(next_slack++);
                break;
            case Rel::GE:
                row[next_slack++] = -1.0;
                row[next_art] = 1.0;
                basis[r] = static_cast<int>(next_art++);
                break;
            case Rel::EQ:
                row[next_art] = 1.0;
                basis[r] = static_cast<int>(next_art++);
                break;
        }
    }

    double* cost_row = tab.data() + m * cols;
    for (std::size_t j = 0; j < n; ++j) cost_row[j] = lp.costs()[j];

    double* p1_row = tab.data() + (m + 1) * cols;
    for (std::size_t r = 0; r < m; ++r) {
        if (static_cast<std::size_t>(basis[r]) < first_art) continue;
        const double* row = tab.data() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) p1_row[c] -= row[c];
    }
    for (std::size_t a = first_art; a < total; ++a) p1_row[a] = 0.0;

    std::size_t max_pivots = opt.max_pivots;
    if (max_pivots == 0) max_pivots = 2000 + 40 * (m + total);

    std::size_t pivots = 0;
    bool bland = false;
    std::size_t stall = 0;

    // Artificial columns are never entering candidates: they start basic,
    // and once pivoted out they may be dropped without affecting the phase-1
    // optimum, so infeasibility detection stays exact.
    auto iterate = [&](std::size_t obj_row, std::size_t elim_rows) -> Status {
        double* obj = tab.data() + obj_row * cols;
        double prev_val = -obj[rhs_col];
        const std::size_t limit = first_art;
        for (;;) {
            int enter = -1;
            if (bland) {
                for (std::size_t j = 0; j < limit; ++j)
                    if (obj[j] < -tol) {
                        enter = static_cast<int>(j);
                        break;
                    }
            } else {
                double best = -tol;
                for (std::size_t j = 0; j < limit; ++j)
                    if (obj[j] < best) {
                        best = obj[j];
                        enter = static_cast<int>(j);
                    }
            }
            if (enter < 0) return Status::Optimal;

            int leave = -1;
            double best_ratio = kInf;
            for (std::size_t r = 0; r < m; ++r) {
                const double a = tab[r * cols + static_cast<std::size_t>(enter)];
                if (a <= tol) continue;
                const double ratio = tab[r * cols + rhs_col] / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     (leave < 0 || basis[r] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = static_cast<int>(r);
                }
            }
            if (leave < 0) return Status::Unbounded;

            if (pivots >= max_pivots)
                throw SolverBreakdown("simplex exceeded its pivot cap");
            kernels::pivot_eliminate(tab.data(), elim_rows, cols,
                                     static_cast<std::size_t>(leave),
                                     static_cast<std::size_t>(enter));
            basis[leave] = enter;
            ++pivots;

            const double val = -obj[rhs_col];
            if (val > prev_val - 1e-12) {
                if (++stall > opt.stall_limit) bland = true;
            } else {
                stall = 0;
            }
            prev_val = val;
        }
    };

    LpSolution sol;

    if (n_art > 0) {
        iterate(m + 1, m + 2);
        double b_scale = 1.0;
        for (const auto& r : rows) b_scale = std::max(b_scale, std::abs(r.rhs));
        const double p1_val = -p1_row[rhs_col];
        if (p1_val > tol * b_scale) {
            sol.status = Status::Infeasible;
            sol.objective = p1_val;
            sol.pivots = pivots;
            return sol;
        }
        // Pivot any leftover zero-level artificials out of the basis. Rows
        // where that is impossible are redundant and stay inert: every
        // non-artificial coefficient in them is within tol of zero.
        for (std::size_t r = 0; r < m; ++r) {
            if (static_cast<std::size_t>(basis[r]) < first_art) continue;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (std::abs(tab[r * cols + j]) > tol) {
                    kernels::pivot_eliminate(tab.data(), m + 1, cols, r, j);
                    basis[r] = static_cast<int>(j);
                    break;
                }
            }
        }
    }

    bland = false;
    stall = 0;
    const Status st = iterate(m, m + 1);
    sol.status = st;
    sol.pivots = pivots;
    if (st == Status::Unbounded) {
        sol.objective = -kInf;
        return sol;
    }
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const auto b = static_cast<std::size_t>(basis[r]);
        if (b < n) sol.x[b] = std::max(0.0, tab[r * cols + rhs_col]);
    }
    sol.objective = -cost_row[rhs_col];
    return sol;
}

TransportPlan solve_transportation(const std::vector<double>& supply,
                                   const std::vector<double>& demand,
                                   const std::vector<std::vector<double>>& cost,
                                   double tol) {
    const std::size_t s = supply.size(), d = demand.size();
    if (cost.size() != s) throw std::invalid_argument("cost rows != supplies");
    double total_s = 0.0, total_d = 0.0;
    for (double v : supply) {
        if (v < 0.0) throw std::invalid_argument("negative supply");
        total_s += v;
    }
    for (double v : demand) {
        if (v < 0.0) throw std::invalid_argument("negative demand");
        total_d += v;
    }
    if (std::abs(total_s - total_d) > tol)
        throw std::invalid_argument("transportation instance is unbalanced");

    LinearProgram prog;
    for (std::size_t i = 0; i < s; ++i) {
        if (cost[i].size() != d)
            throw std::invalid_argument("cost columns != demands");
        for (std::size_t j = 0; j < d; ++j) prog.add_var(cost[i][j]);
    }
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

    const LpSolution sol = solve(prog);
    if (sol.status != Status::Optimal)
        throw SolverBreakdown("balanced transportation instance did not solve");

    TransportPlan plan;
    plan.value = sol.objective;
    plan.flow.assign(s, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < d; ++j) plan.flow[i][j] = sol.x[i * d + j];
    return plan;
}

void dump(const LinearProgram& lp, std::ostream& os) {
    os << "min";
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (lp.costs()[j] != 0.0) os << " + " << lp.costs()[j] << " x" << j;
    os << "\n";
    for (const auto& r : lp.rows()) {
        bool first = true;
        for (const auto& [j, v] : r.coef) {
            os << (first ? "  " : " + ") << v << " x" << j;
            first = false;
        }
        os << (r.rel == Rel::LE ? " <= " : r.rel == Rel::GE ? " >= " : " = ")
           << r.rhs << "\n";
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (std::isfinite(lp.uppers()[j]))
            os << "  x" << j << " <= " << lp.uppers()[j] << "\n";
}

}  // namespace fairclust::lp
