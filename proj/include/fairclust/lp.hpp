#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairclust::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Rel { LE, GE, EQ };

enum class Status { Optimal, Infeasible, Unbounded };

// Thrown when the simplex hits its pivot cap without converging. Kept
// separate from Status::Infeasible so feasibility probes never mistake a
// solver failure for an infeasible program.
struct SolverBreakdown : std::runtime_error {
    explicit SolverBreakdown(const std::string& what) : std::runtime_error(what) {}
};

// Minimization over x >= 0 with optional finite upper bounds per variable.
// Rows are stored sparsely; duplicate column entries in one row are summed.
class LinearProgram {
  public:
    struct RowRef {
        std::vector<std::pair<int, double>> coef;
        Rel rel;
        double rhs;
    };

    int add_var(double cost, double upper = kInf);
    void add_row(std::vector<std::pair<int, double>> coef, Rel rel, double rhs);

    std::size_t num_vars() const { return cost_.size(); }
    std::size_t num_rows() const { return rows_.size(); }
    const std::vector<double>& costs() const { return cost_; }
    const std::vector<double>& uppers() const { return upper_; }
    const std::vector<RowRef>& rows() const { return rows_; }

  private:
    std::vector<double> cost_;
    std::vector<double> upper_;
    std::vector<RowRef> rows_;
};

struct SimplexOptions {
    double tol = 1e-7;
    // 0 means "choose from problem size". The cap is a safety net; hitting it
    // raises SolverBreakdown.
    std::size_t max_pivots = 0;
    // Consecutive degenerate pivots tolerated before pricing switches from
    // most-negative-reduced-cost to Bland's rule for the rest of the solve.
    std::size_t stall_limit = 64;
};

struct LpSolution {
    Status status = Status::Optimal;
    std::vector<double> x;      // empty unless Optimal
    double objective = 0.0;     // optimal value, or residual infeasibility for
                                // Status::Infeasible (phase-1 objective)
    std::size_t pivots = 0;
};

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt = {});

// Balanced transportation problem: minimize sum_ij cost[i][j] * f[i][j]
// subject to row sums = supply, column sums = demand, f >= 0. Throws if the
// totals disagree beyond tol.
struct TransportPlan {
    double value = 0.0;
    std::vector<std::vector<double>> flow;
};

TransportPlan solve_transportation(const std::vector<double>& supply,
                                   const std::vector<double>& demand,
                                   const std::vector<std::vector<double>>& cost,
                                   double tol = 1e-9);

// Human-readable dump of the program (one line per row) for debugging.
void dump(const LinearProgram& lp, std::ostream& os);

}  // namespace fairclust::lp
