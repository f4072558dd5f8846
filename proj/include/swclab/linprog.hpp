#pragma once

// Small dense two-phase simplex. Problem sizes in this project stay in the
// hundreds of variables, so a full tableau with Bland's rule (finite, no
// cycling) is the right tradeoff over a revised implementation.

#include <vector>

namespace swclab::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterLimit };

struct Result {
    Status status = Status::IterLimit;
    std::vector<double> x;  // structural variables only
    double objective = 0.0;
};

// min c.x  subject to  A_i.x (rel_i) b_i  and  x >= 0,
// where rel_i is -1 for <=, 0 for ==, +1 for >=.
Result solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
             const std::vector<int>& rel, const std::vector<double>& c, int max_iters = 50000);

}  // namespace swclab::lp
