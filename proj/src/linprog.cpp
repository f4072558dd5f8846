#include "swclab/linprog.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace swclab::lp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;

struct Tableau {
    int rows = 0;  // constraint rows
    int cols = 0;  // columns incl. rhs
    std::vector<double> a;  // (rows+1) x cols, last row is the cost row
    std::vector<int> basis;

    double& at(int r, int c) { return a[size_t(r) * cols + c]; }
    double at(int r, int c) const { return a[size_t(r) * cols + c]; }

    void pivot(int pr, int pc) {
        const double pv = at(pr, pc);
        const double inv = 1.0 / pv;
        for (int c = 0; c < cols; ++c) at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (int r = 0; r <= rows; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (std::fabs(f) < 1e-300) continue;
            for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis[size_t(pr)] = pc;
    }
};

// Bland's rule iteration on the maintained cost row. `allowed` masks columns
// that may enter (artificials are blocked in phase 2).
Status iterate(Tableau& t, const std::vector<char>& allowed, int& iters_left) {
    const int rhs = t.cols - 1;
    while (iters_left-- > 0) {
        int enter = -1;
        for (int c = 0; c < rhs; ++c) {
            if (!allowed[size_t(c)]) continue;
            if (t.at(t.rows, c) < -kCostTol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return Status::Optimal;

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < t.rows; ++r) {
            const double coef = t.at(r, enter);
            if (coef <= kPivotTol) continue;
            const double ratio = t.at(r, rhs) / coef;
            if (leave < 0 || ratio < best_ratio - 1e-15 ||
                (std::fabs(ratio - best_ratio) <= 1e-15 && t.basis[size_t(r)] < t.basis[size_t(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return Status::Unbounded;
        t.pivot(leave, enter);
    }
    return Status::IterLimit;
}

void install_cost_row(Tableau& t, const std::vector<double>& cost) {
    const int rhs = t.cols - 1;
    for (int c = 0; c < rhs; ++c) t.at(t.rows, c) = cost[size_t(c)];
    t.at(t.rows, rhs) = 0.0;
    for (int r = 0; r < t.rows; ++r) {
        const double cb = cost[size_t(t.basis[size_t(r)])];
        if (cb == 0.0) continue;
        for (int c = 0; c < t.cols; ++c) t.at(t.rows, c) -= cb * t.at(r, c);
    }
}

}  // namespace

Result solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
             const std::vector<int>& rel, const std::vector<double>& c, int max_iters) {
    const int m = int(A.size());
    const int n = int(c.size());
    if (int(b.size()) != m || int(rel.size()) != m) throw std::invalid_argument("lp::solve: shape mismatch");
    for (const auto& row : A)
        if (int(row.size()) != n) throw std::invalid_argument("lp::solve: row width mismatch");

    // Normalize to b >= 0 by flipping rows.
    std::vector<std::vector<double>> Ar = A;
    std::vector<double> br = b;
    std::vector<int> rr = rel;
    for (int i = 0; i < m; ++i) {
        if (br[size_t(i)] < 0.0) {
            br[size_t(i)] = -br[size_t(i)];
            rr[size_t(i)] = -rr[size_t(i)];
            for (double& v : Ar[size_t(i)]) v = -v;
        }
    }

    // Column layout: structural | slack/surplus | artificial | rhs.
    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (rr[size_t(i)] != 0) ++n_slack;
        if (rr[size_t(i)] >= 0) ++n_art;  // == and >= rows need artificials
    }
    const int total = n + n_slack + n_art;

    Tableau t;
    t.rows = m;
    t.cols = total + 1;
    t.a.assign(size_t(m + 1) * t.cols, 0.0);
    t.basis.assign(size_t(m), -1);

    int slack_at = n, art_at = n + n_slack;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.at(i, j) = Ar[size_t(i)][size_t(j)];
        t.at(i, total) = br[size_t(i)];
        if (rr[size_t(i)] < 0) {  // <= : slack basic
            t.at(i, slack_at) = 1.0;
            t.basis[size_t(i)] = slack_at++;
        } else if (rr[size_t(i)] > 0) {  // >= : surplus + artificial
            t.at(i, slack_at) = -1.0;
            ++slack_at;
            t.at(i, art_at) = 1.0;
            t.basis[size_t(i)] = art_at++;
        } else {  // == : artificial
            t.at(i, art_at) = 1.0;
            t.basis[size_t(i)] = art_at++;
        }
    }

    int iters_left = max_iters;
    std::vector<char> allowed(size_t(total), 1);

    if (n_art > 0) {
        std::vector<double> phase1(size_t(total), 0.0);
        for (int j = n + n_slack; j < total; ++j) phase1[size_t(j)] = 1.0;
        install_cost_row(t, phase1);
        Status st = iterate(t, allowed, iters_left);
        if (st == Status::IterLimit) return {Status::IterLimit, {}, 0.0};
        if (st == Status::Unbounded) return {Status::Infeasible, {}, 0.0};  // phase 1 is bounded below
        if (t.at(t.rows, total) < -kFeasTol) return {Status::Infeasible, {}, 0.0};

        // Drive leftover artificials out of the basis where possible.
        for (int r = 0; r < m; ++r) {
            if (t.basis[size_t(r)] < n + n_slack) continue;
            int pc = -1;
            for (int ccol = 0; ccol < n + n_slack; ++ccol)
                if (std::fabs(t.at(r, ccol)) > 1e-8) {
                    pc = ccol;
                    break;
                }
            if (pc >= 0) t.pivot(r, pc);
            // otherwise the row is redundant; the artificial stays basic at zero
        }
    }

    for (int j = n + n_slack; j < total; ++j) allowed[size_t(j)] = 0;

    std::vector<double> phase2(size_t(total), 0.0);
    for (int j = 0; j < n; ++j) phase2[size_t(j)] = c[size_t(j)];
    install_cost_row(t, phase2);
    Status st = iterate(t, allowed, iters_left);
    if (st != Status::Optimal) return {st, {}, 0.0};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(size_t(n), 0.0);
    for (int r = 0; r < m; ++r) {
        const int bv = t.basis[size_t(r)];
        if (bv < n) res.x[size_t(bv)] = t.at(r, total);
    }
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += c[size_t(j)] * res.x[size_t(j)];
    res.objective = obj;
    return res;
}

}  // namespace swclab::lp
