#include "mcres/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "mcres/error.hpp"

namespace mcres {

namespace {

struct GraphStructure {
    bool strongly_connected = false;
    int period = 1;
};

std::vector<int> bfs_levels(const DenseMatrix& p, bool reverse) {
    const std::size_t n = p.rows();
    std::vector<int> level(n, -1);
    std::queue<std::size_t> frontier;
    level[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t v = 0; v < n; ++v) {
            const double w = reverse ? p(v, u) : p(u, v);
            if (w > 0.0 && level[v] < 0) {
                level[v] = level[u] + 1;
                frontier.push(v);
            }
        }
    }
    return level;
}

// Period of the class containing state 0: gcd over arcs (i, j) inside the
// reached set of level(i) + 1 - level(j).
GraphStructure graph_structure(const DenseMatrix& p) {
    const std::size_t n = p.rows();
    const auto forward = bfs_levels(p, false);
    const auto backward = bfs_levels(p, true);
    const auto reached = [](int l) { return l >= 0; };

    GraphStructure g;
    g.strongly_connected = std::all_of(forward.begin(), forward.end(), reached) &&
                           std::all_of(backward.begin(), backward.end(), reached);

    int d = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (forward[i] < 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (p(i, j) > 0.0 && forward[j] >= 0) d = std::gcd(d, std::abs(forward[i] + 1 - forward[j]));
        }
    }
    g.period = d == 0 ? 1 : d;
    return g;
}

void require_ergodic(const StochasticMatrix& p) {
    const auto g = graph_structure(p.matrix());
    if (!g.strongly_connected) throw Error(ErrorKind::NotErgodic, "chain is reducible");
    if (g.period != 1) throw Error(ErrorKind::NotErgodic, "chain has period " + std::to_string(g.period));
}

double detailed_balance_residual(const DenseMatrix& p, const std::vector<double>& pi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = i + 1; j < p.cols(); ++j)
            worst = std::max(worst, std::abs(pi[i] * p(i, j) - pi[j] * p(j, i)));
    return worst;
}

}  // namespace

StochasticMatrix validate(const DenseMatrix& raw, std::vector<std::string> labels, const Tolerances& tol) {
    if (!raw.is_square() || raw.rows() == 0) {
        throw Error(ErrorKind::NotSquare, "transition matrix is " + std::to_string(raw.rows()) + "x" +
                                              std::to_string(raw.cols()));
    }
    if (!raw.all_finite()) throw Error(ErrorKind::NonFiniteEntry, "transition matrix has NaN or Inf");
    if (!labels.empty() && labels.size() != raw.rows()) {
        throw Error(ErrorKind::ShapeMismatch, std::to_string(labels.size()) + " labels for " +
                                                  std::to_string(raw.rows()) + " states");
    }

    DenseMatrix p = raw;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (p(i, j) < 0.0) {
                throw Error(ErrorKind::NegativeEntry, "P[" + std::to_string(i) + "][" + std::to_string(j) +
                                                          "] = " + std::to_string(p(i, j)));
            }
            sum += p(i, j);
        }
        if (std::abs(sum - 1.0) > tol.row_sum_input) {
            throw Error(ErrorKind::RowSumOutOfTolerance,
                        "row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
        for (double& v : p.row(i)) v /= sum;
    }
    return StochasticMatrix(std::move(p), std::move(labels));
}

ErgodicityReport check_ergodicity(const StochasticMatrix& p, const Tolerances& tol) {
    const auto g = graph_structure(p.matrix());
    ErgodicityReport r;
    r.strongly_connected = g.strongly_connected;
    r.period = g.period;
    r.is_ergodic = g.strongly_connected && g.period == 1;
    const auto cols = p.matrix().col_sums();
    r.is_doubly_stochastic =
        std::all_of(cols.begin(), cols.end(), [&](double c) { return std::abs(c - 1.0) <= tol.row_sum; });
    if (r.is_ergodic) {
        const auto pi = stationary(p, tol);
        r.is_reversible = detailed_balance_residual(p.matrix(), pi) < tol.detailed_balance;
    }
    return r;
}

std::vector<double> stationary(const StochasticMatrix& p, const Tolerances& tol) {
    require_ergodic(p);
    const std::size_t n = p.size();

    // (I - P)^T pi^T = 0 with the last equation swapped for sum(pi) = 1.
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - p(j, i);
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    DenseMatrix b(n, 1);
    b(n - 1, 0) = 1.0;

    const DenseMatrix x = lu_solve(a, b, tol);
    std::vector<double> pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i] = x(i, 0);
        if (!(pi[i] > 0.0)) {
            throw Error(ErrorKind::NotErgodic, "stationary mass of state " + std::to_string(i) +
                                                   " is not positive");
        }
    }
    return pi;
}

DenseMatrix fundamental_matrix(const StochasticMatrix& p, const std::vector<double>& pi, const Tolerances& tol) {
    const std::size_t n = p.size();
    DenseMatrix a = DenseMatrix::identity(n) - p.matrix() + DenseMatrix::repeated_row(pi);
    return inverse(a, tol);
}

DenseMatrix group_inverse(const DenseMatrix& f, const DenseMatrix& pi_matrix) { return f - pi_matrix; }

DenseMatrix hitting_times(const DenseMatrix& f, const std::vector<double>& pi) {
    const std::size_t n = f.rows();
    DenseMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = i == j ? 0.0 : (f(j, j) - f(i, j)) / pi[j];
    return h;
}

DenseMatrix hitting_times_oracle(const StochasticMatrix& p, const Tolerances& tol) {
    require_ergodic(p);
    const std::size_t n = p.size();
    DenseMatrix h(n, n);
    if (n == 1) return h;

    for (std::size_t target = 0; target < n; ++target) {
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < n; ++s)
            if (s != target) rest.push_back(s);

        DenseMatrix a(n - 1, n - 1);
        DenseMatrix ones(n - 1, 1, 1.0);
        for (std::size_t r = 0; r < rest.size(); ++r)
            for (std::size_t c = 0; c < rest.size(); ++c)
                a(r, c) = (r == c ? 1.0 : 0.0) - p(rest[r], rest[c]);

        const DenseMatrix x = lu_solve(a, ones, tol);
        for (std::size_t r = 0; r < rest.size(); ++r) h(rest[r], target) = x(r, 0);
    }
    return h;
}

DenseMatrix commute_times(const DenseMatrix& h) { return h + h.transpose(); }

double kemeny_constant(const DenseMatrix& h, const std::vector<double>& pi, const Tolerances& tol) {
    const std::size_t n = h.rows();
    std::vector<double> per_start(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) per_start[i] += pi[j] * h(i, j);

    const double t_av = per_start.front();
    double spread = 0.0;
    for (double v : per_start) spread = std::max(spread, std::abs(v - t_av));
    if (spread > tol.random_target * std::max(1.0, std::abs(t_av))) {
        throw Error(ErrorKind::RandomTargetViolation,
                    "sum_j pi_j E_i(tau_j) varies with i by " + std::to_string(spread));
    }
    return t_av;
}

ChainAnalysis analyze(const StochasticMatrix& p, const Tolerances& tol) {
    ChainAnalysis a;
    a.pi = stationary(p, tol);
    a.pi_matrix = DenseMatrix::repeated_row(a.pi);
    a.fundamental = fundamental_matrix(p, a.pi, tol);
    a.group_inverse = group_inverse(a.fundamental, a.pi_matrix);
    a.hitting = hitting_times(a.fundamental, a.pi);
    a.kemeny = kemeny_constant(a.hitting, a.pi, tol);
    return a;
}

ChainResiduals chain_residuals(const StochasticMatrix& p, const ChainAnalysis& a) {
    const std::size_t n = p.size();
    const DenseMatrix id = DenseMatrix::identity(n);
    const DenseMatrix lap = id - p.matrix();
    const DenseMatrix& f = a.fundamental;
    const DenseMatrix& d = a.group_inverse;

    const auto max_abs_of = [](const std::vector<double>& v, double shift) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x - shift));
        return m;
    };

    ChainResiduals r;
    const auto pi_p = left_multiply(a.pi, p.matrix());
    for (std::size_t j = 0; j < n; ++j) r.stationary = std::max(r.stationary, std::abs(pi_p[j] - a.pi[j]));
    r.pi_sum = std::abs(std::accumulate(a.pi.begin(), a.pi.end(), 0.0) - 1.0);
    r.fundamental_inverse = max_abs_diff(f * (lap + a.pi_matrix), id);
    r.f_equals_pi_plus_d = max_abs_diff(f, a.pi_matrix + d);
    r.f_row_sums = max_abs_of(f.row_sums(), 1.0);
    r.d_row_sums = max_abs_of(d.row_sums(), 0.0);
    r.pi_f = max_abs_diff(a.pi_matrix * f, a.pi_matrix);
    r.pi_d = (a.pi_matrix * d).max_abs();
    r.axiom_ada = max_abs_diff(lap * d * lap, lap);
    r.axiom_dad = max_abs_diff(d * lap * d, d);
    r.axiom_commute = max_abs_diff(lap * d, d * lap);

    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a.pi[j] * a.hitting(i, j);
        r.random_target = std::max(r.random_target, std::abs(s - a.kemeny));
    }
    r.kemeny_trace = std::abs(a.kemeny - trace(d));
    return r;
}

}  // namespace mcres
