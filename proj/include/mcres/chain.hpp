#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcres/matrix.hpp"
#include "mcres/tolerances.hpp"

namespace mcres {

/// Row-stochastic transition matrix. Only constructible through `validate`,
/// so holding one means: square, finite, non-negative, rows summing to 1.
class StochasticMatrix {
public:
    std::size_t size() const noexcept { return p_.rows(); }
    const DenseMatrix& matrix() const noexcept { return p_; }
    double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    friend StochasticMatrix validate(const DenseMatrix& raw, std::vector<std::string> labels,
                                     const Tolerances& tol);

private:
    StochasticMatrix(DenseMatrix p, std::vector<std::string> labels)
        : p_(std::move(p)), labels_(std::move(labels)) {}

    DenseMatrix p_;
    std::vector<std::string> labels_;
};

/// Checks a raw matrix and divides every row by its sum. Rows may deviate
/// from 1 by at most `tol.row_sum_input` before rejection.
StochasticMatrix validate(const DenseMatrix& raw, std::vector<std::string> labels = {},
                          const Tolerances& tol = default_tolerances());

struct ErgodicityReport {
    bool strongly_connected = false;
    int period = 1;
    bool is_ergodic = false;
    bool is_doubly_stochastic = false;
    /// Detailed balance against the computed stationary law; absent unless ergodic.
    std::optional<bool> is_reversible;
};

ErgodicityReport check_ergodicity(const StochasticMatrix& p, const Tolerances& tol = default_tolerances());

/// Solves pi (I - P) = 0, sum(pi) = 1 directly. Throws NotErgodic.
std::vector<double> stationary(const StochasticMatrix& p, const Tolerances& tol = default_tolerances());

/// F = (I - P + Pi)^{-1}.
DenseMatrix fundamental_matrix(const StochasticMatrix& p, const std::vector<double>& pi,
                               const Tolerances& tol = default_tolerances());

/// Group inverse of I - P, obtained as D = F - Pi.
DenseMatrix group_inverse(const DenseMatrix& f, const DenseMatrix& pi_matrix);

/// H[i][j] = E_i(tau_j) = (F_jj - F_ij) / pi_j, with an exact zero diagonal.
DenseMatrix hitting_times(const DenseMatrix& f, const std::vector<double>& pi);

/// Independent route to H: for each target j solve h = 1 + P_{-j} h on the
/// remaining states (first-step equations).
DenseMatrix hitting_times_oracle(const StochasticMatrix& p, const Tolerances& tol = default_tolerances());

/// t_c[i][j] = H[i][j] + H[j][i].
DenseMatrix commute_times(const DenseMatrix& h);

/// Kemeny's constant sum_j pi_j H[i][j]. Throws RandomTargetViolation when the
/// value depends on i by more than `tol.random_target * max(1, t_av)`.
double kemeny_constant(const DenseMatrix& h, const std::vector<double>& pi,
                       const Tolerances& tol = default_tolerances());

/// Everything derived from one ergodic chain, computed once.
struct ChainAnalysis {
    std::vector<double> pi;
    DenseMatrix pi_matrix;
    DenseMatrix fundamental;
    DenseMatrix group_inverse;
    DenseMatrix hitting;
    double kemeny = 0.0;
};

/// Throws NotErgodic for reducible or periodic chains.
ChainAnalysis analyze(const StochasticMatrix& p, const Tolerances& tol = default_tolerances());

/// Max-norm residuals of the defining relations of a chain analysis.
struct ChainResiduals {
    double stationary = 0.0;        // |pi P - pi|
    double pi_sum = 0.0;            // |sum pi - 1|
    double fundamental_inverse = 0.0; // |F (I - P + Pi) - I|
    double f_equals_pi_plus_d = 0.0;
    double f_row_sums = 0.0;        // |F 1 - 1|
    double d_row_sums = 0.0;        // |D 1|
    double pi_f = 0.0;              // |Pi F - Pi|
    double pi_d = 0.0;              // |Pi D|
    double axiom_ada = 0.0;         // |(I-P) D (I-P) - (I-P)|
    double axiom_dad = 0.0;         // |D (I-P) D - D|
    double axiom_commute = 0.0;     // |(I-P) D - D (I-P)|
    double random_target = 0.0;     // max_i |sum_j pi_j H[i][j] - t_av|
    double kemeny_trace = 0.0;      // |t_av - Tr(D)|
};

ChainResiduals chain_residuals(const StochasticMatrix& p, const ChainAnalysis& a);

}  // namespace mcres
