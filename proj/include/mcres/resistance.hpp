#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mcres/chain.hpp"
#include "mcres/matrix.hpp"

namespace mcres {

/// Which formula produced an Omega matrix.
enum class OmegaMethod { fundamental, group_inverse, hitting_time, forest, commute_scaled };

std::string_view to_string(OmegaMethod method) noexcept;

/// Resistance distance between states. Always stored exactly symmetric with
/// an exactly zero diagonal.
class ResistanceMatrix {
public:
    /// Averages `raw` with its transpose and zeroes the diagonal.
    ResistanceMatrix(const DenseMatrix& raw, OmegaMethod method);

    std::size_t size() const noexcept { return omega_.rows(); }
    const DenseMatrix& matrix() const noexcept { return omega_; }
    double operator()(std::size_t i, std::size_t j) const { return omega_(i, j); }
    OmegaMethod method() const noexcept { return method_; }

private:
    DenseMatrix omega_;
    OmegaMethod method_;
};

/// Omega_ij = F_ii + F_jj - F_ij - F_ji.
ResistanceMatrix omega_from_fundamental(const DenseMatrix& f);

/// Same expression on the group inverse; the Pi terms of F cancel.
ResistanceMatrix omega_from_group_inverse(const DenseMatrix& d);

/// Omega_ij = pi_j E_i(tau_j) + pi_i E_j(tau_i).
ResistanceMatrix omega_from_hitting(const DenseMatrix& h, const std::vector<double>& pi);

/// Omega_ij = (E_i(tau_j) + E_j(tau_i)) / n. Only valid for doubly stochastic
/// chains; the caller passes the ergodicity verdict and NotDoublyStochastic
/// is thrown otherwise.
ResistanceMatrix omega_from_commute(const DenseMatrix& h, bool doubly_stochastic);

struct MetricReport {
    bool nonnegative = true;
    bool symmetric = true;
    bool triangle_holds = true;
    /// (i, k, j) maximising Omega_ij - Omega_ik - Omega_kj over distinct triples.
    std::array<std::size_t, 3> worst_triple{0, 0, 0};
    /// That maximum; 0 when n < 3.
    double worst_violation = 0.0;
};

/// Exhaustive scan of all ordered triples of distinct states.
MetricReport metric_check(const DenseMatrix& omega, const Tolerances& tol = default_tolerances());
inline MetricReport metric_check(const ResistanceMatrix& omega, const Tolerances& tol = default_tolerances()) {
    return metric_check(omega.matrix(), tol);
}

/// Entry-wise square root, for the empirical sqrt(Omega) triangle scan.
DenseMatrix sqrt_entries(const ResistanceMatrix& omega);

/// (M, K) with K 1 = 1 and M (K - I) symmetric.
struct SumRulePair {
    DenseMatrix m;
    DenseMatrix k;
};

struct SumRuleResult {
    double lhs = 0.0;  // sum_ij (M(K - I))_ij Omega_ij
    double rhs = 0.0;  // 2 Tr(M (I - K) F)
};

/// Throws HypothesisViolated when K's row sums or the symmetry of M(K - I)
/// are off by more than `tol.sum_rule_hypothesis`.
void check_sum_rule_hypotheses(const SumRulePair& pair, const Tolerances& tol = default_tolerances());

/// Both sides of the general sum rule, computed independently.
SumRuleResult sum_rule(const SumRulePair& pair, const ResistanceMatrix& omega, const DenseMatrix& f,
                       const Tolerances& tol = default_tolerances());

/// Random pair satisfying the hypotheses by construction: A symmetric with
/// zero row sums, M invertible, K = I + M^{-1} A. Deterministic in the seed.
SumRulePair make_sum_rule_pair(std::size_t n, std::uint64_t seed, const Tolerances& tol = default_tolerances());

/// M = diag(pi), K = Pi.
SumRulePair stationary_sum_rule_pair(const ChainAnalysis& a);

/// M = diag(pi), K = P^m. Satisfies the hypotheses only for reversible chains.
SumRulePair power_sum_rule_pair(const StochasticMatrix& p, const ChainAnalysis& a, unsigned m);

struct KirchhoffReport {
    double kirchhoff = 0.0;       // sum_ij Omega_ij
    double multiplicative = 0.0;  // sum_ij pi_i pi_j Omega_ij
    double additive = 0.0;        // sum_ij (pi_i + pi_j) Omega_ij
    double additive_lower = 0.0;  // 2 t_av
    double additive_upper = 0.0;  // 2 t_av (n + 1)
};

KirchhoffReport kirchhoff_indices(const ResistanceMatrix& omega, const std::vector<double>& pi, double t_av);

/// 2 Tr(diag(pi) F - diag(pi) Pi).
double multiplicative_kirchhoff_trace(const ChainAnalysis& a);

/// sum_{i >= 2} 1 / (1 - lambda_i) over the non-unit eigenvalues, summed as
/// complex numbers. The unit eigenvalue dropped is the one closest to 1.
std::complex<double> eigentime_sum(const ComplexSpectrum& spectrum);

struct FosterResult {
    double lhs = 0.0;             // sum_ij pi_j (P^m)_ji Omega_ij
    double lhs_transposed = 0.0;  // sum_ij pi_i (P^m)_ij Omega_ij
    double rhs = 0.0;             // 2 Tr(diag(pi) sum_{j<m} (P^j - Pi))
};

/// Throws NotReversible (detailed balance off by more than
/// `tol.detailed_balance`) and InvalidArgument for m = 0.
FosterResult foster_sum(const StochasticMatrix& p, const ResistanceMatrix& omega, unsigned m,
                        const ChainAnalysis& a, const Tolerances& tol = default_tolerances());

}  // namespace mcres
