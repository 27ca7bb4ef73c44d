#include "mcres/resistance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mcres/error.hpp"
#include "mcres/rng.hpp"

namespace mcres {

namespace {

DenseMatrix omega_from_square_kernel(const DenseMatrix& g) {
    const std::size_t n = g.rows();
    DenseMatrix omega(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) omega(i, j) = g(i, i) + g(j, j) - g(i, j) - g(j, i);
    return omega;
}

}  // namespace

std::string_view to_string(OmegaMethod method) noexcept {
    switch (method) {
        case OmegaMethod::fundamental: return "fundamental";
        case OmegaMethod::group_inverse: return "group_inverse";
        case OmegaMethod::hitting_time: return "hitting_time";
        case OmegaMethod::forest: return "forest";
        case OmegaMethod::commute_scaled: return "commute_scaled";
    }
    return "unknown";
}

ResistanceMatrix::ResistanceMatrix(const DenseMatrix& raw, OmegaMethod method) : omega_(raw), method_(method) {
    if (!raw.is_square()) throw Error(ErrorKind::NotSquare, "resistance matrix must be square");
    const std::size_t n = raw.rows();
    for (std::size_t i = 0; i < n; ++i) {
        omega_(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) omega_(i, j) = omega_(j, i) = 0.5 * (raw(i, j) + raw(j, i));
    }
}

ResistanceMatrix omega_from_fundamental(const DenseMatrix& f) {
    return {omega_from_square_kernel(f), OmegaMethod::fundamental};
}

ResistanceMatrix omega_from_group_inverse(const DenseMatrix& d) {
    return {omega_from_square_kernel(d), OmegaMethod::group_inverse};
}

ResistanceMatrix omega_from_hitting(const DenseMatrix& h, const std::vector<double>& pi) {
    const std::size_t n = h.rows();
    DenseMatrix omega(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) omega(i, j) = pi[j] * h(i, j) + pi[i] * h(j, i);
    return {omega, OmegaMethod::hitting_time};
}

ResistanceMatrix omega_from_commute(const DenseMatrix& h, bool doubly_stochastic) {
    if (!doubly_stochastic) {
        throw Error(ErrorKind::NotDoublyStochastic, "commute-time representation needs a doubly stochastic chain");
    }
    DenseMatrix omega = commute_times(h);
    omega *= 1.0 / static_cast<double>(h.rows());
    return {omega, OmegaMethod::commute_scaled};
}

MetricReport metric_check(const DenseMatrix& omega, const Tolerances& tol) {
    const std::size_t n = omega.rows();
    MetricReport r;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = omega(i, j);
            if (i == j ? v != 0.0 : !(v > 0.0)) r.nonnegative = false;
            if (v != omega(j, i)) r.symmetric = false;
        }
    }

    if (n < 3) return r;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                // Parenthesised so (i,k,j) and (j,k,i) round identically.
                const double violation = omega(i, j) - (omega(i, k) + omega(k, j));
                if (violation > worst) {
                    worst = violation;
                    r.worst_triple = {i, k, j};
                }
            }
        }
    }
    r.worst_violation = worst;
    r.triangle_holds = worst <= tol.triangle;
    return r;
}

DenseMatrix sqrt_entries(const ResistanceMatrix& omega) {
    DenseMatrix s = omega.matrix();
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (double& v : s.row(i)) v = std::sqrt(v);
    return s;
}

void check_sum_rule_hypotheses(const SumRulePair& pair, const Tolerances& tol) {
    const std::size_t n = pair.k.rows();
    if (!pair.k.is_square() || !pair.m.is_square() || pair.m.rows() != n) {
        throw Error(ErrorKind::ShapeMismatch, "M and K must be square of the same size");
    }
    for (double s : pair.k.row_sums()) {
        if (std::abs(s - 1.0) > tol.sum_rule_hypothesis) {
            throw Error(ErrorKind::HypothesisViolated, "K has a row summing to " + std::to_string(s));
        }
    }
    const DenseMatrix a = pair.m * (pair.k - DenseMatrix::identity(n));
    const double asym = max_abs_diff(a, a.transpose());
    if (asym > tol.sum_rule_hypothesis) {
        throw Error(ErrorKind::HypothesisViolated, "M(K - I) is asymmetric by " + std::to_string(asym));
    }
}

SumRuleResult sum_rule(const SumRulePair& pair, const ResistanceMatrix& omega, const DenseMatrix& f,
                       const Tolerances& tol) {
    check_sum_rule_hypotheses(pair, tol);
    const std::size_t n = omega.size();
    if (pair.k.rows() != n || f.rows() != n) throw Error(ErrorKind::ShapeMismatch, "sum_rule: size mismatch");

    const DenseMatrix id = DenseMatrix::identity(n);
    const DenseMatrix weights = pair.m * (pair.k - id);
    SumRuleResult r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.lhs += weights(i, j) * omega(i, j);
    r.rhs = 2.0 * trace(pair.m * (id - pair.k) * f);
    return r;
}

SumRulePair make_sum_rule_pair(std::size_t n, std::uint64_t seed, const Tolerances& tol) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "sum-rule pairs need n >= 2");
    const double nd = static_cast<double>(n);

    constexpr int kAttempts = 16;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Xoshiro256 rng(derive_seed(seed, n, static_cast<std::uint64_t>(attempt)));

        DenseMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (double& v : b.row(i)) v = rng.uniform(-1.0, 1.0);
        DenseMatrix a = b + b.transpose();

        // Double centring keeps A symmetric and zeroes its row sums.
        const auto r = a.row_sums();
        double total = 0.0;
        for (double v : r) total += v;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) += -r[i] / nd - r[j] / nd + total / (nd * nd);

        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (double& v : m.row(i)) v = rng.uniform(-1.0, 1.0);
            m(i, i) += nd;
        }

        try {
            DenseMatrix k = DenseMatrix::identity(n) + lu_solve(m, a, tol);
            return {std::move(m), std::move(k)};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularMatrix) throw;
        }
    }
    throw Error(ErrorKind::SingularMatrix, "no invertible M after " + std::to_string(kAttempts) + " draws");
}

SumRulePair stationary_sum_rule_pair(const ChainAnalysis& a) {
    return {DenseMatrix::diagonal(a.pi), a.pi_matrix};
}

SumRulePair power_sum_rule_pair(const StochasticMatrix& p, const ChainAnalysis& a, unsigned m) {
    return {DenseMatrix::diagonal(a.pi), matrix_power(p.matrix(), m)};
}

KirchhoffReport kirchhoff_indices(const ResistanceMatrix& omega, const std::vector<double>& pi, double t_av) {
    const std::size_t n = omega.size();
    KirchhoffReport r;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r.kirchhoff += omega(i, j);
            r.multiplicative += pi[i] * pi[j] * omega(i, j);
            r.additive += (pi[i] + pi[j]) * omega(i, j);
        }
    }
    r.additive_lower = 2.0 * t_av;
    r.additive_upper = 2.0 * t_av * (static_cast<double>(n) + 1.0);
    return r;
}

double multiplicative_kirchhoff_trace(const ChainAnalysis& a) {
    const DenseMatrix m = DenseMatrix::diagonal(a.pi);
    return 2.0 * trace(m * a.fundamental - m * a.pi_matrix);
}

std::complex<double> eigentime_sum(const ComplexSpectrum& spectrum) {
    std::size_t unit = 0;
    for (std::size_t k = 1; k < spectrum.size(); ++k)
        if (std::abs(spectrum[k] - 1.0) < std::abs(spectrum[unit] - 1.0)) unit = k;

    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        if (k != unit) sum += 1.0 / (1.0 - spectrum[k]);
    return sum;
}

FosterResult foster_sum(const StochasticMatrix& p, const ResistanceMatrix& omega, unsigned m,
                        const ChainAnalysis& a, const Tolerances& tol) {
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "Foster sum needs m >= 1");
    const std::size_t n = p.size();
    const auto& pi = a.pi;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(pi[i] * p(i, j) - pi[j] * p(j, i));
            if (gap > tol.detailed_balance) {
                throw Error(ErrorKind::NotReversible, "detailed balance fails at (" + std::to_string(i) + ", " +
                                                          std::to_string(j) + ") by " + std::to_string(gap));
            }
        }
    }

    const DenseMatrix pm = matrix_power(p.matrix(), m);
    FosterResult r;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r.lhs += pi[j] * pm(j, i) * omega(i, j);
            r.lhs_transposed += pi[i] * pm(i, j) * omega(i, j);
        }
    }

    DenseMatrix partial(n, n);
    DenseMatrix power = DenseMatrix::identity(n);
    for (unsigned k = 0; k < m; ++k) {
        partial += power - a.pi_matrix;
        power = power * p.matrix();
    }
    r.rhs = 2.0 * trace(DenseMatrix::diagonal(pi) * partial);
    return r;
}

}  // namespace mcres
