#pragma once

namespace mcres {

/// Numerical thresholds used across the library. One instance is threaded
/// through any call that needs a threshold; the defaults are the contract
/// values and the CLI can override individual fields.
struct Tolerances {
    // matrix kernel
    double pivot = 1e-13;           // |pivot| below this after partial pivoting => singular
    int eigen_sweeps_per_dim = 500; // iteration budget = sweeps * n

    // chain validation
    double row_sum_input = 1e-6;    // raw rows may deviate this much before rejection
    double row_sum = 1e-9;          // validated / doubly-stochastic column sums
    double detailed_balance = 1e-9;
    double random_target = 1e-8;    // i-independence of sum_j pi_j H[i][j], scaled by max(1, t_av)
    double sinkhorn = 1e-10;
    int sinkhorn_max_sweeps = 10'000;

    // resistance
    double triangle = 1e-10;
    double sum_rule_hypothesis = 1e-10;
    double sum_rule = 1e-8;         // relative: |lhs - rhs| <= sum_rule * (1 + |lhs|)

    // identity checks reported by the CLI
    double stationary = 1e-10;
    double fundamental = 1e-9;
    double group_inverse_axioms = 1e-8;
    double representation = 1e-9;
    double hitting_oracle = 1e-8;
    double kirchhoff = 1e-8;
    double eigentime = 1e-6;
    double eigentime_imag = 1e-8;
    double multiplicative = 1e-9;
    double additive_bound = 1e-9;
    double foster = 1e-8;
    double forest_pi = 1e-10;
    double forest_hitting = 1e-9;
    double forest_omega = 1e-9;
    double mc_sigmas = 4.0;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace mcres
