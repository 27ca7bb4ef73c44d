#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcres/chain.hpp"

namespace mcres {

struct SimConfig {
    std::uint64_t seed = 0;
    std::size_t replicas = 100'000;
    std::uint64_t max_steps_per_replica = 10'000'000;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
    /// not depend on this.
    unsigned workers = 0;
};

struct HittingEstimate {
    double mean = 0.0;       // steps
    double std_error = 0.0;  // sample std / sqrt(replicas_used)
    std::size_t replicas_used = 0;
};

/// Monte Carlo estimate of E_start(tau_target). Replica r of leg
/// (start, target) draws from a stream seeded by (cfg.seed, start, target, r).
/// start == target returns an exact zero without simulating.
/// Throws MaxStepsExceeded when any replica runs past the step cap.
HittingEstimate simulate_hitting(const StochasticMatrix& p, std::size_t start, std::size_t target,
                                 const SimConfig& cfg);

/// pi_j E_i(tau_j) + pi_i E_j(tau_i) from two simulated legs; standard errors
/// combine in quadrature with the pi weights.
HittingEstimate estimate_omega(const StochasticMatrix& p, std::size_t i, std::size_t j,
                               const std::vector<double>& pi, const SimConfig& cfg);

}  // namespace mcres
