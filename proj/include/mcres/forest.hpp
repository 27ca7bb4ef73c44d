#pragma once

#include <cstddef>
#include <vector>

#include "mcres/chain.hpp"
#include "mcres/resistance.hpp"

namespace mcres {

/// Weights of spanning in-forests of the transition digraph G(P), where an
/// arc i -> k carries weight P_ik and points toward the root of its tree.
struct ForestWeights {
    std::size_t n = 0;
    /// q_roots[j]: total weight of spanning in-trees rooted at j.
    std::vector<double> q_roots;
    double q_total = 0.0;
    /// f(i, j): total weight of 2-tree in-forests with one tree rooted at j
    /// and i in the other tree. f(j, j) = 0.
    DenseMatrix f;
};

inline constexpr std::size_t kDefaultForestCap = 8;

/// Brute force over every root-or-arc choice per state; self-loops are never
/// selected. Exponential in n, so refuses n > max_n with TooLarge.
/// Throws NotErgodic for reducible or periodic chains.
ForestWeights enumerate_forests(const StochasticMatrix& p, std::size_t max_n = kDefaultForestCap);

/// Omega_ij = (f_ij + f_ji) / q.
ResistanceMatrix omega_from_forest(const ForestWeights& fw);

/// pi_j = q_j / q.
std::vector<double> forest_stationary(const ForestWeights& fw);

/// E_i(tau_j) = f_ij / q_j, zero diagonal.
DenseMatrix forest_hitting_times(const ForestWeights& fw);

}  // namespace mcres
