#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "mcres/chain.hpp"

namespace mcres {

enum class ChainKind {
    ergodic,                      // i.i.d. positive entries, rows normalised
    reversible,                   // P = row-normalised symmetric positive weights
    doubly_stochastic,            // Sinkhorn balancing of a positive matrix
    symmetric_doubly_stochastic,  // Sinkhorn balancing of a symmetric positive matrix
    birth_death,                  // tridiagonal, positive off-diagonals
};

std::string_view to_string(ChainKind kind) noexcept;
std::optional<ChainKind> parse_chain_kind(std::string_view name) noexcept;

/// Deterministic in (n, kind, seed). Requires 2 <= n <= 64.
/// Throws SinkhornNoConvergence if balancing does not reach `tol.sinkhorn`
/// within `tol.sinkhorn_max_sweeps` sweeps.
StochasticMatrix generate_random_chain(std::size_t n, ChainKind kind, std::uint64_t seed,
                                       const Tolerances& tol = default_tolerances());

/// Alternating row/column normalisation of a positive square matrix until
/// every row and column sum is within `tol.sinkhorn` of 1.
DenseMatrix sinkhorn_balance(DenseMatrix a, const Tolerances& tol = default_tolerances());

/// The three-state birth-death chain [[0.9,0.1,0],[0.5,0,0.5],[0,0.1,0.9]]:
/// reversible, ergodic, and violating the triangle inequality for Omega.
StochasticMatrix birth_death_counterexample();

}  // namespace mcres
