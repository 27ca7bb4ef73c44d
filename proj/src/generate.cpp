#include "mcres/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mcres/error.hpp"
#include "mcres/rng.hpp"

namespace mcres {

namespace {

constexpr std::array<std::pair<ChainKind, std::string_view>, 5> kKindNames{{
    {ChainKind::ergodic, "ergodic"},
    {ChainKind::reversible, "reversible"},
    {ChainKind::doubly_stochastic, "doubly_stochastic"},
    {ChainKind::symmetric_doubly_stochastic, "symmetric_doubly_stochastic"},
    {ChainKind::birth_death, "birth_death"},
}};

// Entries bounded away from zero keep I - P + Pi well conditioned.
constexpr double kMinWeight = 0.01;

DenseMatrix positive_matrix(std::size_t n, Xoshiro256& rng) {
    DenseMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = rng.uniform(kMinWeight, 1.0);
    return w;
}

DenseMatrix symmetric_positive_matrix(std::size_t n, Xoshiro256& rng) {
    DenseMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) w(i, j) = w(j, i) = rng.uniform(kMinWeight, 1.0);
    return w;
}

DenseMatrix normalise_rows(DenseMatrix w) {
    const auto sums = w.row_sums();
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (double& v : w.row(i)) v /= sums[i];
    return w;
}

DenseMatrix birth_death_matrix(std::size_t n, Xoshiro256& rng) {
    DenseMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) w(i, i - 1) = rng.uniform(kMinWeight, 1.0);
        if (i + 1 < n) w(i, i + 1) = rng.uniform(kMinWeight, 1.0);
        // A quarter of the holding probabilities are zero; state 0 always holds
        // so the chain stays aperiodic.
        const double hold = rng.uniform(kMinWeight, 1.0);
        const bool zero = i > 0 && rng.uniform() < 0.25;
        w(i, i) = zero ? 0.0 : hold;
    }
    return normalise_rows(std::move(w));
}

}  // namespace

std::string_view to_string(ChainKind kind) noexcept {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<ChainKind> parse_chain_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

DenseMatrix sinkhorn_balance(DenseMatrix a, const Tolerances& tol) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < tol.sinkhorn_max_sweeps; ++sweep) {
        const auto rows = a.row_sums();
        for (std::size_t i = 0; i < n; ++i)
            for (double& v : a.row(i)) v /= rows[i];
        const auto cols = a.col_sums();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) /= cols[j];

        // Columns are exact after the last step; rows decide convergence.
        const auto after = a.row_sums();
        const bool done = std::all_of(after.begin(), after.end(),
                                      [&](double s) { return std::abs(s - 1.0) <= tol.sinkhorn; });
        if (done) return a;
    }
    throw Error(ErrorKind::SinkhornNoConvergence,
                "row sums not within " + std::to_string(tol.sinkhorn) + " after " +
                    std::to_string(tol.sinkhorn_max_sweeps) + " sweeps");
}

StochasticMatrix generate_random_chain(std::size_t n, ChainKind kind, std::uint64_t seed, const Tolerances& tol) {
    if (n < 2 || n > 64) throw Error(ErrorKind::InvalidArgument, "chain size must be in [2, 64], got " + std::to_string(n));
    Xoshiro256 rng(derive_seed(seed, n, static_cast<std::uint64_t>(kind)));

    DenseMatrix p;
    switch (kind) {
        case ChainKind::ergodic:
            p = normalise_rows(positive_matrix(n, rng));
            break;
        case ChainKind::reversible:
            p = normalise_rows(symmetric_positive_matrix(n, rng));
            break;
        case ChainKind::doubly_stochastic:
            p = sinkhorn_balance(positive_matrix(n, rng), tol);
            break;
        case ChainKind::symmetric_doubly_stochastic: {
            const DenseMatrix s = sinkhorn_balance(symmetric_positive_matrix(n, rng), tol);
            p = 0.5 * (s + s.transpose());
            break;
        }
        case ChainKind::birth_death:
            p = birth_death_matrix(n, rng);
            break;
    }
    return validate(p, {}, tol);
}

StochasticMatrix birth_death_counterexample() {
    return validate(DenseMatrix{{0.9, 0.1, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.1, 0.9}});
}

}  // namespace mcres
