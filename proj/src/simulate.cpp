#include "mcres/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "mcres/error.hpp"
#include "mcres/rng.hpp"

namespace mcres {

namespace {

__extension__ using u128 = unsigned __int128;

struct StepTotals {
    std::uint64_t sum = 0;
    u128 sum_sq = 0;
};

DenseMatrix cumulative_rows(const StochasticMatrix& p) {
    const std::size_t n = p.size();
    DenseMatrix cum(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) cum(i, j) = acc += p(i, j);
        // Force the last non-empty bucket to close at exactly 1.
        for (std::size_t j = n; j-- > 0;) {
            if (p(i, j) > 0.0) {
                for (std::size_t k = j; k < n; ++k) cum(i, k) = 1.0;
                break;
            }
        }
    }
    return cum;
}

}  // namespace

HittingEstimate simulate_hitting(const StochasticMatrix& p, std::size_t start, std::size_t target,
                                 const SimConfig& cfg) {
    const std::size_t n = p.size();
    if (start >= n || target >= n) throw Error(ErrorKind::InvalidArgument, "state index out of range");
    if (start == target) return {0.0, 0.0, cfg.replicas};
    if (cfg.replicas < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 replicas");

    const DenseMatrix cum = cumulative_rows(p);
    const std::uint64_t leg_seed = derive_seed(cfg.seed, start, target);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(cfg.workers == 0 ? hw : cfg.workers, cfg.replicas));

    std::vector<StepTotals> partial(workers);
    std::atomic<bool> overflow{false};

    const auto run_chunk = [&](unsigned w) {
        const std::size_t lo = cfg.replicas * w / workers;
        const std::size_t hi = cfg.replicas * (w + 1) / workers;
        StepTotals t;
        for (std::size_t r = lo; r < hi && !overflow.load(std::memory_order_relaxed); ++r) {
            Xoshiro256 rng(derive_seed(leg_seed, r));
            std::size_t state = start;
            std::uint64_t steps = 0;
            while (state != target) {
                if (++steps > cfg.max_steps_per_replica) {
                    overflow = true;
                    return;
                }
                const auto row = cum.row(state);
                const double u = rng.uniform();
                state = static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), u) - row.begin());
            }
            t.sum += steps;
            t.sum_sq += static_cast<u128>(steps) * steps;
        }
        partial[w] = t;
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }

    if (overflow) {
        throw Error(ErrorKind::MaxStepsExceeded, "a replica from " + std::to_string(start) + " to " +
                                                     std::to_string(target) + " exceeded " +
                                                     std::to_string(cfg.max_steps_per_replica) + " steps");
    }

    StepTotals total;
    for (const auto& t : partial) {
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
    }

    // Exact integer centring: N Q - S^2 = N (N - 1) * sample variance.
    const auto count = static_cast<u128>(cfg.replicas);
    const u128 centred = count * total.sum_sq - static_cast<u128>(total.sum) * total.sum;
    const long double nn = static_cast<long double>(cfg.replicas);
    const long double variance = static_cast<long double>(centred) / (nn * (nn - 1.0L));

    HittingEstimate e;
    e.mean = static_cast<double>(static_cast<long double>(total.sum) / nn);
    e.std_error = static_cast<double>(std::sqrt(variance / nn));
    e.replicas_used = cfg.replicas;
    return e;
}

HittingEstimate estimate_omega(const StochasticMatrix& p, std::size_t i, std::size_t j,
                               const std::vector<double>& pi, const SimConfig& cfg) {
    if (i == j) return {0.0, 0.0, cfg.replicas};
    const HittingEstimate ij = simulate_hitting(p, i, j, cfg);
    const HittingEstimate ji = simulate_hitting(p, j, i, cfg);

    HittingEstimate e;
    e.mean = pi[j] * ij.mean + pi[i] * ji.mean;
    const double a = pi[j] * ij.std_error;
    const double b = pi[i] * ji.std_error;
    e.std_error = std::sqrt(a * a + b * b);
    e.replicas_used = ij.replicas_used;
    return e;
}

}  // namespace mcres
