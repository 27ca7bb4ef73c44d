#include "mcres/forest.hpp"

#include <string>

#include "mcres/error.hpp"

namespace mcres {

namespace {

constexpr int kRoot = -1;

// Resolves the root reached from every state by following parent pointers.
// Returns false as soon as a cycle is found.
bool resolve_roots(const std::vector<int>& parent, std::vector<int>& root_of, std::vector<char>& mark) {
    const std::size_t n = parent.size();
    std::fill(mark.begin(), mark.end(), 0);  // 0 new, 1 on current path, 2 resolved
    std::vector<int> path;
    for (std::size_t s = 0; s < n; ++s) {
        if (mark[s] == 2) continue;
        path.clear();
        int v = static_cast<int>(s);
        while (true) {
            if (mark[v] == 2) break;
            if (mark[v] == 1) return false;
            mark[v] = 1;
            path.push_back(v);
            if (parent[v] == kRoot) {
                root_of[v] = v;
                break;
            }
            v = parent[v];
        }
        const int r = root_of[v];
        for (int u : path) {
            root_of[u] = r;
            mark[u] = 2;
        }
    }
    return true;
}

}  // namespace

ForestWeights enumerate_forests(const StochasticMatrix& p, std::size_t max_n) {
    const std::size_t n = p.size();
    if (n > max_n) {
        throw Error(ErrorKind::TooLarge, "forest enumeration capped at " + std::to_string(max_n) + " states, got " +
                                             std::to_string(n));
    }
    if (!check_ergodicity(p).is_ergodic) throw Error(ErrorKind::NotErgodic, "forest oracle needs an ergodic chain");

    // choices[i] = {root, k1, k2, ...} over arcs i -> k with k != i and P_ik > 0.
    std::vector<std::vector<int>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        choices[i].push_back(kRoot);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i && p(i, k) > 0.0) choices[i].push_back(static_cast<int>(k));
    }

    ForestWeights fw;
    fw.n = n;
    fw.q_roots.assign(n, 0.0);
    fw.f = DenseMatrix(n, n);

    std::vector<std::size_t> odometer(n, 0);
    std::vector<int> parent(n), root_of(n);
    std::vector<char> mark(n);
    while (true) {
        std::size_t roots = 0;
        double weight = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            parent[i] = choices[i][odometer[i]];
            if (parent[i] == kRoot) {
                ++roots;
            } else {
                weight *= p(i, static_cast<std::size_t>(parent[i]));
            }
        }

        if ((roots == 1 || roots == 2) && resolve_roots(parent, root_of, mark)) {
            if (roots == 1) {
                fw.q_roots[static_cast<std::size_t>(root_of[0])] += weight;
            } else {
                int r1 = kRoot, r2 = kRoot;
                for (std::size_t i = 0; i < n; ++i) {
                    if (parent[i] != kRoot) continue;
                    (r1 == kRoot ? r1 : r2) = static_cast<int>(i);
                }
                // Every state is credited against the root of the other tree.
                for (std::size_t i = 0; i < n; ++i) {
                    const int other = root_of[i] == r1 ? r2 : r1;
                    fw.f(i, static_cast<std::size_t>(other)) += weight;
                }
            }
        }

        std::size_t pos = 0;
        while (pos < n && ++odometer[pos] == choices[pos].size()) odometer[pos++] = 0;
        if (pos == n) break;
    }

    for (double q : fw.q_roots) fw.q_total += q;
    return fw;
}

ResistanceMatrix omega_from_forest(const ForestWeights& fw) {
    DenseMatrix omega(fw.n, fw.n);
    for (std::size_t i = 0; i < fw.n; ++i)
        for (std::size_t j = 0; j < fw.n; ++j)
            if (i != j) omega(i, j) = (fw.f(i, j) + fw.f(j, i)) / fw.q_total;
    return {omega, OmegaMethod::forest};
}

std::vector<double> forest_stationary(const ForestWeights& fw) {
    std::vector<double> pi(fw.n);
    for (std::size_t j = 0; j < fw.n; ++j) pi[j] = fw.q_roots[j] / fw.q_total;
    return pi;
}

DenseMatrix forest_hitting_times(const ForestWeights& fw) {
    DenseMatrix h(fw.n, fw.n);
    for (std::size_t i = 0; i < fw.n; ++i)
        for (std::size_t j = 0; j < fw.n; ++j)
            if (i != j) h(i, j) = fw.f(i, j) / fw.q_roots[j];
    return h;
}

}  // namespace mcres
