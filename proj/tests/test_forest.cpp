#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mcres/error.hpp"
#include "mcres/forest.hpp"
#include "mcres/generate.hpp"
#include "test_support.hpp"

using namespace mcres;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an mcres::Error";
    return ErrorKind::InvalidArgument;
}

StochasticMatrix lazy(const StochasticMatrix& p) {
    DenseMatrix m = p.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = 0.5 * m(i, j) + (i == j ? 0.5 : 0.0);
    return validate(m);
}

}  // namespace

TEST(Forest, TwoStateWeights) {
    const auto fw = enumerate_forests(fixtures::two_state(0.3, 0.2));
    ASSERT_EQ(fw.n, 2u);
    EXPECT_DOUBLE_EQ(fw.q_roots[0], 0.2);
    EXPECT_DOUBLE_EQ(fw.q_roots[1], 0.3);
    EXPECT_DOUBLE_EQ(fw.q_total, 0.5);
    EXPECT_EQ(fw.f(0, 1), 1.0);
    EXPECT_EQ(fw.f(1, 0), 1.0);
    EXPECT_EQ(fw.f(0, 0), 0.0);
    EXPECT_NEAR(omega_from_forest(fw)(0, 1), 2.0 / 0.5, 1e-14);
}

TEST(Forest, CounterexampleOmega) {
    const auto fw = enumerate_forests(fixtures::counterexample());
    const auto omega = omega_from_forest(fw);
    EXPECT_NEAR(omega(0, 2), 20.0, 1e-12);
    EXPECT_NEAR(omega(0, 1) + omega(1, 2), 140.0 / 11.0, 1e-12);
    EXPECT_LT(max_abs_diff(forest_hitting_times(fw), fixtures::counterexample_hitting()), 1e-12);
    const auto pi = forest_stationary(fw);
    EXPECT_NEAR(pi[0], 5.0 / 11, 1e-14);
    EXPECT_NEAR(pi[1], 1.0 / 11, 1e-14);
}

TEST(Forest, AgreesWithLinearAlgebra) {
    for (auto kind : {ChainKind::ergodic, ChainKind::reversible, ChainKind::doubly_stochastic, ChainKind::birth_death}) {
        for (const auto& p : fixtures::chain_family(kind, 15, 2, 6, 404)) {
            const auto a = analyze(p);
            const auto fw = enumerate_forests(p);
            const auto pi = forest_stationary(fw);
            for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(pi[i], a.pi[i], 1e-10);
            EXPECT_LT(max_abs_diff(forest_hitting_times(fw), a.hitting), 1e-9 * std::max(1.0, a.hitting.max_abs()));
            const auto omega = omega_from_fundamental(a.fundamental);
            EXPECT_LT(max_abs_diff(omega_from_forest(fw).matrix(), omega.matrix()),
                      1e-9 * std::max(1.0, omega.matrix().max_abs()));
        }
    }
}

TEST(Forest, SelfLoopsAreIgnored) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = generate_random_chain(4 + seed % 2, ChainKind::ergodic, seed);
        const auto n = static_cast<int>(p.size());
        const auto fw = enumerate_forests(p);
        const auto lw = enumerate_forests(lazy(p));
        EXPECT_NEAR(lw.q_total, fw.q_total * std::pow(2.0, -(n - 1)), 1e-14);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                EXPECT_NEAR(lw.f(i, j), fw.f(i, j) * std::pow(2.0, -(n - 2)), 1e-14);
        EXPECT_LT(max_abs_diff(omega_from_forest(lw).matrix(), 2.0 * omega_from_forest(fw).matrix()), 1e-10);
    }
}

TEST(Forest, UniformChain) {
    const std::size_t n = 4;
    const auto p = validate(DenseMatrix(n, n, 1.0 / n));
    const auto omega = omega_from_forest(enumerate_forests(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(omega(i, j), i == j ? 0.0 : 2.0, 1e-12);
}

TEST(Forest, PermutationEquivariance) {
    const auto p = generate_random_chain(5, ChainKind::ergodic, 77);
    const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
    DenseMatrix q(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) q(perm[i], perm[j]) = p(i, j);
    const auto a = omega_from_forest(enumerate_forests(p));
    const auto b = omega_from_forest(enumerate_forests(validate(q)));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(b(perm[i], perm[j]), a(i, j), 1e-12);
}

TEST(Forest, Errors) {
    EXPECT_EQ(kind_of([] { enumerate_forests(generate_random_chain(10, ChainKind::ergodic, 0)); }),
              ErrorKind::TooLarge);
    EXPECT_EQ(kind_of([] { enumerate_forests(generate_random_chain(5, ChainKind::ergodic, 0), 4); }),
              ErrorKind::TooLarge);
    EXPECT_EQ(kind_of([] { enumerate_forests(validate(DenseMatrix{{1, 0}, {0, 1}})); }), ErrorKind::NotErgodic);
    EXPECT_EQ(kind_of([] { enumerate_forests(validate(DenseMatrix{{0, 1}, {1, 0}})); }), ErrorKind::NotErgodic);
}
