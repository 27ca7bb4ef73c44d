#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "mcres/chain.hpp"
#include "mcres/error.hpp"
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

constexpr ChainKind kAllKinds[] = {ChainKind::ergodic, ChainKind::reversible, ChainKind::doubly_stochastic,
                                   ChainKind::symmetric_doubly_stochastic, ChainKind::birth_death};

}  // namespace

// =============================================================================
// validate
// =============================================================================

TEST(Validate, AcceptsStochasticRows) {
    const auto p = validate(DenseMatrix{{0.9, 0.1}, {0.5, 0.5}});
    EXPECT_EQ(p.size(), 2u);
    EXPECT_DOUBLE_EQ(p(0, 1), 0.1);
    EXPECT_NO_THROW(fixtures::counterexample());
}

TEST(Validate, RenormalisesRows) {
    const auto p = validate(DenseMatrix{{0.5 + 4e-7, 0.5}, {0.25, 0.75}});
    for (double s : p.matrix().row_sums()) EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(Validate, Rejections) {
    EXPECT_EQ(kind_of([] { validate(DenseMatrix{{1.0, -0.1}, {0.5, 0.6}}); }), ErrorKind::NegativeEntry);
    EXPECT_EQ(kind_of([] { validate(DenseMatrix{{0.9, 0.2}, {0.5, 0.5}}); }), ErrorKind::RowSumOutOfTolerance);
    EXPECT_EQ(kind_of([] { validate(DenseMatrix(2, 3, 1.0 / 3)); }), ErrorKind::NotSquare);
    EXPECT_EQ(kind_of([] { validate(DenseMatrix{{NAN, 1.0}, {0.5, 0.5}}); }), ErrorKind::NonFiniteEntry);
    EXPECT_EQ(kind_of([] { validate(DenseMatrix{{0.5, 0.5}, {0.5, 0.5}}, {"only-one"}); }), ErrorKind::ShapeMismatch);
}

// =============================================================================
// check_ergodicity
// =============================================================================

TEST(Ergodicity, SwapIsPeriodic) {
    const auto r = check_ergodicity(validate(DenseMatrix{{0, 1}, {1, 0}}));
    EXPECT_TRUE(r.strongly_connected);
    EXPECT_EQ(r.period, 2);
    EXPECT_FALSE(r.is_ergodic);
    EXPECT_FALSE(r.is_reversible.has_value());
}

TEST(Ergodicity, ThreeCycleWithChordHasPeriodOne) {
    const auto cycle = check_ergodicity(validate(DenseMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    EXPECT_EQ(cycle.period, 3);
    // Adding 1 -> 3 creates cycles of length 2 and 3.
    const auto chord = check_ergodicity(validate(DenseMatrix{{0, 0.5, 0.5}, {0, 0, 1}, {1, 0, 0}}));
    EXPECT_EQ(chord.period, 1);
    EXPECT_TRUE(chord.is_ergodic);
}

TEST(Ergodicity, Counterexample) {
    const auto r = check_ergodicity(fixtures::counterexample());
    EXPECT_TRUE(r.is_ergodic);
    EXPECT_FALSE(r.is_doubly_stochastic);
    ASSERT_TRUE(r.is_reversible.has_value());
    EXPECT_TRUE(*r.is_reversible);
}

TEST(Ergodicity, FairCoin) {
    const auto r = check_ergodicity(fixtures::two_state(0.5, 0.5));
    EXPECT_TRUE(r.is_ergodic);
    EXPECT_TRUE(r.is_doubly_stochastic);
    EXPECT_TRUE(r.is_reversible.value_or(false));
}

TEST(Ergodicity, ReducibleIdentity) {
    const auto r = check_ergodicity(validate(DenseMatrix::identity(2)));
    EXPECT_FALSE(r.strongly_connected);
    EXPECT_FALSE(r.is_ergodic);
    EXPECT_FALSE(r.is_reversible.has_value());
}

TEST(Ergodicity, NonReversibleCycle) {
    // Biased walk around a 3-cycle with holding: doubly stochastic, not reversible.
    const auto r = check_ergodicity(validate(DenseMatrix{{0.2, 0.7, 0.1}, {0.1, 0.2, 0.7}, {0.7, 0.1, 0.2}}));
    EXPECT_TRUE(r.is_ergodic);
    EXPECT_TRUE(r.is_doubly_stochastic);
    EXPECT_FALSE(r.is_reversible.value_or(true));
}

// =============================================================================
// stationary / fundamental / group inverse
// =============================================================================

TEST(Stationary, KnownDistributions) {
    const auto fair = stationary(fixtures::two_state(0.5, 0.5));
    EXPECT_NEAR(fair[0], 0.5, 1e-15);
    EXPECT_NEAR(fair[1], 0.5, 1e-15);

    const auto pi = stationary(fixtures::counterexample());
    EXPECT_NEAR(pi[0], 5.0 / 11, 1e-12);
    EXPECT_NEAR(pi[1], 1.0 / 11, 1e-12);
    EXPECT_NEAR(pi[2], 5.0 / 11, 1e-12);

    for (auto [a, b] : {std::pair{0.3, 0.2}, std::pair{0.05, 0.9}}) {
        const auto two = stationary(fixtures::two_state(a, b));
        EXPECT_NEAR(two[0], b / (a + b), 1e-14);
        EXPECT_NEAR(two[1], a / (a + b), 1e-14);
    }
}

TEST(Stationary, RejectsNonErgodic) {
    EXPECT_EQ(kind_of([] { stationary(validate(DenseMatrix::identity(2))); }), ErrorKind::NotErgodic);
    EXPECT_EQ(kind_of([] { stationary(validate(DenseMatrix{{0, 1}, {1, 0}})); }), ErrorKind::NotErgodic);
}

TEST(Fundamental, RankOneChainGivesIdentity) {
    const auto p = validate(DenseMatrix{{0.3, 0.7}, {0.3, 0.7}});
    const auto pi = stationary(p);
    EXPECT_LT(max_abs_diff(fundamental_matrix(p, pi), DenseMatrix::identity(2)), 1e-15);
    const auto fair = fixtures::two_state(0.5, 0.5);
    EXPECT_LT(max_abs_diff(fundamental_matrix(fair, stationary(fair)), DenseMatrix::identity(2)), 1e-15);
}

TEST(GroupInverse, RankOneChain) {
    const auto p = validate(DenseMatrix{{0.3, 0.7}, {0.3, 0.7}});
    const auto a = analyze(p);
    EXPECT_LT(max_abs_diff(a.group_inverse, DenseMatrix::identity(2) - a.pi_matrix), 1e-15);
}

TEST(GroupInverse, AxiomsOnCounterexample) {
    const auto p = fixtures::counterexample();
    const auto r = chain_residuals(p, analyze(p));
    EXPECT_LT(r.axiom_ada, 1e-8);
    EXPECT_LT(r.axiom_dad, 1e-8);
    EXPECT_LT(r.axiom_commute, 1e-8);
    EXPECT_LT(r.d_row_sums, 1e-9);
    EXPECT_LT(r.pi_d, 1e-9);
}

TEST(GroupInverse, MatchesTruncatedSeries) {
    // sum_{k<=N} (P^k - Pi) converges geometrically at rate |lambda_2|.
    const auto p = generate_random_chain(5, ChainKind::ergodic, 4);
    const auto a = analyze(p);
    DenseMatrix series(5, 5);
    DenseMatrix power = DenseMatrix::identity(5);
    for (int k = 0; k <= 200; ++k) {
        series += power - a.pi_matrix;
        power = power * p.matrix();
    }
    EXPECT_LT(max_abs_diff(series, a.group_inverse), 1e-12);
}

// =============================================================================
// hitting times / Kemeny
// =============================================================================

TEST(HittingTimes, DiagonalIsExactlyZero) {
    const auto a = analyze(generate_random_chain(9, ChainKind::ergodic, 1));
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(a.hitting(i, i), 0.0);
}

TEST(HittingTimes, TwoStateGeometric) {
    for (auto [a, b] : {std::pair{0.3, 0.2}, std::pair{0.5, 0.5}, std::pair{0.01, 0.6}}) {
        const auto an = analyze(fixtures::two_state(a, b));
        EXPECT_NEAR(an.hitting(0, 1), 1.0 / a, 1e-10);
        EXPECT_NEAR(an.hitting(1, 0), 1.0 / b, 1e-10);
    }
}

TEST(HittingTimes, CounterexampleByFirstStepAnalysis) {
    const auto p = fixtures::counterexample();
    EXPECT_LT(max_abs_diff(analyze(p).hitting, fixtures::counterexample_hitting()), 1e-10);
    EXPECT_LT(max_abs_diff(hitting_times_oracle(p), fixtures::counterexample_hitting()), 1e-10);
}

TEST(HittingTimesOracle, FairCoinAndLowerBound) {
    const DenseMatrix h = hitting_times_oracle(fixtures::two_state(0.5, 0.5));
    EXPECT_NEAR(h(0, 1), 2.0, 1e-14);
    EXPECT_NEAR(h(1, 0), 2.0, 1e-14);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DenseMatrix hr = hitting_times_oracle(generate_random_chain(5, ChainKind::ergodic, seed));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (i != j) EXPECT_GE(hr(i, j), 1.0);
    }
}

TEST(Kemeny, FairCoin) { EXPECT_NEAR(analyze(fixtures::two_state(0.5, 0.5)).kemeny, 1.0, 1e-14); }

TEST(Kemeny, CounterexampleEigentime) {
    const auto p = fixtures::counterexample();
    const auto a = analyze(p);
    std::complex<double> sum{0, 0};
    const auto s = eigenvalues(p.matrix());
    for (std::size_t k = 1; k < s.size(); ++k) sum += 1.0 / (1.0 - s[k]);
    EXPECT_NEAR(a.kemeny, sum.real(), 1e-6);
    // pi_j-weighted row of the hand-computed hitting times: 5/11 * 22 + 1/11 * 10.
    EXPECT_NEAR(a.kemeny, 120.0 / 11.0, 1e-10);
}

TEST(Kemeny, DetectsStartDependence) {
    const auto a = analyze(fixtures::counterexample());
    DenseMatrix h = a.hitting;
    h(1, 0) += 1.0;
    EXPECT_EQ(kind_of([&] { kemeny_constant(h, a.pi); }), ErrorKind::RandomTargetViolation);
}

TEST(CommuteTimes, IsSymmetricSum) {
    const DenseMatrix tc = commute_times(fixtures::counterexample_hitting());
    EXPECT_EQ(tc(0, 2), 44.0);
    EXPECT_EQ(tc(0, 1), 22.0);
    EXPECT_EQ(tc, tc.transpose());
}

// =============================================================================
// Invariants over generated chains
// =============================================================================

TEST(ChainInvariants, HoldOnGeneratedChains) {
    for (auto kind : kAllKinds) {
        for (const auto& p : fixtures::chain_family(kind, 30, 2, 16, 1234)) {
            const auto a = analyze(p);
            const auto r = chain_residuals(p, a);
            SCOPED_TRACE(std::string(to_string(kind)) + " n=" + std::to_string(p.size()));
            EXPECT_LT(r.stationary, 1e-10);
            EXPECT_LT(r.pi_sum, 1e-12);
            EXPECT_LT(r.fundamental_inverse, 1e-9);
            EXPECT_LT(r.f_equals_pi_plus_d, 1e-10);
            EXPECT_LT(r.f_row_sums, 1e-9);
            EXPECT_LT(r.d_row_sums, 1e-9);
            EXPECT_LT(r.pi_f, 1e-9);
            EXPECT_LT(r.pi_d, 1e-9);
            EXPECT_LT(r.axiom_ada, 1e-8);
            EXPECT_LT(r.axiom_dad, 1e-8);
            EXPECT_LT(r.axiom_commute, 1e-8);
            EXPECT_LT(r.random_target, 1e-8);
            EXPECT_LT(r.kemeny_trace, 1e-8);
            // Birth-death laws get exponentially small tails, so H is compared
            // relative to its largest entry there.
            const double scale = kind == ChainKind::birth_death ? std::max(1.0, a.hitting.max_abs()) : 1.0;
            EXPECT_LT(max_abs_diff(a.hitting, hitting_times_oracle(p)), 1e-8 * scale);
            for (double v : a.pi) EXPECT_GT(v, 0.0);
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j)
                    if (i != j) EXPECT_GT(a.hitting(i, j), 0.0);
        }
    }
}

TEST(ChainInvariants, EigentimeIdentity) {
    for (auto kind : kAllKinds) {
        for (const auto& p : fixtures::chain_family(kind, 20, 2, 16, 99)) {
            const auto a = analyze(p);
            const auto s = eigenvalues(p.matrix());
            std::complex<double> sum{0, 0};
            for (std::size_t k = 1; k < s.size(); ++k) sum += 1.0 / (1.0 - s[k]);
            EXPECT_LT(std::abs(a.kemeny - sum.real()), 1e-6);
            EXPECT_LT(std::abs(sum.imag()), 1e-8);
        }
    }
}

TEST(ChainInvariants, DoublyStochasticHasUniformStationaryLaw) {
    for (auto kind : {ChainKind::doubly_stochastic, ChainKind::symmetric_doubly_stochastic}) {
        for (const auto& p : fixtures::chain_family(kind, 20, 2, 16, 5)) {
            const double u = 1.0 / static_cast<double>(p.size());
            for (double v : stationary(p)) EXPECT_NEAR(v, u, 1e-8);
        }
    }
}
