// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "stablab/error.hpp"
#include "stablab/simulator.hpp"

using namespace stablab;

namespace {

PairSpec perturbed_spec() {
    PairSpec s;
    s.drift = {DriftKind::tanh, 1.0, 0.0};
    s.jump = {JumpKind::cosine, 1.0, 0.2, 1.0};
    s.perturbation.drift_shape = ShapeKind::bump;
    s.perturbation.drift_amplitude = 0.2;
    s.perturbation.jump_shape = ShapeKind::shift;
    s.perturbation.jump_amplitude = 0.05;
    return s;
}

SimConfig small_config(std::uint64_t seed = 3, int threads = 1) {
    SimConfig c;
    c.n_steps = 50;
    c.n_paths = 2000;
    c.seed = seed;
    c.n_records = 11;
    c.threads = threads;
    return c;
}

}  // namespace

TEST(SimConfig, Validation) {
    SimConfig c;
    EXPECT_NO_THROW(c.validate());
    c.T = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.n_steps = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.n_paths = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.n_records = 1;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(Simulator, ThreadCountDoesNotChangeResults) {
    const auto law = make_stable_law(1.5);
    const auto pair = make_pair(perturbed_spec(), 1.5);
    const auto a = simulate_coupled(small_config(3, 1), pair, law);
    const auto b = simulate_coupled(small_config(3, 4), pair, law);
    EXPECT_EQ(a.digest_x(), b.digest_x());
    EXPECT_EQ(a.data().records, b.data().records);
    EXPECT_EQ(a.data().pair_sup, b.data().pair_sup);
}

TEST(Simulator, SeedsGiveDistinctStreams) {
    const auto law = make_stable_law(1.5);
    const auto pair = make_pair(perturbed_spec(), 1.5);
    const auto a = simulate_coupled(small_config(3), pair, law);
    const auto b = simulate_coupled(small_config(4), pair, law);
    EXPECT_NE(a.digest_x(), b.digest_x());
    EXPECT_NE(a.data().records, b.data().records);
}

TEST(Simulator, BothLegsConsumeTheSameIncrements) {
    const auto law = make_stable_law(1.5);
    const auto pair = make_pair(perturbed_spec(), 1.5);
    const auto e = simulate_coupled(small_config(), pair, law);
    EXPECT_EQ(e.digest_x(), e.digest_x_tilde());
    const auto& d = e.data();
    for (std::size_t p = 0; p < d.n_paths(); ++p) ASSERT_EQ(d.path_digest[p], d.path_digest[d.n_paths() + p]);
}

TEST(Simulator, IdenticalCoefficientsGiveIdenticalPaths) {
    const auto law = make_stable_law(1.5);
    PairSpec s = perturbed_spec();
    s.perturbation = {};
    const auto e = simulate_coupled(small_config(), make_pair(s, 1.5), law);
    for (std::size_t p = 0; p < e.n_paths(); ++p) {
        ASSERT_EQ(e.grid_sup(p), 0.0);
        for (std::size_t r = 0; r < e.times().size(); ++r) ASSERT_EQ(e.x(p, r), e.x_tilde(p, r));
    }
    const auto m = distance_moment_curve(e, 0.5);
    for (double v : m.mean) EXPECT_EQ(v, 0.0);
}

TEST(Simulator, InitialGapIsRecorded) {
    const auto law = make_stable_law(1.5);
    PairSpec s = perturbed_spec();
    s.perturbation = {};
    s.x0_gap = 0.25;
    const auto e = simulate_coupled(small_config(), make_pair(s, 1.5), law);
    EXPECT_DOUBLE_EQ(e.x_tilde(0, 0) - e.x(0, 0), 0.25);
    EXPECT_GE(e.grid_sup(0), 0.25);
    // A contracting drift shrinks the gap on average.
    const auto m = distance_moment_curve(e, 1.0);
    EXPECT_LT(m.mean.back(), 0.25);
}

TEST(Simulator, RecordTimesAreEvenlySpaced) {
    const auto law = make_stable_law(1.5);
    const auto e = simulate_coupled(small_config(), make_pair(perturbed_spec(), 1.5), law);
    const auto& t = e.times();
    ASSERT_EQ(t.size(), 11u);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_DOUBLE_EQ(t.back(), 1.0);
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_NEAR(t[i] - t[i - 1], 0.1, 1e-12);
}

TEST(Simulator, AccumulatorsMatchPerturbationSizes) {
    const auto law = make_stable_law(1.5);
    PairSpec s = perturbed_spec();
    s.perturbation.drift_shape = ShapeKind::shift;
    s.perturbation.drift_amplitude = 0.3;
    const auto e = simulate_coupled(small_config(), make_pair(s, 1.5), law);
    ASSERT_TRUE(e.has_accumulator());
    for (double v : e.drift_gap_integrals()) ASSERT_NEAR(v, 0.3, 1e-12);
    for (double v : e.jump_gap_integrals()) ASSERT_NEAR(v, std::pow(0.05, 1.5), 1e-12);
}

TEST(Simulator, MomentAndTailDomains) {
    const auto law = make_stable_law(1.5);
    const auto e = simulate_coupled(small_config(), make_pair(perturbed_spec(), 1.5), law);
    EXPECT_THROW(distance_moment_curve(e, 0.0), DomainError);
    EXPECT_THROW(distance_moment_curve(e, 1.5), DomainError);
    EXPECT_THROW(tail_probability(e, 0.0), DomainError);
    EXPECT_THROW(tail_probability(e, -0.1), DomainError);
    const auto m = distance_moment_curve(e, 0.5);
    EXPECT_EQ(m.mean.front(), 0.0);
    EXPECT_GT(m.sup_mean, 0.0);
    const auto tail = tail_probability(e, 0.05);
    EXPECT_LE(tail.ci.lo, tail.probability);
    EXPECT_GE(tail.ci.hi, tail.probability);
    EXPECT_EQ(tail.trials, e.n_valid());
    EXPECT_GE(tail_probability(e, 0.01).probability, tail.probability);
}

TEST(Simulator, MomentsAgreeWithTerminalPowers) {
    const auto law = make_stable_law(1.5);
    const auto e = simulate_coupled(small_config(), make_pair(perturbed_spec(), 1.5), law);
    const auto v = terminal_distance_powers(e, 0.5);
    const auto m = distance_moment_curve(e, 0.5);
    EXPECT_NEAR(mean_estimate(v).mean, m.mean.back(), 1e-12);
}

TEST(UniformLp, DomainAndDecision) {
    EXPECT_THROW(uniform_lp_check({{1.0, {1.0, 2.0}}}, 1.0, 1.5), DomainError);
    EXPECT_THROW(uniform_lp_check({{1.0, {1.0, 2.0}}}, 1.5, 1.5), DomainError);
    std::vector<double> a(400), b(400), c(400);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = 1.0 + 0.1 * std::sin(0.7 * i);
        b[i] = 1.0 + 0.1 * std::cos(1.3 * i);
        c[i] = 3.0 + 0.1 * std::cos(0.9 * i);
    }
    EXPECT_TRUE(uniform_lp_check({{1.0, a}, {2.0, b}}, 1.2, 1.5).passed);
    EXPECT_FALSE(uniform_lp_check({{1.0, a}, {2.0, b}, {3.0, c}}, 1.2, 1.5).passed);
}

TEST(Simulator, ClippedPathsAreFlagged) {
    const auto law = make_stable_law(1.5);
    SimConfig c = small_config();
    c.x_clip = 1.0;
    EXPECT_THROW(simulate_coupled(c, make_pair(perturbed_spec(), 1.5), law), NumericError);
}
