// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "stablab/error.hpp"
#include "stablab/rate_lab.hpp"

using namespace stablab;

TEST(RateSpec, BranchSelection) {
    EXPECT_EQ(make_rate_spec(1.5, 1.0).branch, RateBranch::holder);
    EXPECT_EQ(make_rate_spec(1.5, 1.0 / 1.5).branch, RateBranch::log);
    EXPECT_EQ(make_rate_spec(1.5, 1.0 / 1.5 + 1e-6).branch, RateBranch::holder);
    EXPECT_THROW(make_rate_spec(1.5, 0.5), DomainError);
    EXPECT_THROW(make_rate_spec(1.5, 1.1), DomainError);
    EXPECT_THROW(make_rate_spec(2.1, 1.0), DomainError);
}

TEST(RateExponents, KnownValues) {
    const auto e = rate_exponents(make_rate_spec(1.5, 1.0));
    EXPECT_DOUBLE_EQ(e.e_B, 0.5);
    EXPECT_DOUBLE_EQ(e.e_S, 0.5);
    const auto f = rate_exponents(make_rate_spec(1.8, 0.8));
    EXPECT_NEAR(f.e_B, (1.44 - 1.0) / (1.44 - 1.8 + 1.0), 1e-15);
    EXPECT_NEAR(f.e_S, 1.8 - 1.25, 1e-15);
    const auto g = rate_exponents(make_rate_spec(1.5, 1.0 / 1.5 + 1e-3));
    EXPECT_GT(g.e_B, 0.0);
    EXPECT_LT(g.e_B, 0.01);
}

TEST(RateBound, HolderAndLogValues) {
    EXPECT_NEAR(theoretical_bound(make_rate_spec(1.5, 1.0), 0.0, 0.01, 0.01), 0.1, 1e-15);
    EXPECT_NEAR(theoretical_bound(make_rate_spec(1.5, 1.0), 0.04, 0.01, 0.0), 0.2 + 0.1, 1e-15);
    EXPECT_NEAR(theoretical_bound(make_rate_spec(1.5, 1.0 / 1.5), 0.0, 0.01, 0.001), 1.0 / std::log(100.0), 1e-15);
    EXPECT_EQ(distance_term(make_rate_spec(1.5, 1.0 / 1.5), 0.0, 0.0), 0.0);
    EXPECT_NEAR(theoretical_bound(make_rate_spec(1.5, 1.0, DistanceFlavor::weighted, 3.0), 0.0, 0.01, 0.01), 0.3,
                1e-15);
}

TEST(RateBound, AssumptionsAndDomains) {
    const auto s = make_rate_spec(1.5, 1.0);
    EXPECT_THROW(distance_term(s, 1.0, 0.1), AssumptionViolation);
    EXPECT_THROW(distance_term(s, 0.1, 1.5), AssumptionViolation);
    EXPECT_THROW(distance_term(s, -0.1, 0.1), DomainError);
    EXPECT_THROW(tail_bound(s, 0.0, 0.01, 0.01, 0.0), DomainError);
}

TEST(RateBound, MonotoneInEveryArgument) {
    const auto s = make_rate_spec(1.5, 0.8);
    double prev = 0.0;
    for (double B : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const double v = theoretical_bound(s, 0.0, B, 1e-5);
        EXPECT_GT(v, prev);
        prev = v;
    }
    prev = 0.0;
    for (double S : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const double v = theoretical_bound(s, 0.0, 1e-6, S);
        EXPECT_GT(v, prev);
        prev = v;
    }
    prev = 0.0;
    for (double g : {0.0, 1e-3, 1e-1}) {
        const double v = theoretical_bound(s, g, 1e-3, 1e-3);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(RateBound, TailBoundScalesAsInverseH) {
    const auto s = make_rate_spec(1.5, 1.0);
    const double a = tail_bound(s, 0.01, 0.01, 0.02, 0.1);
    EXPECT_NEAR(tail_bound(s, 0.01, 0.01, 0.02, 0.2), a / 2.0, 1e-15);
    EXPECT_NEAR(a * 0.1, theoretical_bound(s, 0.01, 0.01, 0.02), 1e-15);
}

TEST(PerturbationFamily, MemberSizes) {
    PerturbationFamily f;
    f.kind = FamilyKind::jump_bump;
    f.base.drift = {DriftKind::tanh, 1.0, 0.0};
    f.scale = 0.05;
    EXPECT_DOUBLE_EQ(f.size(3), 0.05 / 8.0);
    const auto m = f.member_spec(2);
    EXPECT_EQ(m.perturbation.jump_shape, ShapeKind::bump);
    EXPECT_DOUBLE_EQ(m.perturbation.jump_amplitude, 0.0125);
    f.kind = FamilyKind::initial_value;
    EXPECT_DOUBLE_EQ(f.member_spec(1).x0_gap, 0.025);
    f.kind = FamilyKind::mollification;
    EXPECT_THROW(f.member(1, 1.5), DomainError);
}

namespace {

PerturbationFamily small_family() {
    PerturbationFamily f;
    f.kind = FamilyKind::jump_bump;
    f.base.drift = {DriftKind::tanh, -1.0, 0.0};
    f.base.jump = {JumpKind::cosine, 1.0, 0.2, 1.0};
    f.indices = {1, 2, 3, 4};
    f.scale = 0.05;
    return f;
}

SimConfig small_sim() {
    SimConfig c;
    c.n_steps = 40;
    c.n_paths = 2000;
    c.seed = 42;
    c.n_records = 11;
    c.threads = 1;
    return c;
}

}  // namespace

TEST(Sweep, EmptyFamilyIsDomainError) {
    auto f = small_family();
    f.indices.clear();
    EXPECT_THROW(run_sweep(f, small_sim(), make_stable_law(1.5), make_rate_spec(1.5, 1.0)), DomainError);
}

TEST(Sweep, ReproducibleAndCalibrated) {
    const auto law = make_stable_law(1.5);
    const auto f = small_family();
    SweepOptions o;
    o.h_values = {0.05, 0.1};
    const auto a = run_sweep(f, small_sim(), law, make_rate_spec(1.5, 1.0), o);
    auto cfg = small_sim();
    cfg.threads = 3;
    const auto b = run_sweep(f, cfg, law, make_rate_spec(1.5, 1.0), o);
    ASSERT_EQ(a.rows.size(), 4u);
    ASSERT_EQ(b.rows.size(), 4u);
    EXPECT_EQ(a.digest, b.digest);
    EXPECT_EQ(a.C_fit, b.C_fit);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].D, b.rows[i].D);
        EXPECT_EQ(a.rows[i].B, b.rows[i].B);
        EXPECT_EQ(a.rows[i].S, b.rows[i].S);
        EXPECT_EQ(a.rows[i].tails.size(), 2u);
    }
    EXPECT_EQ(a.calibrated_n, 1);
    EXPECT_NEAR(a.rows[0].fitted_bound, a.rows[0].D, 1e-12 * a.rows[0].D);
    EXPECT_TRUE(a.rows[0].within);
    for (std::size_t i = 1; i < a.rows.size(); ++i) {
        EXPECT_LT(a.rows[i].S, a.rows[i - 1].S);
        EXPECT_LT(a.rows[i].D, a.rows[i - 1].D);
    }
    EXPECT_NEAR(a.S_slope_vs_size.slope, 1.0, 1e-6);
}

TEST(TailShape, CalibrationAndDecision) {
    std::vector<TailEstimate> tails;
    for (double h : {0.1, 0.2, 0.4}) {
        TailEstimate t;
        t.h = h;
        t.trials = 10000;
        t.exceed = static_cast<std::size_t>(1000 * 0.1 / h);
        t.probability = static_cast<double>(t.exceed) / 10000.0;
        t.ci = wilson_interval(t.exceed, t.trials);
        tails.push_back(t);
    }
    const auto c = tail_shape_check(tails, 0.5, 0.1);
    EXPECT_NEAR(c.C_fit, 0.1 * 0.1 / 0.5, 1e-15);
    EXPECT_TRUE(c.passed);
    tails[2].exceed = 2000;
    tails[2].probability = 0.2;
    tails[2].ci = wilson_interval(2000, 10000);
    EXPECT_FALSE(tail_shape_check(tails, 0.5, 0.1).passed);
}
