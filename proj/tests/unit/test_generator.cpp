// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "stablab/error.hpp"
#include "stablab/generator.hpp"

using namespace stablab;

namespace {

SmoothFunction cosine(double w) {
    SmoothFunction f;
    f.value = [w](double x) { return std::cos(w * x); };
    f.first = [w](double x) { return -w * std::sin(w * x); };
    f.second = [w](double x) { return -w * w * std::cos(w * x); };
    f.far_field = BoundedGrowth{1.0};
    return f;
}

SmoothFunction gaussian() {
    SmoothFunction f;
    f.value = [](double x) { return std::exp(-0.5 * x * x); };
    f.first = [](double x) { return -x * std::exp(-0.5 * x * x); };
    f.second = [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); };
    f.far_field = BoundedGrowth{1.0};
    return f;
}

}  // namespace

// The symbol of L is -|u|^alpha, so cos(w x) is an eigenfunction.
TEST(Generator, CosineEigenfunction) {
    for (double a : {1.2, 1.5, 1.8}) {
        const auto law = make_stable_law(a);
        for (double w : {0.5, 1.0, 3.0}) {
            for (double x : {0.0, 0.4, 2.0}) {
                const double expect = -std::pow(w, a) * std::cos(w * x);
                EXPECT_NEAR(generator_apply(law, cosine(w), x), expect, 1e-7 * (1.0 + std::abs(expect)))
                    << a << " " << w << " " << x;
            }
        }
    }
}

// L f(0) = -(1/sqrt(2 pi)) int |u|^alpha exp(-u^2/2) du = -2^{alpha/2} Gamma((alpha+1)/2) / sqrt(pi).
TEST(Generator, GaussianAtOrigin) {
    for (double a : {1.2, 1.5, 1.8}) {
        const auto law = make_stable_law(a);
        const double expect = -std::pow(2.0, a / 2.0) * std::tgamma((a + 1.0) / 2.0) / std::sqrt(M_PI);
        EXPECT_NEAR(generator_apply(law, gaussian(), 0.0), expect, 1e-7) << a;
    }
}

TEST(Generator, ConstantsAnnihilated) {
    const auto law = make_stable_law(1.5);
    SmoothFunction f;
    f.value = [](double) { return -2.0; };
    f.first = [](double) { return 0.0; };
    f.second = [](double) { return 0.0; };
    // Bounded far field: the oscillating tail is dropped and covered by the error bound.
    f.far_field = BoundedGrowth{2.0};
    for (double x : {-2.0, 0.0, 5.0}) {
        const auto r = generator_apply_detailed(law, f, x);
        EXPECT_LE(std::abs(r.value), r.abs_error);
        EXPECT_LT(r.abs_error, 1e-8);
    }
    f.far_field = PowerGrowth{-2.0, 0.0, 0.0};
    for (double x : {-2.0, 0.0, 5.0}) EXPECT_NEAR(generator_apply(law, f, x), 0.0, 1e-12);
}

// mpmath: c_alpha int_0^inf {f(x+y) + f(x-y) - 2 f(x)} y^{-1-alpha} dy for f = sqrt(1 + x^2).
TEST(Generator, LinearGrowthOracle) {
    SmoothFunction f;
    f.value = [](double x) { return std::sqrt(1.0 + x * x); };
    f.first = [](double x) { return x / std::sqrt(1.0 + x * x); };
    f.second = [](double x) { return std::pow(1.0 + x * x, -1.5); };
    f.far_field = PowerGrowth{1.0, 1.0, 0.0};
    const struct {
        double alpha, x, value;
    } cases[] = {{1.5, 0.0, 1.4793375596}, {1.5, 2.0, 0.65360754295}, {1.8, 0.0, 1.0907360702}, {1.8, 2.0, 0.22410266812}};
    for (const auto& c : cases)
        EXPECT_NEAR(generator_apply(make_stable_law(c.alpha), f, c.x), c.value, 1e-5) << c.alpha << " " << c.x;
}

TEST(Generator, Linearity) {
    const auto law = make_stable_law(1.5);
    auto c = cosine(1.0);
    auto g = gaussian();
    SmoothFunction sum;
    sum.value = [&](double x) { return 2.0 * c.value(x) + g.value(x); };
    sum.first = [&](double x) { return 2.0 * c.first(x) + g.first(x); };
    sum.second = [&](double x) { return 2.0 * c.second(x) + g.second(x); };
    sum.far_field = BoundedGrowth{3.0};
    const double x = 0.7;
    EXPECT_NEAR(generator_apply(law, sum, x), 2.0 * generator_apply(law, c, x) + generator_apply(law, g, x), 1e-8);
}

TEST(Generator, RejectsGrowthAtOrAboveAlpha) {
    const auto law = make_stable_law(1.5);
    SmoothFunction f;
    f.value = [](double x) { return x * x; };
    f.first = [](double x) { return 2 * x; };
    f.second = [](double) { return 2.0; };
    f.far_field = PowerGrowth{1.0, 2.0, 0.0};
    EXPECT_THROW(generator_apply(law, f, 0.0), DomainError);
}
