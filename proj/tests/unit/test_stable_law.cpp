// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stablab/error.hpp"
#include "stablab/stable_law.hpp"

using namespace stablab;

namespace {

struct DensityOracle {
    double alpha;
    double c_alpha, big_C, mass;
    double x[6];
    double g[6];
};

// 30-digit mpmath quadrature of (1/pi) int_0^inf cos(xt) exp(-t^alpha) dt.
const DensityOracle kOracles[] = {
    {1.2, 0.33354942991224815, 0.81714166590355007, 0.56745949021079864, {0, 0.5, 1, 3, 10, 45},
     {0.29942005917982891, 0.25999563353551922, 0.18096537442436876, 0.032309557796928249, 0.0022034104707670946,
      7.75864006184071e-5}},
    {1.5, 0.29920671030107451, 2.8199568089598756, 1.2533141373155003, {0, 0.5, 1, 3, 10, 45},
     {0.28735275145216445, 0.26229684036390461, 0.20203815960957512, 0.031509423616436235, 0.001047776024934927,
      2.2260683842583866e-5}},
    {1.8, 0.16490493881830266, 5.7399749575637862, 1.7715972091246256, {0, 0.5, 1, 3, 10, 45},
     {0.28306875859161901, 0.2638518958987329, 0.21418871210513797, 0.030244348676961759, 0.00029763350392937107,
      3.906078943905298e-6}},
};

// scipy.stats.levy_stable.cdf(x, alpha, 0) at x = 1, -3, 50.
struct CdfOracle {
    double alpha;
    double f1, fm3, f50;
};
const CdfOracle kCdf[] = {
    {1.2, 0.7533678112634097, 0.07949754417996135, 0.9974481390297678},
    {1.5, 0.7563420243992705, 0.051597803559184974, 0.9994332540646896},
    {1.8, 0.7587147921208994, 0.029342533991769337, 0.999919598982629},
};

}  // namespace

TEST(StableLaw, RejectsAlphaOutsideOpenInterval) {
    for (double a : {1.0, 2.0, 2.3, 0.5, std::nan("")}) EXPECT_THROW(make_stable_law(a), DomainError) << a;
}

TEST(StableLaw, ConstantsMatchOracle) {
    for (const auto& o : kOracles) {
        const auto law = make_stable_law(o.alpha);
        EXPECT_NEAR(law.c_alpha(), o.c_alpha, 1e-14 * o.c_alpha);
        EXPECT_NEAR(law.big_C_alpha(), o.big_C, 1e-13 * o.big_C);
        EXPECT_NEAR(law.generator_mass(), o.mass, 1e-13 * o.mass);
        EXPECT_NEAR(law.big_C_alpha() / (o.alpha * o.alpha), law.generator_mass(), 1e-13);
    }
}

TEST(StableLaw, BigCPositiveAcrossAlpha) {
    for (int i = 1; i <= 19; ++i) {
        const double a = 1.0 + 0.05 * i;
        EXPECT_GT(make_stable_law(a).big_C_alpha(), 0.0) << a;
    }
}

TEST(StableDensity, MatchesOracle) {
    for (const auto& o : kOracles) {
        const auto law = make_stable_law(o.alpha);
        for (int i = 0; i < 6; ++i) EXPECT_NEAR(stable_density(law, o.x[i]), o.g[i], 1e-9 * o.g[i]) << o.alpha << " " << o.x[i];
    }
}

TEST(StableDensity, ZeroValueClosedForm) {
    for (double a : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        const auto law = make_stable_law(a);
        EXPECT_NEAR(stable_density(law, 0.0), std::tgamma(1.0 + 1.0 / a) / M_PI, 1e-12);
    }
}

TEST(StableDensity, Symmetric) {
    const auto law = make_stable_law(1.5);
    for (double x : {0.1, 0.7, 2.5, 13.0, 39.9, 41.0, 200.0}) EXPECT_EQ(stable_density(law, x), stable_density(law, -x));
}

TEST(StableDensity, TailRatio) {
    for (double a : {1.2, 1.5, 1.8}) {
        const auto law = make_stable_law(a);
        const double r = stable_density(law, 50.0) / (law.c_alpha() * std::pow(50.0, -1.0 - a));
        EXPECT_GT(r, 0.98);
        EXPECT_LT(r, 1.02);
        const double far = stable_density(law, 1e4) / (law.c_alpha() * std::pow(1e4, -1.0 - a));
        EXPECT_NEAR(far, 1.0, 1e-3);
    }
}

TEST(StableDensity, SeriesAgreesWithQuadratureNearCutoff) {
    for (double a : {1.2, 1.5, 1.8}) {
        const auto law = make_stable_law(a);
        const double q = stable_density_jet(law, 42.0).value;
        const double s = stable_density_series(a, 42.0);
        EXPECT_NEAR(s, q, 1e-9 * q) << a;
    }
    EXPECT_TRUE(std::isnan(stable_density_series(1.5, 0.5)));
}

TEST(StableDensity, JetDerivativesMatchFiniteDifferences) {
    const auto law = make_stable_law(1.5);
    for (double x : {0.3, 1.0, 4.0}) {
        const auto j = stable_density_jet(law, x);
        const double h = 1e-4;
        const double d1 = (stable_density(law, x + h) - stable_density(law, x - h)) / (2 * h);
        const double d2 = (stable_density(law, x + h) - 2 * stable_density(law, x) + stable_density(law, x - h)) / (h * h);
        EXPECT_NEAR(j.d1, d1, 1e-8);
        EXPECT_NEAR(j.d2, d2, 1e-5);
    }
}

TEST(DensityTable, MatchesDirectEvaluation) {
    const auto law = make_stable_law(1.5);
    const auto table = density_table(law);
    EXPECT_EQ(table, density_table(law));
    double worst = 0.0;
    for (double x = -60.0; x <= 60.0; x += 0.173) {
        const double d = stable_density(law, x);
        worst = std::max(worst, std::abs((*table)(x) - d) / d);
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(StableCdf, MatchesIndependentOracle) {
    for (const auto& o : kCdf) {
        const auto law = make_stable_law(o.alpha);
        EXPECT_NEAR(stable_cdf(law, 1.0), o.f1, 1e-10);
        EXPECT_NEAR(stable_cdf(law, -3.0), o.fm3, 1e-10);
        EXPECT_NEAR(stable_cdf(law, 50.0), o.f50, 1e-10);
        EXPECT_NEAR(stable_cdf(law, 0.0), 0.5, 1e-15);
        EXPECT_NEAR(stable_cdf(law, 2.0) + stable_cdf(law, -2.0), 1.0, 1e-14);
    }
}

TEST(DensityEnvelope, Comparability) {
    const auto law = make_stable_law(1.5);
    EXPECT_EQ(density_envelope(law, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(density_envelope(law, 4.0), std::pow(4.0, -2.5));
    std::vector<double> grid;
    for (double x = -100; x <= 100; x += 0.5) grid.push_back(x);
    const auto c = envelope_comparability_check(law, grid);
    EXPECT_GT(c.c_lower, 0.0);
    EXPECT_LT(c.c_upper, 1.0);
    EXPECT_LE(c.c_lower, c.c_upper);
    EXPECT_THROW(envelope_comparability_check(law, {}), DomainError);
}

TEST(CertifyDensity, AllChecksPass) {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(-20.0 + 0.4 * i);
    for (double a : {1.2, 1.5, 1.8}) {
        const auto rep = certify_density(make_stable_law(a), grid);
        for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << a << " " << c.name << " " << c.value;
        EXPECT_TRUE(rep.passed());
    }
}

TEST(Sampler, IncrementScalesExactly) {
    const auto law = make_stable_law(1.5);
    RngStream a(9, 1), b(9, 1);
    for (int i = 0; i < 100; ++i) {
        const double z = sample_standard(law, a);
        EXPECT_DOUBLE_EQ(sample_increment(law, 0.25, b), std::pow(0.25, 1.0 / 1.5) * z);
    }
}

TEST(Sampler, KolmogorovDistanceSmall) {
    for (double a : {1.2, 1.8}) {
        const auto law = make_stable_law(a);
        RngStream r(2024, 0);
        std::vector<double> v(20000);
        for (auto& x : v) x = sample_standard(law, r);
        std::sort(v.begin(), v.end());
        double d = 0.0;
        const double n = static_cast<double>(v.size());
        for (std::size_t i = 0; i < v.size(); i += 7) {
            const double F = stable_cdf(law, v[i]);
            d = std::max({d, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
        }
        // 99.9% Kolmogorov quantile 1.95 / sqrt(n).
        EXPECT_LT(d, 1.95 / std::sqrt(n)) << a;
    }
}
