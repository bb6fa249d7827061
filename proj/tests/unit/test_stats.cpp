#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eprstat/error.hpp"
#include "eprstat/stats.hpp"
#include "eprstat/student_t.hpp"
#include "oracles.hpp"

#ifdef EPRSTAT_HAVE_BOOST_MATH
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#endif

using namespace eprstat;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an eprstat::Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

// =============================================================================
// Student t distribution
// =============================================================================

TEST(StudentT, SymmetryAndLimits)
{
    for (double dof : {1.0, 2.5, 10.0, 9999.0}) {
        EXPECT_DOUBLE_EQ(student_t_cdf(0.0, dof), 0.5);
        for (double t : {0.1, 1.0, 3.0, 12.0}) {
            EXPECT_NEAR(student_t_cdf(t, dof) + student_t_cdf(-t, dof), 1.0, 1e-14);
            EXPECT_EQ(student_t_sf(t, dof), student_t_cdf(-t, dof));
        }
    }
    EXPECT_EQ(student_t_cdf(INFINITY, 3), 1.0);
    EXPECT_EQ(student_t_cdf(-INFINITY, 3), 0.0);
    EXPECT_THROW(student_t_cdf(1.0, 0.0), Error);
}

TEST(StudentT, ClosedFormsForSmallDof)
{
    // dof = 1 is Cauchy; dof = 2 has F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
    for (double t : {-20.0, -3.0, -0.5, 0.7, 4.0, 50.0}) {
        EXPECT_NEAR(student_t_cdf(t, 1.0), 0.5 + std::atan(t) / M_PI, 1e-13);
        EXPECT_NEAR(student_t_cdf(t, 2.0), 0.5 + t / (2.0 * std::sqrt(2.0 + t * t)), 1e-13);
    }
}

#ifdef EPRSTAT_HAVE_BOOST_MATH
TEST(StudentT, AgreesWithBoostMath)
{
    for (double dof : {1.0, 2.0, 3.0, 4.0, 7.5, 15.0, 30.0, 99.0, 1000.0, 9999.0}) {
        const boost::math::students_t dist(dof);
        for (double t = -40.0; t <= 40.0; t += 0.37) {
            const double expected = boost::math::cdf(dist, t);
            EXPECT_NEAR(student_t_cdf(t, dof), expected, 1e-10) << "t=" << t << " dof=" << dof;
            const double upper = boost::math::cdf(boost::math::complement(dist, t));
            if (upper > 1e-300) {
                EXPECT_NEAR(student_t_sf(t, dof) / upper, 1.0, 1e-8) << "t=" << t << " dof=" << dof;
            }
        }
    }
}

TEST(IncompleteBeta, AgreesWithBoostMath)
{
    for (double a : {0.5, 1.0, 2.0, 7.5, 50.0, 5000.0}) {
        for (double b : {0.5, 1.0, 3.0, 20.0}) {
            for (double x = 0.0; x <= 1.0; x += 0.0625) {
                EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12)
                    << a << ' ' << b << ' ' << x;
            }
        }
    }
}
#endif

// =============================================================================
// one_sample_t / paired_t / welch_t
// =============================================================================

TEST(OneSampleT, Examples)
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    const auto r = one_sample_t(x, 0.0, Direction::TwoSided);
    EXPECT_NEAR(r.statistic, 3.0 / (std::sqrt(2.5) / std::sqrt(5.0)), 1e-12);
    EXPECT_NEAR(r.statistic, 4.2426, 1e-4);
    EXPECT_EQ(r.dof, 4.0);
    EXPECT_EQ(r.n, 5u);
    // scipy.stats.ttest_1samp([1,2,3,4,5], 0)
    EXPECT_NEAR(r.p_value, 0.013235599563682695, 1e-10);

    const auto centered = one_sample_t(x, 3.0, Direction::TwoSided);
    EXPECT_EQ(centered.statistic, 0.0);
    EXPECT_DOUBLE_EQ(centered.p_value, 1.0);
}

TEST(OneSampleT, ConstantSamples)
{
    const std::vector<double> x(6, 0.3);
    const auto r = one_sample_t(x, 0.3, Direction::Greater);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(code_of([&] { one_sample_t(x, 0.2, Direction::TwoSided); }), ErrorCode::ZeroVariance);
    EXPECT_EQ(code_of([] { one_sample_t(std::vector<double>{1.0}, 0.0, Direction::TwoSided); }),
              ErrorCode::InvalidArgument);
}

TEST(OneSampleT, DirectionsAreConsistent)
{
    const std::vector<double> x{0.3, 1.1, 0.8, 1.6, 0.9, 1.2};
    const auto g = one_sample_t(x, 0.5, Direction::Greater);
    const auto l = one_sample_t(x, 0.5, Direction::Less);
    const auto two = one_sample_t(x, 0.5, Direction::TwoSided);
    EXPECT_NEAR(g.p_value + l.p_value, 1.0, 1e-14);
    EXPECT_NEAR(two.p_value, 2.0 * std::min(g.p_value, l.p_value), 1e-14);
    EXPECT_EQ(g.direction, Direction::Greater);
}

TEST(OneSampleT, ShiftInvariance)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(10);
        for (auto& v : x) {
            v = nd(rng);
        }
        const double c = 10.0 * nd(rng);
        std::vector<double> shifted = x;
        for (auto& v : shifted) {
            v += c;
        }
        const auto a = one_sample_t(x, 0.2, Direction::TwoSided);
        const auto b = one_sample_t(shifted, 0.2 + c, Direction::TwoSided);
        EXPECT_NEAR(a.statistic, b.statistic, 1e-9 * (1 + std::abs(a.statistic)));
    }
}

TEST(PairedT, Examples)
{
    const std::vector<double> x{2, 3, 5};
    const std::vector<double> y{1, 1, 2};
    const auto r = paired_t(x, y, Direction::Greater);
    EXPECT_NEAR(r.statistic, 2.0 / (1.0 / std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(r.statistic, 3.4641, 1e-4);
    EXPECT_EQ(r.dof, 2.0);
    // scipy.stats.ttest_rel([2,3,5],[1,1,2], alternative='greater')
    EXPECT_NEAR(r.p_value, 0.03708995011372426, 1e-10);

    const auto same = paired_t(x, x, Direction::TwoSided);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_EQ(same.p_value, 1.0);

    const std::vector<double> shifted{3, 4, 6};
    EXPECT_EQ(code_of([&] { paired_t(shifted, x, Direction::Greater); }), ErrorCode::ZeroVariance);
    EXPECT_EQ(code_of([&] { paired_t(x, std::vector<double>{1, 2}, Direction::Greater); }),
              ErrorCode::LengthMismatch);
}

TEST(PairedT, EqualsOneSampleOnDifferences)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(16), y(16), d(16);
        for (std::size_t i = 0; i < 16; ++i) {
            x[i] = u(rng);
            y[i] = u(rng);
            d[i] = x[i] - y[i];
        }
        const auto a = paired_t(x, y, Direction::Greater);
        const auto b = one_sample_t(d, 0.0, Direction::Greater);
        EXPECT_EQ(a.statistic, b.statistic);
        EXPECT_EQ(a.p_value, b.p_value);
    }
}

TEST(WelchT, MatchesScipy)
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{2, 4, 6, 8, 10, 12};
    const auto two = welch_t(x, y, Direction::TwoSided);
    EXPECT_NEAR(two.statistic, -2.3763541031440183, 1e-12);
    EXPECT_NEAR(two.dof, 6.972255729794934, 1e-10);
    EXPECT_NEAR(two.p_value, 0.04928433820673049, 1e-10);
    EXPECT_NEAR(welch_t(x, y, Direction::Less).p_value, 0.024642169103365245, 1e-10);
}

// =============================================================================
// percentile_of
// =============================================================================

TEST(Percentile, Examples)
{
    const std::vector<double> s{1, 2, 3, 4};
    EXPECT_EQ(percentile_of(s, 0.0), 0.0);
    EXPECT_EQ(percentile_of(s, 9.0), 1.0);
    EXPECT_EQ(percentile_of(s, 2.5), 0.5);
    EXPECT_EQ(percentile_of(s, 2.0), 0.375);
    EXPECT_THROW(percentile_of(std::vector<double>{}, 1.0), Error);
}

TEST(Percentile, Monotone)
{
    std::mt19937_64 rng(8);
    std::vector<double> s(101);
    for (auto& v : s) {
        v = static_cast<double>(rng() % 20);
    }
    double prev = -1.0;
    for (double v = -1.0; v <= 21.0; v += 0.25) {
        const double p = percentile_of(s, v);
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(McPValue, CountsUpperTail)
{
    const std::vector<double> s{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mc_upper_p_value(s, 10.0), 1.0 / 5.0);
    EXPECT_DOUBLE_EQ(mc_upper_p_value(s, 3.0), 3.0 / 5.0);
    EXPECT_DOUBLE_EQ(mc_upper_p_value(s, 0.0), 1.0);
}

// =============================================================================
// ols_fit
// =============================================================================

TEST(OlsFit, PerfectLine)
{
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const auto f = ols_fit(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
    EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
    EXPECT_NEAR(f.intercept_stderr, 0.0, 1e-12);
    EXPECT_EQ(f.n, 4u);
}

TEST(OlsFit, ConstantY)
{
    const auto f = ols_fit(std::vector<double>{1, 2, 3, 4}, std::vector<double>{0.7, 0.7, 0.7, 0.7});
    EXPECT_NEAR(f.slope, 0.0, 1e-15);
    EXPECT_EQ(f.r_squared, 0.0);
}

TEST(OlsFit, SmallExampleAgainstNormalEquations)
{
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{2, 2, 5};
    const auto oracle_fit = oracle::normal_equations(x, y);
    // Frozen from the oracle: slope 3/2, intercept 0, R^2 = 1 - 1.5/6.
    EXPECT_NEAR(oracle_fit.slope, 1.5, 1e-14);
    EXPECT_NEAR(oracle_fit.intercept, 0.0, 1e-14);
    EXPECT_NEAR(oracle_fit.r_squared, 0.75, 1e-14);

    const auto f = ols_fit(x, y);
    EXPECT_NEAR(f.slope, 1.5, 1e-14);
    EXPECT_NEAR(f.intercept, 0.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 0.75, 1e-14);
    // s^2 = 1.5 / 1, Sxx = 2
    EXPECT_NEAR(f.slope_stderr, std::sqrt(1.5 / 2.0), 1e-14);
    EXPECT_NEAR(f.intercept_stderr, std::sqrt(1.5 * (1.0 / 3.0 + 4.0 / 2.0)), 1e-14);
}

TEST(OlsFit, RandomDataAgainstNormalEquations)
{
    std::mt19937_64 rng(12);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(16), y(16);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = nd(rng);
            y[i] = 0.064 * x[i] + 0.01 * nd(rng);
        }
        const auto o = oracle::normal_equations(x, y);
        const auto f = ols_fit(x, y);
        EXPECT_NEAR(f.slope, o.slope, 1e-12);
        EXPECT_NEAR(f.intercept, o.intercept, 1e-12);
        EXPECT_NEAR(f.r_squared, o.r_squared, 1e-12);
    }
}

TEST(OlsFit, AffineEquivariance)
{
    std::mt19937_64 rng(13);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> x(12), y(12);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = nd(rng);
        y[i] = 2.0 * x[i] + nd(rng);
    }
    const double a = 3.5, b = -1.25;
    std::vector<double> xt(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xt[i] = a * x[i] + b;
    }
    const auto f = ols_fit(x, y);
    const auto g = ols_fit(xt, y);
    EXPECT_NEAR(g.slope, f.slope / a, 1e-12);
    EXPECT_NEAR(g.intercept, f.intercept - f.slope * b / a, 1e-12);
    EXPECT_NEAR(g.r_squared, f.r_squared, 1e-12);
}

TEST(OlsFit, Errors)
{
    EXPECT_EQ(code_of([] { ols_fit(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}); }),
              ErrorCode::DegenerateX);
    EXPECT_EQ(code_of([] { ols_fit(std::vector<double>{0, 0, 0}, std::vector<double>{0, 0, 0}); }),
              ErrorCode::DegenerateX);
    EXPECT_EQ(code_of([] { ols_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { ols_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}); }),
              ErrorCode::LengthMismatch);
}
