#include "eprstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "eprstat/error.hpp"
#include "eprstat/student_t.hpp"

namespace eprstat {

namespace {

// Spread below this fraction of the data's magnitude is rounding noise.
constexpr double kRelativeZero = 1e-13;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // n - 1 denominator
    double scale = 0.0;     // max |x|
};

Moments moments(std::span<const double> v)
{
    Moments m;
    for (double x : v) {
        m.mean += x;
        m.scale = std::max(m.scale, std::abs(x));
    }
    m.mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m.mean) * (x - m.mean);
    }
    m.variance = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    return m;
}

double p_value(double t, double dof, Direction direction)
{
    switch (direction) {
    case Direction::Greater: return student_t_sf(t, dof);
    case Direction::Less: return student_t_cdf(t, dof);
    case Direction::TwoSided: return std::min(1.0, 2.0 * student_t_cdf(-std::abs(t), dof));
    }
    return 1.0;
}

}  // namespace

std::string to_string(Direction d)
{
    switch (d) {
    case Direction::TwoSided: return "two_sided";
    case Direction::Greater: return "greater";
    case Direction::Less: return "less";
    }
    return "two_sided";
}

Direction parse_direction(const std::string& text)
{
    if (text == "two_sided") {
        return Direction::TwoSided;
    }
    if (text == "greater") {
        return Direction::Greater;
    }
    if (text == "less") {
        return Direction::Less;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown test direction '" + text + "'");
}

TestResult one_sample_t(std::span<const double> samples, double reference, Direction direction)
{
    const auto n = samples.size();
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "a t test needs at least 2 samples");
    }
    const auto m = moments(samples);
    const double sd = std::sqrt(m.variance);
    const double scale = std::max(m.scale, std::abs(reference));

    TestResult out;
    out.n = n;
    out.dof = static_cast<double>(n - 1);
    out.direction = direction;
    if (sd <= kRelativeZero * scale) {
        if (std::abs(m.mean - reference) <= kRelativeZero * scale) {
            out.statistic = 0.0;
            out.p_value = 1.0;
            return out;
        }
        throw Error(ErrorCode::ZeroVariance, "samples have zero variance and differ from the reference");
    }
    out.statistic = (m.mean - reference) / (sd / std::sqrt(static_cast<double>(n)));
    out.p_value = p_value(out.statistic, out.dof, direction);
    return out;
}

TestResult paired_t(std::span<const double> x, std::span<const double> y, Direction direction)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "paired samples of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
    }
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        diff[i] = x[i] - y[i];
    }
    return one_sample_t(diff, 0.0, direction);
}

TestResult welch_t(std::span<const double> x, std::span<const double> y, Direction direction)
{
    if (x.size() < 2 || y.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "Welch test needs at least 2 samples per group");
    }
    const auto mx = moments(x);
    const auto my = moments(y);
    const double vx = mx.variance / static_cast<double>(x.size());
    const double vy = my.variance / static_cast<double>(y.size());
    const double se2 = vx + vy;
    const double scale = std::max(mx.scale, my.scale);

    TestResult out;
    out.n = x.size() + y.size();
    out.direction = direction;
    if (std::sqrt(se2) <= kRelativeZero * scale) {
        if (std::abs(mx.mean - my.mean) <= kRelativeZero * scale) {
            out.dof = static_cast<double>(out.n - 2);
            return out;
        }
        throw Error(ErrorCode::ZeroVariance, "both groups have zero variance and different means");
    }
    out.statistic = (mx.mean - my.mean) / std::sqrt(se2);
    out.dof = se2 * se2 /
              (vx * vx / static_cast<double>(x.size() - 1) + vy * vy / static_cast<double>(y.size() - 1));
    out.p_value = p_value(out.statistic, out.dof, direction);
    return out;
}

double percentile_of(std::span<const double> samples, double value)
{
    if (samples.empty()) {
        throw Error(ErrorCode::EmptyData, "percentile of an empty sample");
    }
    double below = 0.0;
    for (double s : samples) {
        if (s < value) {
            below += 1.0;
        } else if (s == value) {
            below += 0.5;
        }
    }
    return below / static_cast<double>(samples.size());
}

double mc_upper_p_value(std::span<const double> samples, double value)
{
    const auto at_least = std::count_if(samples.begin(), samples.end(), [&](double s) { return s >= value; });
    return static_cast<double>(at_least + 1) / static_cast<double>(samples.size() + 1);
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "x and y differ in length");
    }
    const auto n = x.size();
    if (n < 3) {
        throw Error(ErrorCode::InvalidArgument, "a line fit with standard errors needs at least 3 points");
    }
    const auto mx = moments(x);
    const auto my = moments(y);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx.mean;
        const double dy = y[i] - my.mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (std::sqrt(sxx / static_cast<double>(n)) <= kRelativeZero * mx.scale || sxx == 0.0) {
        throw Error(ErrorCode::DegenerateX, "x has zero variance");
    }

    OlsFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my.mean - fit.slope * mx.mean;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += e * e;
    }
    const double s2 = ssr / static_cast<double>(n - 2);
    fit.slope_stderr = std::sqrt(s2 / sxx);
    fit.intercept_stderr = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx.mean * mx.mean / sxx));
    const bool constant_y = std::sqrt(syy / static_cast<double>(n)) <= kRelativeZero * my.scale;
    fit.r_squared = (syy > 0.0 && !constant_y) ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 0.0;
    return fit;
}

}  // namespace eprstat
