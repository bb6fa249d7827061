#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace eprstat {

/// Alternative hypothesis of a location test. `Greater` means the sample
/// mean exceeds the reference (or x exceeds y for paired tests).
enum class Direction { TwoSided, Greater, Less };

std::string to_string(Direction d);
/// Accepts "two_sided", "greater", "less".
Direction parse_direction(const std::string& text);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double dof = 0.0;
    std::size_t n = 0;
    Direction direction = Direction::TwoSided;
};

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

/// Classical one-sample t test of mean(samples) against `reference`, with
/// n - 1 degrees of freedom.
///
/// Needs n >= 2. Samples with zero spread are accepted only when they sit
/// on the reference (statistic 0, p = 1); otherwise Error(ZeroVariance).
TestResult one_sample_t(std::span<const double> samples, double reference, Direction direction);

/// One-sample t on the element-wise differences x - y against 0.
/// Error(LengthMismatch) when the sizes differ.
TestResult paired_t(std::span<const double> x, std::span<const double> y, Direction direction);

/// Two-sample Welch t with Welch-Satterthwaite degrees of freedom. Offered
/// as a sensitivity check next to the paired comparison.
TestResult welch_t(std::span<const double> x, std::span<const double> y, Direction direction);

/// Fraction of samples strictly below `value`, plus half the ties.
double percentile_of(std::span<const double> samples, double value);

/// Upper-tail Monte-Carlo p-value (#{s >= value} + 1) / (n + 1).
double mc_upper_p_value(std::span<const double> samples, double value);

/// Least-squares line y = slope * x + intercept.
/// Needs n >= 3 (Error(InvalidArgument)) and nonconstant x (Error(DegenerateX)).
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

}  // namespace eprstat
