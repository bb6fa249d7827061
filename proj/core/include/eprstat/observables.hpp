#pragma once

#include <cstddef>
#include <string>

#include "eprstat/matrix.hpp"
#include "eprstat/model.hpp"

namespace eprstat {

/// What to do with a state pair where exactly one directed flux is zero,
/// which leaves the log-ratio term undefined.
struct ZeroFluxPolicy {
    enum class Mode { Skip, Smooth, Strict };

    Mode mode = Mode::Skip;
    double epsilon = 0.0;  // only meaningful for Smooth

    static ZeroFluxPolicy skip() { return {Mode::Skip, 0.0}; }
    static ZeroFluxPolicy strict() { return {Mode::Strict, 0.0}; }
    /// Throws Error(InvalidArgument) unless 0 < eps <= 1e-3.
    static ZeroFluxPolicy smooth(double eps);

    /// Accepts "skip", "strict" or "smooth=EPS".
    static ZeroFluxPolicy parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const ZeroFluxPolicy&, const ZeroFluxPolicy&) = default;
};

struct EprResult {
    double value = 0.0;
    /// Unordered pairs dropped by the skip policy.
    std::size_t skipped_pairs = 0;
    /// Unordered pairs with exactly one zero flux, whatever the policy did.
    std::size_t one_sided_pairs = 0;
};

struct ObservableReport {
    double entropy = 0.0;
    double epr = 0.0;
    Matrix<double> velocity;  // r x d
    double motion = 0.0;
    std::size_t skipped_pairs = 0;
    std::size_t one_sided_pairs = 0;
    ZeroFluxPolicy policy_used;
};

/// Normalized Shannon entropy -sum_i P_i log_r P_i, with 0 log 0 = 0.
double entropy(const MarkovEstimate& chain);

/// Entropy production rate
///   1/2 sum_{i != j} (P_i w_ij - P_j w_ji) log_r(P_i w_ij / P_j w_ji),
/// evaluated as a sum over unordered pairs. Pairs with both fluxes zero
/// contribute nothing. Pairs with one zero flux are handled by `policy`;
/// under strict they raise OneSidedZeroFluxError.
EprResult epr(const MarkovEstimate& chain, ZeroFluxPolicy policy = ZeroFluxPolicy::skip());

/// Net probability current at each state projected on each coordinate axis:
///   v_ia = sum_j (P_j w_ji - P_i w_ij)(x_ia - x_ja).
Matrix<double> velocity(const MarkovEstimate& chain);

/// M = 1/2 sum_{i,a} P_i v_ia^2.
double motion(const MarkovEstimate& chain);
double motion(const MarkovEstimate& chain, const Matrix<double>& velocity);

ObservableReport full_report(const MarkovEstimate& chain, ZeroFluxPolicy policy = ZeroFluxPolicy::skip());

}  // namespace eprstat
