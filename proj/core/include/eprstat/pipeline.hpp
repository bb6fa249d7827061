#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eprstat/model.hpp"
#include "eprstat/nullmodels.hpp"
#include "eprstat/observables.hpp"
#include "eprstat/random.hpp"
#include "eprstat/report.hpp"

namespace eprstat {

/// Settings shared by every analysis command.
struct AnalysisConfig {
    ZeroFluxPolicy policy = ZeroFluxPolicy::skip();
    std::size_t burn_in = 0;
    std::size_t mc_reps = 10000;
    Seed seed{0};
    Parallelism parallelism{1};
    std::vector<double> alphas{0.001};
    bool welch = false;
    bool reproducible = false;
    std::string input;
    std::string output;
    std::string space_source = "square_2x2";
    StateSpace space = StateSpace::square_2x2();

    /// Error(InvalidArgument) on mc_reps < 2, alpha outside (0, 1), etc.
    void validate() const;
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Observables and stationarity diagnostics per treatment.
Report analyze(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config);

/// Minimax randomization test: each treatment against a vNM null with the
/// treatment's own action marginals and session lengths, then a paired t
/// across treatments (empirical EPR vs null-mean EPR, one-sided greater).
Report minimax_test(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config);

/// Cycle detection: each treatment's EPR against the i.i.d. baseline B0
/// drawn from its own DOS and round count. A cycle is flagged at alpha when
/// both the t test (B0 mean below the empirical EPR) and the Monte-Carlo
/// upper-tail p-value fall below alpha.
Report cycle_test(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config);

/// OLS of motion on EPR across treatments.
Report motion_fit(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config);

}  // namespace eprstat
