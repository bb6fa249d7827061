#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eprstat/matrix.hpp"
#include "eprstat/model.hpp"
#include "eprstat/observables.hpp"
#include "eprstat/random.hpp"

namespace eprstat {

/// Independent mixed-strategy play in a two-population 2x2 game. Each round
/// the row player picks action 1 with probability `p` and the column player
/// picks action 1 with probability `q`.
struct VnmParams {
    double p = 0.5;
    double q = 0.5;
    std::size_t sessions = 1;
    std::size_t rounds_per_session = 2;
    /// When nonempty, overrides sessions/rounds_per_session so a null can
    /// mirror a dataset with unequal session lengths.
    std::vector<std::size_t> session_lengths;

    /// Throws Error(InvalidArgument) on out-of-range values.
    void validate() const;
    std::vector<std::size_t> lengths() const;
};

/// Monte-Carlo sample of one observable under a null model.
struct BaselineDistribution {
    std::string observable_name;
    std::vector<double> samples;
    Seed seed;
    ZeroFluxPolicy policy;
    std::map<std::string, std::string> constraint_summary;

    double mean() const;
    /// Sample standard deviation (n - 1 denominator); 0 for a single sample.
    double stddev() const;
};

/// Worker count for replicate loops; 0 selects the hardware concurrency.
/// Results never depend on this value.
struct Parallelism {
    unsigned threads = 1;
};

/// s_0 ~ dos0, s_{t+1} ~ transition[s_t], n states in total.
/// Throws Error(InvalidDistribution) if dos0 or a reachable-or-not row fails
/// to sum to 1 within 1e-9 (all-zero rows are rejected too).
Trajectory simulate_chain(std::span<const double> dos0, const Matrix<double>& transition, std::size_t n,
                          Seed seed);

/// One dataset of independent Bernoulli play. `space` must be the canonical
/// 2x2 square; the joint state is 2 * row_action + col_action.
TreatmentDataset simulate_vnm(const VnmParams& params, const StateSpace& space, Seed seed,
                              std::string treatment_id = "vnm");

/// Entropy and EPR baselines of the vNM null: each replicate simulates a
/// dataset, estimates the chain, and records both observables.
std::pair<BaselineDistribution, BaselineDistribution> vnm_null_distribution(const VnmParams& params,
                                                                            std::size_t reps,
                                                                            ZeroFluxPolicy policy, Seed seed,
                                                                            Parallelism par = {});

/// Finite-sample EPR baseline (B0): each replicate draws an i.i.d. sequence
/// of `n_rounds` states from `dos` and evaluates the estimated chain's EPR.
BaselineDistribution dos_baseline(std::span<const double> dos, std::size_t n_rounds, std::size_t reps,
                                  ZeroFluxPolicy policy, Seed seed, Parallelism par = {});

}  // namespace eprstat
