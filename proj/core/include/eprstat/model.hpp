#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eprstat/matrix.hpp"

namespace eprstat {

/// Index of a state in a StateSpace, in [0, r).
using State = std::uint32_t;

/// The r states of a system together with their Euclidean coordinates.
/// Coordinates feed the velocity field; every state has a d-vector, d >= 1.
class StateSpace {
public:
    /// Throws Error(InvalidArgument) if r < 2, the label and coordinate
    /// counts differ, or the coordinate vectors have mixed dimensions.
    StateSpace(std::vector<std::string> labels, std::vector<std::vector<double>> coordinates);

    /// Two-population 2x2 game: states (0,0),(0,1),(1,0),(1,1) in index order,
    /// so state = 2 * row_action + col_action.
    static StateSpace square_2x2();

    /// r states labelled "0".."r-1" placed on the unit simplex (one-hot).
    static StateSpace indexed(std::size_t r);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dimension() const noexcept { return coordinates_.front().size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::vector<double>>& coordinates() const noexcept { return coordinates_; }
    double coordinate(std::size_t state, std::size_t axis) const { return coordinates_[state][axis]; }

    /// Same space with every coordinate multiplied by `factor`.
    StateSpace scaled(double factor) const;

    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> coordinates_;
};

struct Trajectory {
    std::string session_id;
    std::vector<State> states;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// All recorded sessions of one experimental treatment.
class TreatmentDataset {
public:
    /// Throws Error(StateOutOfRange) if any state index is >= space.size().
    TreatmentDataset(std::string treatment_id, StateSpace space, std::vector<Trajectory> sessions,
                     std::map<std::string, std::string> meta = {});

    const std::string& treatment_id() const noexcept { return treatment_id_; }
    const StateSpace& space() const noexcept { return space_; }
    const std::vector<Trajectory>& sessions() const noexcept { return sessions_; }
    const std::map<std::string, std::string>& meta() const noexcept { return meta_; }

    std::size_t total_observations() const noexcept;

    friend bool operator==(const TreatmentDataset&, const TreatmentDataset&) = default;

private:
    std::string treatment_id_;
    StateSpace space_;
    std::vector<Trajectory> sessions_;
    std::map<std::string, std::string> meta_;
};

/// Density of states and transition matrix of a first-order chain, either
/// estimated from counts or given exactly.
///
/// Rows of `transition` for states that were never left (no outgoing pair)
/// are all zero and flagged in `never_left`.
class MarkovEstimate {
public:
    /// Exact chain, for analytic evaluation of observables. `dos` must be a
    /// probability vector; every row of `transition` must either sum to one
    /// (within 1e-9) or be all zero (then flagged). Throws
    /// Error(InvalidDistribution) otherwise. Counts are left empty.
    static MarkovEstimate exact(StateSpace space, std::vector<double> dos, Matrix<double> transition);

    /// Builds the estimate from raw counts: dos = occupancy / n_observations,
    /// transition rows = counts normalized by their row sums.
    static MarkovEstimate from_counts(StateSpace space, std::vector<std::uint64_t> occupancy,
                                      Matrix<std::uint64_t> counts);

    const StateSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const std::vector<double>& dos() const noexcept { return dos_; }
    const Matrix<double>& transition() const noexcept { return transition_; }
    const Matrix<std::uint64_t>& counts() const noexcept { return counts_; }
    const std::vector<std::uint64_t>& occupancy() const noexcept { return occupancy_; }
    std::uint64_t n_observations() const noexcept { return n_observations_; }
    const std::vector<bool>& never_left() const noexcept { return never_left_; }
    bool is_exact() const noexcept { return exact_; }

    /// Directed probability flux P_i * w_ij.
    double flux(std::size_t i, std::size_t j) const { return dos_[i] * transition_(i, j); }

private:
    MarkovEstimate() = default;

    StateSpace space_ = StateSpace::indexed(2);
    std::vector<double> dos_;
    Matrix<double> transition_;
    Matrix<std::uint64_t> counts_;
    std::vector<std::uint64_t> occupancy_;
    std::uint64_t n_observations_ = 0;
    std::vector<bool> never_left_;
    bool exact_ = false;
};

/// Pools occupancy over every session and counts consecutive pairs within
/// sessions only, after discarding the first `burn_in` rounds of each.
///
/// Throws Error(EmptyData) when nothing is retained and
/// Error(AllSessionsTooShort) when no transition pair exists.
MarkovEstimate estimate_markov(const TreatmentDataset& data, std::size_t burn_in = 0);

/// Overload for callers holding bare sessions (Monte-Carlo replicates).
MarkovEstimate estimate_markov(const StateSpace& space, std::span<const Trajectory> sessions,
                               std::size_t burn_in = 0);

struct StationarityDiagnostic {
    std::vector<double> first_half_dos;
    std::vector<double> second_half_dos;
    std::uint64_t first_half_n = 0;
    std::uint64_t second_half_n = 0;
    /// max_i |first_half_dos[i] - second_half_dos[i]|
    double linf_distance = 0.0;
};

/// Splits each session's retained rounds at their midpoint and compares the
/// pooled first-half DOS with the pooled second-half DOS. Advisory only.
StationarityDiagnostic stationarity_diagnostic(const TreatmentDataset& data, std::size_t burn_in = 0);

}  // namespace eprstat
