#include "eprstat/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eprstat/error.hpp"

namespace eprstat {

StateSpace::StateSpace(std::vector<std::string> labels, std::vector<std::vector<double>> coordinates)
    : labels_(std::move(labels)), coordinates_(std::move(coordinates))
{
    if (labels_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "a state space needs at least 2 states");
    }
    if (labels_.size() != coordinates_.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    std::to_string(labels_.size()) + " labels but " + std::to_string(coordinates_.size()) +
                        " coordinate vectors");
    }
    const auto d = coordinates_.front().size();
    if (d == 0) {
        throw Error(ErrorCode::InvalidArgument, "coordinate dimension must be at least 1");
    }
    for (const auto& c : coordinates_) {
        if (c.size() != d) {
            throw Error(ErrorCode::InvalidArgument, "coordinate vectors have mixed dimensions");
        }
        for (double v : c) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::InvalidArgument, "coordinates must be finite");
            }
        }
    }
}

StateSpace StateSpace::square_2x2()
{
    return StateSpace({"(0,0)", "(0,1)", "(1,0)", "(1,1)"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

StateSpace StateSpace::indexed(std::size_t r)
{
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < r; ++i) {
        labels.push_back(std::to_string(i));
        std::vector<double> c(r, 0.0);
        c[i] = 1.0;
        coords.push_back(std::move(c));
    }
    return StateSpace(std::move(labels), std::move(coords));
}

StateSpace StateSpace::scaled(double factor) const
{
    auto coords = coordinates_;
    for (auto& c : coords) {
        for (auto& v : c) {
            v *= factor;
        }
    }
    return StateSpace(labels_, std::move(coords));
}

//---------------------------------------------------------------------------//

TreatmentDataset::TreatmentDataset(std::string treatment_id, StateSpace space,
                                   std::vector<Trajectory> sessions,
                                   std::map<std::string, std::string> meta)
    : treatment_id_(std::move(treatment_id)),
      space_(std::move(space)),
      sessions_(std::move(sessions)),
      meta_(std::move(meta))
{
    const auto r = space_.size();
    for (const auto& s : sessions_) {
        for (std::size_t t = 0; t < s.states.size(); ++t) {
            if (s.states[t] >= r) {
                throw Error(ErrorCode::StateOutOfRange,
                            "treatment '" + treatment_id_ + "' session '" + s.session_id + "' position " +
                                std::to_string(t) + ": state " + std::to_string(s.states[t]) +
                                " outside [0, " + std::to_string(r) + ")");
            }
        }
    }
}

std::size_t TreatmentDataset::total_observations() const noexcept
{
    std::size_t n = 0;
    for (const auto& s : sessions_) {
        n += s.states.size();
    }
    return n;
}

//---------------------------------------------------------------------------//

MarkovEstimate MarkovEstimate::exact(StateSpace space, std::vector<double> dos, Matrix<double> transition)
{
    constexpr double tol = 1e-9;
    const auto r = space.size();
    if (dos.size() != r || transition.rows() != r || transition.cols() != r) {
        throw Error(ErrorCode::InvalidDistribution, "dos/transition shape does not match the state space");
    }
    double total = 0.0;
    for (double p : dos) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw Error(ErrorCode::InvalidDistribution, "dos entries must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw Error(ErrorCode::InvalidDistribution, "dos does not sum to 1");
    }

    MarkovEstimate m;
    m.never_left_.assign(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        double row = 0.0;
        for (double w : transition.row(i)) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error(ErrorCode::InvalidDistribution, "transition entries must be finite and nonnegative");
            }
            row += w;
        }
        if (row == 0.0) {
            m.never_left_[i] = true;
        } else if (std::abs(row - 1.0) > tol) {
            throw Error(ErrorCode::InvalidDistribution,
                        "transition row " + std::to_string(i) + " sums to " + std::to_string(row));
        }
    }
    m.space_ = std::move(space);
    m.dos_ = std::move(dos);
    m.transition_ = std::move(transition);
    m.counts_ = Matrix<std::uint64_t>(r, r, 0);
    m.occupancy_.assign(r, 0);
    m.exact_ = true;
    return m;
}

MarkovEstimate MarkovEstimate::from_counts(StateSpace space, std::vector<std::uint64_t> occupancy,
                                           Matrix<std::uint64_t> counts)
{
    const auto r = space.size();
    if (occupancy.size() != r || counts.rows() != r || counts.cols() != r) {
        throw InvariantViolation("occupancy/count shape does not match the state space");
    }
    const std::uint64_t n = std::accumulate(occupancy.begin(), occupancy.end(), std::uint64_t{0});
    if (n == 0) {
        throw Error(ErrorCode::EmptyData, "no retained observations");
    }
    std::uint64_t pairs = 0;
    for (auto c : counts.data()) {
        pairs += c;
    }
    if (pairs == 0) {
        throw Error(ErrorCode::AllSessionsTooShort, "no consecutive state pairs within any session");
    }

    MarkovEstimate m;
    m.dos_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        m.dos_[i] = static_cast<double>(occupancy[i]) / static_cast<double>(n);
    }
    m.transition_ = Matrix<double>(r, r, 0.0);
    m.never_left_.assign(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        std::uint64_t row = 0;
        for (auto c : counts.row(i)) {
            row += c;
        }
        if (row > 0 && occupancy[i] == 0) {
            throw InvariantViolation("transition counted out of a never-occupied state");
        }
        if (row == 0) {
            m.never_left_[i] = true;
            continue;
        }
        for (std::size_t j = 0; j < r; ++j) {
            m.transition_(i, j) = static_cast<double>(counts(i, j)) / static_cast<double>(row);
        }
    }
    m.space_ = std::move(space);
    m.counts_ = std::move(counts);
    m.occupancy_ = std::move(occupancy);
    m.n_observations_ = n;
    return m;
}

//---------------------------------------------------------------------------//

MarkovEstimate estimate_markov(const StateSpace& space, std::span<const Trajectory> sessions,
                               std::size_t burn_in)
{
    const auto r = space.size();
    std::vector<std::uint64_t> occupancy(r, 0);
    Matrix<std::uint64_t> counts(r, r, 0);

    for (const auto& session : sessions) {
        const auto& s = session.states;
        if (s.size() <= burn_in) {
            continue;
        }
        for (std::size_t t = burn_in; t < s.size(); ++t) {
            if (s[t] >= r) {
                throw Error(ErrorCode::StateOutOfRange, "state " + std::to_string(s[t]) + " outside the space");
            }
            ++occupancy[s[t]];
            if (t + 1 < s.size()) {
                if (s[t + 1] >= r) {
                    throw Error(ErrorCode::StateOutOfRange,
                                "state " + std::to_string(s[t + 1]) + " outside the space");
                }
                ++counts(s[t], s[t + 1]);
            }
        }
    }
    return MarkovEstimate::from_counts(space, std::move(occupancy), std::move(counts));
}

MarkovEstimate estimate_markov(const TreatmentDataset& data, std::size_t burn_in)
{
    return estimate_markov(data.space(), data.sessions(), burn_in);
}

StationarityDiagnostic stationarity_diagnostic(const TreatmentDataset& data, std::size_t burn_in)
{
    // Same preconditions and errors as the estimator.
    (void)estimate_markov(data, burn_in);

    const auto r = data.space().size();
    std::vector<std::uint64_t> first(r, 0);
    std::vector<std::uint64_t> second(r, 0);
    for (const auto& session : data.sessions()) {
        const auto& s = session.states;
        if (s.size() <= burn_in) {
            continue;
        }
        const auto retained = s.size() - burn_in;
        const auto mid = burn_in + retained / 2;
        for (std::size_t t = burn_in; t < s.size(); ++t) {
            ++(t < mid ? first : second)[s[t]];
        }
    }

    StationarityDiagnostic d;
    d.first_half_n = std::accumulate(first.begin(), first.end(), std::uint64_t{0});
    d.second_half_n = std::accumulate(second.begin(), second.end(), std::uint64_t{0});
    d.first_half_dos.assign(r, 0.0);
    d.second_half_dos.assign(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        if (d.first_half_n > 0) {
            d.first_half_dos[i] = static_cast<double>(first[i]) / static_cast<double>(d.first_half_n);
        }
        if (d.second_half_n > 0) {
            d.second_half_dos[i] = static_cast<double>(second[i]) / static_cast<double>(d.second_half_n);
        }
        d.linf_distance = std::max(d.linf_distance, std::abs(d.first_half_dos[i] - d.second_half_dos[i]));
    }
    return d;
}

}  // namespace eprstat
