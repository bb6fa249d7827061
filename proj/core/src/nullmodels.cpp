#include "eprstat/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "eprstat/error.hpp"
#include "parallel.hpp"

namespace eprstat {

namespace {

constexpr double kRowTolerance = 1e-9;

void check_probability_vector(std::span<const double> v, const std::string& what)
{
    double total = 0.0;
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw Error(ErrorCode::InvalidDistribution, what + " has a negative or non-finite entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > kRowTolerance) {
        throw Error(ErrorCode::InvalidDistribution, what + " sums to " + std::to_string(total));
    }
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void VnmParams::validate() const
{
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "vNM probabilities must lie in [0, 1]");
    }
    if (session_lengths.empty()) {
        if (sessions < 1) {
            throw Error(ErrorCode::InvalidArgument, "vNM null needs at least one session");
        }
        if (rounds_per_session < 2) {
            throw Error(ErrorCode::InvalidArgument, "vNM null needs at least 2 rounds per session");
        }
    } else if (std::none_of(session_lengths.begin(), session_lengths.end(),
                            [](std::size_t n) { return n >= 2; })) {
        throw Error(ErrorCode::InvalidArgument, "vNM null needs a session with at least 2 rounds");
    }
}

std::vector<std::size_t> VnmParams::lengths() const
{
    if (!session_lengths.empty()) {
        return session_lengths;
    }
    return std::vector<std::size_t>(sessions, rounds_per_session);
}

double BaselineDistribution::mean() const
{
    if (samples.empty()) {
        return 0.0;
    }
    return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

double BaselineDistribution::stddev() const
{
    if (samples.size() < 2) {
        return 0.0;
    }
    const double m = mean();
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

//---------------------------------------------------------------------------//

Trajectory simulate_chain(std::span<const double> dos0, const Matrix<double>& transition, std::size_t n,
                          Seed seed)
{
    const auto r = dos0.size();
    if (transition.rows() != r || transition.cols() != r) {
        throw Error(ErrorCode::InvalidDistribution, "transition shape does not match dos0");
    }
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "simulate_chain needs n >= 2");
    }
    check_probability_vector(dos0, "initial distribution");
    std::vector<DiscreteSampler> rows;
    rows.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        check_probability_vector(transition.row(i), "transition row " + std::to_string(i));
        rows.emplace_back(transition.row(i));
    }

    Xoshiro256pp rng(seed);
    Trajectory traj{"sim", {}};
    traj.states.reserve(n);
    State s = DiscreteSampler(dos0)(rng);
    traj.states.push_back(s);
    for (std::size_t t = 1; t < n; ++t) {
        s = rows[s](rng);
        traj.states.push_back(s);
    }
    return traj;
}

TreatmentDataset simulate_vnm(const VnmParams& params, const StateSpace& space, Seed seed,
                              std::string treatment_id)
{
    params.validate();
    if (!(space == StateSpace::square_2x2())) {
        // Labels may differ; only the geometry is fixed.
        if (space.size() != 4 || space.coordinates() != StateSpace::square_2x2().coordinates()) {
            throw Error(ErrorCode::InvalidArgument,
                        "vNM simulation needs the canonical 2x2 square state space");
        }
    }

    const auto lengths = params.lengths();
    std::vector<Trajectory> sessions;
    sessions.reserve(lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        Xoshiro256pp rng(seed.split(k));
        Trajectory traj{"S" + std::to_string(k + 1), {}};
        traj.states.reserve(lengths[k]);
        for (std::size_t t = 0; t < lengths[k]; ++t) {
            const State row = rng.uniform() < params.p ? 1 : 0;
            const State col = rng.uniform() < params.q ? 1 : 0;
            traj.states.push_back(2 * row + col);
        }
        sessions.push_back(std::move(traj));
    }
    return TreatmentDataset(std::move(treatment_id), space, std::move(sessions),
                            {{"generator", "vnm"}, {"p", format_double(params.p)}, {"q", format_double(params.q)}});
}

std::pair<BaselineDistribution, BaselineDistribution> vnm_null_distribution(const VnmParams& params,
                                                                            std::size_t reps,
                                                                            ZeroFluxPolicy policy, Seed seed,
                                                                            Parallelism par)
{
    params.validate();
    if (reps < 2) {
        throw Error(ErrorCode::InvalidArgument, "a null distribution needs at least 2 replicates");
    }
    const auto space = StateSpace::square_2x2();
    std::vector<double> entropies(reps);
    std::vector<double> productions(reps);
    detail::for_each_index(reps, par.threads, [&](std::size_t k) {
        const auto data = simulate_vnm(params, space, seed.split(k));
        const auto chain = estimate_markov(data);
        entropies[k] = entropy(chain);
        productions[k] = epr(chain, policy).value;
    });

    const auto lengths = params.lengths();
    std::map<std::string, std::string> constraints{
        {"null_model", "vnm"},
        {"p", format_double(params.p)},
        {"q", format_double(params.q)},
        {"sessions", std::to_string(lengths.size())},
        {"rounds", std::to_string(std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}))},
    };
    BaselineDistribution s{"entropy", std::move(entropies), seed, policy, constraints};
    BaselineDistribution ep{"epr", std::move(productions), seed, policy, std::move(constraints)};
    return {std::move(s), std::move(ep)};
}

BaselineDistribution dos_baseline(std::span<const double> dos, std::size_t n_rounds, std::size_t reps,
                                  ZeroFluxPolicy policy, Seed seed, Parallelism par)
{
    check_probability_vector(dos, "dos");
    if (dos.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "dos needs at least 2 states");
    }
    if (n_rounds < 2) {
        throw Error(ErrorCode::InvalidArgument, "B0 replicates need at least 2 rounds");
    }
    if (reps < 2) {
        throw Error(ErrorCode::InvalidArgument, "a null distribution needs at least 2 replicates");
    }

    const auto space = StateSpace::indexed(dos.size());
    const DiscreteSampler sampler(dos);
    std::vector<double> samples(reps);
    detail::for_each_index(reps, par.threads, [&](std::size_t k) {
        Xoshiro256pp rng(seed.split(k));
        Trajectory traj{"b0", std::vector<State>(n_rounds)};
        for (auto& s : traj.states) {
            s = sampler(rng);
        }
        const auto chain = estimate_markov(space, std::span<const Trajectory>(&traj, 1));
        samples[k] = epr(chain, policy).value;
    });

    std::string dos_text;
    for (std::size_t i = 0; i < dos.size(); ++i) {
        dos_text += (i ? "," : "") + format_double(dos[i]);
    }
    return BaselineDistribution{"epr",
                                std::move(samples),
                                seed,
                                policy,
                                {{"null_model", "iid_dos"}, {"dos", dos_text}, {"rounds", std::to_string(n_rounds)}}};
}

}  // namespace eprstat
