#include "eprstat/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "eprstat/error.hpp"
#include "eprstat/stats.hpp"

namespace eprstat {

namespace {

constexpr const char* kAcross = "across_treatments";

std::string alpha_key(double alpha)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", alpha);
    return buf;
}

// Runs a test and records either its result or the reason it failed, so a
// degenerate treatment does not abort the whole report.
template <class Fn>
NamedTest run_test(std::string scope, std::string name, Fn&& fn)
{
    NamedTest t{std::move(scope), std::move(name), std::nullopt, {}};
    try {
        t.result = fn();
    } catch (const Error& e) {
        t.error = e.what();
    }
    return t;
}

Report start_report(const std::string& command, const AnalysisConfig& config)
{
    config.validate();
    Report r;
    r.command = command;
    r.config = config.echo();
    r.reproducible = config.reproducible;
    return r;
}

std::vector<std::size_t> retained_lengths(const TreatmentDataset& data, std::size_t burn_in)
{
    std::vector<std::size_t> out;
    for (const auto& s : data.sessions()) {
        if (s.states.size() > burn_in) {
            out.push_back(s.states.size() - burn_in);
        }
    }
    return out;
}

}  // namespace

void AnalysisConfig::validate() const
{
    if (mc_reps < 2) {
        throw Error(ErrorCode::InvalidArgument, "--reps must be at least 2");
    }
    if (alphas.empty()) {
        throw Error(ErrorCode::InvalidArgument, "at least one significance level is required");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "--alpha must lie in (0, 1)");
        }
    }
    if (policy.mode == ZeroFluxPolicy::Mode::Smooth && !(policy.epsilon > 0.0 && policy.epsilon <= 1e-3)) {
        throw Error(ErrorCode::InvalidArgument, "smoothing epsilon must lie in (0, 1e-3]");
    }
}

std::vector<std::pair<std::string, std::string>> AnalysisConfig::echo() const
{
    std::string alpha_list;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        alpha_list += (i ? "," : "") + alpha_key(alphas[i]);
    }
    // Thread count is deliberately absent: it never changes results.
    return {
        {"input", input},
        {"output", output},
        {"seed", std::to_string(seed.root)},
        {"reps", std::to_string(mc_reps)},
        {"zero_flux_policy", policy.to_string()},
        {"burn_in", std::to_string(burn_in)},
        {"alpha", alpha_list},
        {"space", space_source},
        {"states", std::to_string(space.size())},
        {"welch", welch ? "true" : "false"},
        {"reproducible", reproducible ? "true" : "false"},
    };
}

//---------------------------------------------------------------------------//

Report analyze(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config)
{
    auto report = start_report("analyze", config);
    for (const auto& d : data) {
        const auto chain = estimate_markov(d, config.burn_in);
        auto t = TreatmentReport::from(d.treatment_id(), d.sessions().size(), chain,
                                       full_report(chain, config.policy));
        t.stationarity = stationarity_diagnostic(d, config.burn_in);
        report.treatments.push_back(std::move(t));
    }
    return report;
}

Report minimax_test(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config)
{
    auto report = start_report("minimax-test", config);
    const auto square = StateSpace::square_2x2();

    std::vector<double> empirical_epr;
    std::vector<double> null_epr;
    std::vector<double> empirical_entropy;
    std::vector<double> null_entropy;

    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& d = data[k];
        if (d.space().size() != 4 || d.space().coordinates() != square.coordinates()) {
            throw Error(ErrorCode::InvalidArgument,
                        "minimax-test needs the 4-state 2x2 space (treatment '" + d.treatment_id() + "')");
        }
        const auto chain = estimate_markov(d, config.burn_in);
        const auto obs = full_report(chain, config.policy);
        const auto& occ = chain.occupancy();
        const double n = static_cast<double>(chain.n_observations());

        VnmParams params;
        params.p = static_cast<double>(occ[2] + occ[3]) / n;
        params.q = static_cast<double>(occ[1] + occ[3]) / n;
        params.session_lengths = retained_lengths(d, config.burn_in);

        const auto [s_null, epr_null] =
            vnm_null_distribution(params, config.mc_reps, config.policy, config.seed.split(k), config.parallelism);

        auto t = TreatmentReport::from(d.treatment_id(), d.sessions().size(), chain, obs);
        t.stationarity = stationarity_diagnostic(d, config.burn_in);
        t.values["p_hat"] = params.p;
        t.values["q_hat"] = params.q;
        t.values["p_hat_stderr"] = std::sqrt(params.p * (1.0 - params.p) / n);
        t.values["q_hat_stderr"] = std::sqrt(params.q * (1.0 - params.q) / n);
        t.values["entropy_percentile"] = percentile_of(s_null.samples, obs.entropy);
        t.values["epr_percentile"] = percentile_of(epr_null.samples, obs.epr);
        t.values["epr_mc_p_value"] = mc_upper_p_value(epr_null.samples, obs.epr);
        t.nulls.push_back(NullSummary::from(s_null));
        t.nulls.push_back(NullSummary::from(epr_null));
        report.treatments.push_back(std::move(t));

        report.tests.push_back(run_test(d.treatment_id(), "entropy_vs_vnm", [&] {
            return one_sample_t(s_null.samples, obs.entropy, Direction::TwoSided);
        }));
        report.tests.push_back(run_test(d.treatment_id(), "epr_vs_vnm", [&] {
            return one_sample_t(epr_null.samples, obs.epr, Direction::Less);
        }));

        empirical_epr.push_back(obs.epr);
        null_epr.push_back(epr_null.mean());
        empirical_entropy.push_back(obs.entropy);
        null_entropy.push_back(s_null.mean());
    }

    report.tests.push_back(run_test(kAcross, "epr_paired", [&] {
        return paired_t(empirical_epr, null_epr, Direction::Greater);
    }));
    report.tests.push_back(run_test(kAcross, "entropy_paired", [&] {
        return paired_t(empirical_entropy, null_entropy, Direction::TwoSided);
    }));
    if (config.welch) {
        report.tests.push_back(run_test(kAcross, "epr_welch", [&] {
            return welch_t(empirical_epr, null_epr, Direction::Greater);
        }));
        report.tests.push_back(run_test(kAcross, "entropy_welch", [&] {
            return welch_t(empirical_entropy, null_entropy, Direction::TwoSided);
        }));
    }
    return report;
}

Report cycle_test(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config)
{
    auto report = start_report("cycle-test", config);
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& d = data[k];
        const auto chain = estimate_markov(d, config.burn_in);
        const auto obs = full_report(chain, config.policy);
        const auto baseline = dos_baseline(chain.dos(), chain.n_observations(), config.mc_reps, config.policy,
                                           config.seed.split(k), config.parallelism);

        auto test = run_test(d.treatment_id(), "epr_vs_b0",
                             [&] { return one_sample_t(baseline.samples, obs.epr, Direction::Less); });
        const double mc_p = mc_upper_p_value(baseline.samples, obs.epr);

        auto t = TreatmentReport::from(d.treatment_id(), d.sessions().size(), chain, obs);
        t.stationarity = stationarity_diagnostic(d, config.burn_in);
        t.values["epr_percentile"] = percentile_of(baseline.samples, obs.epr);
        t.values["epr_mc_p_value"] = mc_p;
        t.values["b0_mean"] = baseline.mean();
        t.values["epr_minus_b0"] = obs.epr - baseline.mean();
        for (double alpha : config.alphas) {
            // A degenerate baseline (every replicate equal) has no t test;
            // the Monte-Carlo p-value then decides alone.
            const bool t_rejects = test.result ? test.result->p_value < alpha : obs.epr > baseline.mean();
            t.flags["cycle_detected@" + alpha_key(alpha)] = t_rejects && mc_p < alpha;
        }
        t.nulls.push_back(NullSummary::from(baseline));
        report.treatments.push_back(std::move(t));
        report.tests.push_back(std::move(test));
    }
    return report;
}

Report motion_fit(const std::vector<TreatmentDataset>& data, const AnalysisConfig& config)
{
    auto report = start_report("motion-fit", config);
    NamedFit fit;
    fit.name = "motion_on_epr";
    fit.x_label = "epr";
    fit.y_label = "motion";
    for (const auto& d : data) {
        const auto chain = estimate_markov(d, config.burn_in);
        const auto obs = full_report(chain, config.policy);
        fit.point_labels.push_back(d.treatment_id());
        fit.x.push_back(obs.epr);
        fit.y.push_back(obs.motion);
        report.treatments.push_back(TreatmentReport::from(d.treatment_id(), d.sessions().size(), chain, obs));
    }
    fit.fit = ols_fit(fit.x, fit.y);
    report.fits.push_back(std::move(fit));
    return report;
}

}  // namespace eprstat
