#include "eprstat/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "eprstat/error.hpp"

#ifndef EPRSTAT_VERSION
#define EPRSTAT_VERSION "0.0.0"
#endif

namespace eprstat {

using nlohmann::ordered_json;

namespace {

template <class T>
ordered_json matrix_json(const Matrix<T>& m)
{
    auto out = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        out.push_back(std::vector<T>(row.begin(), row.end()));
    }
    return out;
}

ordered_json test_json(const TestResult& t)
{
    return {
        {"statistic", t.statistic},
        {"p_value", t.p_value},
        {"dof", t.dof},
        {"n", t.n},
        {"direction", to_string(t.direction)},
    };
}

ordered_json treatment_json(const TreatmentReport& t)
{
    ordered_json j;
    j["treatment_id"] = t.treatment_id;
    j["sessions"] = t.sessions;
    j["n_observations"] = t.n_observations;
    j["labels"] = t.labels;
    j["dos"] = t.dos;
    j["transition"] = matrix_json(t.transition);
    j["counts"] = matrix_json(t.counts);
    j["occupancy"] = t.occupancy;
    j["never_left"] = t.never_left;

    const auto& o = t.observables;
    j["observables"] = {
        {"entropy", o.entropy},
        {"epr", o.epr},
        {"velocity", matrix_json(o.velocity)},
        {"motion", o.motion},
        {"skipped_pairs", o.skipped_pairs},
        {"one_sided_pairs", o.one_sided_pairs},
        {"zero_flux_policy", o.policy_used.to_string()},
    };
    if (t.stationarity) {
        const auto& s = *t.stationarity;
        j["stationarity"] = {
            {"first_half_dos", s.first_half_dos},
            {"second_half_dos", s.second_half_dos},
            {"first_half_n", s.first_half_n},
            {"second_half_n", s.second_half_n},
            {"linf_distance", s.linf_distance},
        };
    }
    auto values = ordered_json::object();
    for (const auto& [k, v] : t.values) {
        values[k] = v;
    }
    j["values"] = std::move(values);
    auto flags = ordered_json::object();
    for (const auto& [k, v] : t.flags) {
        flags[k] = v;
    }
    j["flags"] = std::move(flags);

    auto nulls = ordered_json::array();
    for (const auto& n : t.nulls) {
        auto constraints = ordered_json::object();
        for (const auto& [k, v] : n.constraints) {
            constraints[k] = v;
        }
        nulls.push_back({
            {"observable", n.observable},
            {"null_model", n.null_model},
            {"mean", n.mean},
            {"stddev", n.stddev},
            {"reps", n.reps},
            {"seed", n.seed},
            {"zero_flux_policy", n.policy},
            {"constraints", std::move(constraints)},
        });
    }
    j["nulls"] = std::move(nulls);
    return j;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

NullSummary NullSummary::from(const BaselineDistribution& dist)
{
    NullSummary s;
    s.observable = dist.observable_name;
    if (auto it = dist.constraint_summary.find("null_model"); it != dist.constraint_summary.end()) {
        s.null_model = it->second;
    }
    s.mean = dist.mean();
    s.stddev = dist.stddev();
    s.reps = dist.samples.size();
    s.seed = dist.seed.root;
    s.policy = dist.policy.to_string();
    s.constraints = dist.constraint_summary;
    s.constraints.erase("null_model");
    return s;
}

TreatmentReport TreatmentReport::from(const std::string& treatment_id, std::size_t sessions,
                                      const MarkovEstimate& chain, ObservableReport observables)
{
    TreatmentReport t;
    t.treatment_id = treatment_id;
    t.sessions = sessions;
    t.n_observations = chain.n_observations();
    t.labels = chain.space().labels();
    t.dos = chain.dos();
    t.transition = chain.transition();
    t.counts = chain.counts();
    t.occupancy = chain.occupancy();
    t.never_left = chain.never_left();
    t.observables = std::move(observables);
    return t;
}

std::string tool_version()
{
    return EPRSTAT_VERSION;
}

std::string render_report(const Report& report)
{
    ordered_json doc;
    doc["tool"] = {{"name", "eprstat"}, {"version", tool_version()}};
    if (!report.reproducible) {
        doc["generated_at"] = utc_timestamp();
    }
    doc["command"] = report.command;
    auto config = ordered_json::object();
    for (const auto& [k, v] : report.config) {
        config[k] = v;
    }
    doc["config"] = std::move(config);

    auto treatments = ordered_json::array();
    for (const auto& t : report.treatments) {
        treatments.push_back(treatment_json(t));
    }
    doc["treatments"] = std::move(treatments);

    auto tests = ordered_json::array();
    for (const auto& t : report.tests) {
        ordered_json j{{"scope", t.scope}, {"name", t.name}};
        if (t.result) {
            j.update(test_json(*t.result));
        } else {
            j["error"] = t.error;
        }
        tests.push_back(std::move(j));
    }
    doc["tests"] = std::move(tests);

    auto fits = ordered_json::array();
    for (const auto& f : report.fits) {
        fits.push_back({
            {"name", f.name},
            {"x", f.x_label},
            {"y", f.y_label},
            {"slope", f.fit.slope},
            {"slope_stderr", f.fit.slope_stderr},
            {"intercept", f.fit.intercept},
            {"intercept_stderr", f.fit.intercept_stderr},
            {"r_squared", f.fit.r_squared},
            {"n", f.fit.n},
            {"points", {{"labels", f.point_labels}, {"x", f.x}, {"y", f.y}}},
        });
    }
    doc["fits"] = std::move(fits);
    return doc.dump(2) + "\n";
}

void write_report(const Report& report, const std::filesystem::path& path)
{
    const auto text = render_report(report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
    }
}

}  // namespace eprstat
