#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eprstat/matrix.hpp"
#include "eprstat/model.hpp"
#include "eprstat/nullmodels.hpp"
#include "eprstat/observables.hpp"
#include "eprstat/stats.hpp"

namespace eprstat {

struct NullSummary {
    std::string observable;
    std::string null_model;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::string policy;
    std::map<std::string, std::string> constraints;

    static NullSummary from(const BaselineDistribution& dist);
};

/// A test outcome, or the reason it could not be computed.
struct NamedTest {
    std::string scope;  // treatment id, or "across_treatments"
    std::string name;
    std::optional<TestResult> result;
    std::string error;
};

struct NamedFit {
    std::string name;
    std::string x_label;
    std::string y_label;
    OlsFit fit;
    std::vector<std::string> point_labels;
    std::vector<double> x;
    std::vector<double> y;
};

struct TreatmentReport {
    std::string treatment_id;
    std::size_t sessions = 0;
    std::uint64_t n_observations = 0;
    std::vector<std::string> labels;
    std::vector<double> dos;
    Matrix<double> transition;
    Matrix<std::uint64_t> counts;
    std::vector<std::uint64_t> occupancy;
    std::vector<bool> never_left;
    ObservableReport observables;
    std::optional<StationarityDiagnostic> stationarity;
    std::map<std::string, double> values;
    std::map<std::string, bool> flags;
    std::vector<NullSummary> nulls;

    static TreatmentReport from(const std::string& treatment_id, std::size_t sessions,
                                const MarkovEstimate& chain, ObservableReport observables);
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<TreatmentReport> treatments;
    std::vector<NamedTest> tests;
    std::vector<NamedFit> fits;
    /// Suppresses the generated_at timestamp.
    bool reproducible = false;
};

std::string tool_version();

/// JSON document; field names are listed in docs/report-schema.md.
/// Doubles use the shortest representation that parses back bit-exactly.
std::string render_report(const Report& report);

/// Error(IoError) when the file cannot be written.
void write_report(const Report& report, const std::filesystem::path& path);

}  // namespace eprstat
