#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eprstat/model.hpp"

namespace eprstat {

/// How a play record names its state.
enum class Encoding {
    StateIndex,  // treatment_id,session_id,round,state
    ActionPair,  // treatment_id,session_id,round,row_action,col_action
};

/// Parses play records. Rows are grouped by (treatment_id, session_id) in
/// order of first appearance; within a session the round column must be
/// strictly increasing, but gaps are allowed and do not split the session.
///
/// Errors: ParseError (malformed header, field, or count, with line number),
/// StateOutOfRange, MixedEncodings, NonMonotoneRounds.
std::vector<TreatmentDataset> parse_csv(std::istream& in, const StateSpace& space);

/// parse_csv on a file. Error(IoError) if the file cannot be opened.
std::vector<TreatmentDataset> load_csv(const std::filesystem::path& path, const StateSpace& space);

/// Writes datasets in the given encoding, rounds numbered from 1.
/// ActionPair needs r == 4.
void write_csv(std::ostream& out, std::span<const TreatmentDataset> datasets,
               Encoding encoding = Encoding::StateIndex);

/// State-space descriptor (JSON):
///   {"labels": ["a", "b", ...], "coordinates": [[x, y], ...]}
/// `labels` may be omitted (indices are used), or the whole object may be
///   {"states": r}
/// for r one-hot coordinates.
StateSpace parse_space_descriptor(const std::string& json_text);
StateSpace load_space_descriptor(const std::filesystem::path& path);

/// Chain descriptor (JSON) used by the simulator:
///   {"dos0": [...], "transition": [[...], ...]}
struct ChainDescriptor {
    std::vector<double> dos0;
    Matrix<double> transition;
};
ChainDescriptor load_chain_descriptor(const std::filesystem::path& path);

}  // namespace eprstat
