#include "eprstat/dataio.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eprstat/error.hpp"

namespace eprstat {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::optional<long long> parse_int(std::string_view s)
{
    long long v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

// Column positions resolved from the header.
struct Layout {
    std::size_t width = 0;
    std::optional<std::size_t> state;
    std::optional<std::size_t> row_action;
    std::optional<std::size_t> col_action;
};

Layout parse_header(std::string_view line)
{
    const auto fields = split_fields(line);
    if (fields.size() < 4 || fields[0] != "treatment_id" || fields[1] != "session_id" || fields[2] != "round") {
        throw ParseError(ErrorCode::ParseError, 1,
                         "header must start with treatment_id,session_id,round");
    }
    Layout layout;
    layout.width = fields.size();
    for (std::size_t c = 3; c < fields.size(); ++c) {
        if (fields[c] == "state" && !layout.state) {
            layout.state = c;
        } else if (fields[c] == "row_action" && !layout.row_action) {
            layout.row_action = c;
        } else if (fields[c] == "col_action" && !layout.col_action) {
            layout.col_action = c;
        } else {
            throw ParseError(ErrorCode::ParseError, 1, "unexpected column '" + std::string(fields[c]) + "'");
        }
    }
    if (layout.row_action.has_value() != layout.col_action.has_value()) {
        throw ParseError(ErrorCode::ParseError, 1, "row_action and col_action must appear together");
    }
    if (!layout.state && !layout.row_action) {
        throw ParseError(ErrorCode::ParseError, 1, "header names neither state nor action columns");
    }
    return layout;
}

struct SessionBuilder {
    std::string session_id;
    std::vector<State> states;
    long long last_round = 0;
};

struct TreatmentBuilder {
    std::string treatment_id;
    std::vector<SessionBuilder> sessions;
    std::map<std::string, std::size_t> session_index;
};

}  // namespace

std::vector<TreatmentDataset> parse_csv(std::istream& in, const StateSpace& space)
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    Layout layout;
    std::optional<Encoding> encoding;

    std::vector<TreatmentBuilder> treatments;
    std::map<std::string, std::size_t> treatment_index;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        if (!have_header) {
            if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
                line.erase(0, 3);
            }
            layout = parse_header(line);
            have_header = true;
            continue;
        }

        const auto fields = split_fields(line);
        if (fields.size() != layout.width) {
            throw ParseError(ErrorCode::ParseError, line_no,
                             "expected " + std::to_string(layout.width) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError(ErrorCode::ParseError, line_no, "empty treatment_id or session_id");
        }
        const auto round = parse_int(fields[2]);
        if (!round || *round < 1) {
            throw ParseError(ErrorCode::ParseError, line_no, "round must be an integer >= 1");
        }

        const bool has_state = layout.state && !fields[*layout.state].empty();
        const bool has_actions =
            layout.row_action && (!fields[*layout.row_action].empty() || !fields[*layout.col_action].empty());
        if (has_state && has_actions) {
            throw ParseError(ErrorCode::MixedEncodings, line_no, "row carries both a state and an action pair");
        }
        if (!has_state && !has_actions) {
            throw ParseError(ErrorCode::ParseError, line_no, "row carries neither a state nor an action pair");
        }
        const auto row_encoding = has_state ? Encoding::StateIndex : Encoding::ActionPair;
        if (encoding && *encoding != row_encoding) {
            throw ParseError(ErrorCode::MixedEncodings, line_no,
                             "state-index and action-pair rows mixed in one file");
        }
        encoding = row_encoding;

        long long state = 0;
        if (has_state) {
            const auto v = parse_int(fields[*layout.state]);
            if (!v) {
                throw ParseError(ErrorCode::ParseError, line_no, "state must be an integer");
            }
            state = *v;
        } else {
            if (space.size() != 4) {
                throw ParseError(ErrorCode::ParseError, line_no, "action-pair rows need a 4-state space");
            }
            const auto row = parse_int(fields[*layout.row_action]);
            const auto col = parse_int(fields[*layout.col_action]);
            if (!row || !col || (*row != 0 && *row != 1) || (*col != 0 && *col != 1)) {
                throw ParseError(ErrorCode::ParseError, line_no, "actions must be 0 or 1");
            }
            state = 2 * *row + *col;
        }
        if (state < 0 || static_cast<unsigned long long>(state) >= space.size()) {
            throw ParseError(ErrorCode::StateOutOfRange, line_no,
                             "state " + std::to_string(state) + " outside [0, " + std::to_string(space.size()) +
                                 ")");
        }

        const std::string tid(fields[0]);
        auto [tit, new_treatment] = treatment_index.try_emplace(tid, treatments.size());
        if (new_treatment) {
            treatments.push_back({tid, {}, {}});
        }
        auto& tb = treatments[tit->second];
        const std::string sid(fields[1]);
        auto [sit, new_session] = tb.session_index.try_emplace(sid, tb.sessions.size());
        if (new_session) {
            tb.sessions.push_back({sid, {}, 0});
        }
        auto& sb = tb.sessions[sit->second];
        if (*round <= sb.last_round) {
            throw ParseError(ErrorCode::NonMonotoneRounds, line_no,
                             "round " + std::to_string(*round) + " does not follow round " +
                                 std::to_string(sb.last_round) + " in session '" + sid + "'");
        }
        sb.last_round = *round;
        sb.states.push_back(static_cast<State>(state));
    }

    if (!have_header) {
        throw ParseError(ErrorCode::ParseError, line_no + 1, "missing header");
    }

    std::vector<TreatmentDataset> out;
    out.reserve(treatments.size());
    for (auto& tb : treatments) {
        std::vector<Trajectory> sessions;
        sessions.reserve(tb.sessions.size());
        for (auto& sb : tb.sessions) {
            sessions.push_back({std::move(sb.session_id), std::move(sb.states)});
        }
        out.emplace_back(std::move(tb.treatment_id), space, std::move(sessions),
                         std::map<std::string, std::string>{
                             {"encoding", *encoding == Encoding::StateIndex ? "state" : "action_pair"}});
    }
    return out;
}

std::vector<TreatmentDataset> load_csv(const std::filesystem::path& path, const StateSpace& space)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    return parse_csv(in, space);
}

void write_csv(std::ostream& out, std::span<const TreatmentDataset> datasets, Encoding encoding)
{
    if (encoding == Encoding::StateIndex) {
        out << "treatment_id,session_id,round,state\n";
    } else {
        out << "treatment_id,session_id,round,row_action,col_action\n";
    }
    for (const auto& d : datasets) {
        if (encoding == Encoding::ActionPair && d.space().size() != 4) {
            throw Error(ErrorCode::InvalidArgument, "action-pair output needs a 4-state space");
        }
        for (const auto& s : d.sessions()) {
            for (std::size_t t = 0; t < s.states.size(); ++t) {
                out << d.treatment_id() << ',' << s.session_id << ',' << (t + 1) << ',';
                if (encoding == Encoding::StateIndex) {
                    out << s.states[t] << '\n';
                } else {
                    out << s.states[t] / 2 << ',' << s.states[t] % 2 << '\n';
                }
            }
        }
    }
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing CSV output");
    }
}

//---------------------------------------------------------------------------//

namespace {

nlohmann::json parse_json(const std::string& text, const std::string& what)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, what + ": " + e.what());
    }
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

StateSpace parse_space_descriptor(const std::string& json_text)
{
    const auto doc = parse_json(json_text, "state-space descriptor");
    try {
        if (doc.contains("states")) {
            return StateSpace::indexed(doc.at("states").get<std::size_t>());
        }
        auto coords = doc.at("coordinates").get<std::vector<std::vector<double>>>();
        std::vector<std::string> labels;
        if (doc.contains("labels")) {
            labels = doc.at("labels").get<std::vector<std::string>>();
        } else {
            for (std::size_t i = 0; i < coords.size(); ++i) {
                labels.push_back(std::to_string(i));
            }
        }
        return StateSpace(std::move(labels), std::move(coords));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("state-space descriptor: ") + e.what());
    }
}

StateSpace load_space_descriptor(const std::filesystem::path& path)
{
    return parse_space_descriptor(slurp(path));
}

ChainDescriptor load_chain_descriptor(const std::filesystem::path& path)
{
    const auto doc = parse_json(slurp(path), "chain descriptor");
    try {
        ChainDescriptor c;
        c.dos0 = doc.at("dos0").get<std::vector<double>>();
        const auto rows = doc.at("transition").get<std::vector<std::vector<double>>>();
        const auto r = c.dos0.size();
        if (rows.size() != r) {
            throw Error(ErrorCode::InvalidDistribution, "transition has " + std::to_string(rows.size()) +
                                                            " rows for " + std::to_string(r) + " states");
        }
        c.transition = Matrix<double>(r, r);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != r) {
                throw Error(ErrorCode::InvalidDistribution, "transition row " + std::to_string(i) + " has wrong length");
            }
            for (std::size_t j = 0; j < r; ++j) {
                c.transition(i, j) = rows[i][j];
            }
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("chain descriptor: ") + e.what());
    }
}

}  // namespace eprstat
