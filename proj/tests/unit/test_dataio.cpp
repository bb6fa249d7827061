#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "eprstat/dataio.hpp"
#include "eprstat/error.hpp"
#include "eprstat/report.hpp"

using namespace eprstat;

namespace {

std::vector<TreatmentDataset> parse(const std::string& text, const StateSpace& space = StateSpace::square_2x2())
{
    std::istringstream in(text);
    return parse_csv(in, space);
}

struct Failure {
    ErrorCode code;
    std::size_t line;
};

Failure failure_of(const std::string& text, const StateSpace& space = StateSpace::square_2x2())
{
    try {
        parse(text, space);
    } catch (const ParseError& e) {
        return {e.code(), e.line()};
    }
    ADD_FAILURE() << "expected a ParseError";
    return {ErrorCode::InvalidArgument, 0};
}

}  // namespace

// =============================================================================
// parse_csv
// =============================================================================

TEST(Csv, StateEncoding)
{
    const auto d = parse("treatment_id,session_id,round,state\nT1,S1,1,0\nT1,S1,2,1\nT1,S1,3,0\n");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].treatment_id(), "T1");
    ASSERT_EQ(d[0].sessions().size(), 1u);
    EXPECT_EQ(d[0].sessions()[0].states, (std::vector<State>{0, 1, 0}));
}

TEST(Csv, ActionEncoding)
{
    const auto d = parse("treatment_id,session_id,round,row_action,col_action\nT,S,1,1,1\nT,S,2,0,0\n");
    EXPECT_EQ(d[0].sessions()[0].states, (std::vector<State>{3, 0}));
    EXPECT_EQ(d[0].meta().at("encoding"), "action_pair");
}

TEST(Csv, GroupsByTreatmentAndSessionInFirstAppearanceOrder)
{
    const auto d = parse(
        "treatment_id,session_id,round,state\n"
        "B,s2,1,1\n"
        "A,s1,1,0\n"
        "B,s1,4,2\n"
        "B,s2,3,3\n"   // gap in rounds: still the same session
        "A,s1,2,1\n");
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].treatment_id(), "B");
    ASSERT_EQ(d[0].sessions().size(), 2u);
    EXPECT_EQ(d[0].sessions()[0].session_id, "s2");
    EXPECT_EQ(d[0].sessions()[0].states, (std::vector<State>{1, 3}));
    EXPECT_EQ(d[0].sessions()[1].states, (std::vector<State>{2}));
    EXPECT_EQ(d[1].sessions()[0].states, (std::vector<State>{0, 1}));
}

TEST(Csv, ToleratesCrlfBlankLinesAndBom)
{
    const auto d = parse("\xEF\xBB\xBFtreatment_id,session_id,round,state\r\nT,S,1,2\r\n\r\nT,S,2,3\r\n");
    EXPECT_EQ(d[0].sessions()[0].states, (std::vector<State>{2, 3}));
}

TEST(Csv, Errors)
{
    auto f = failure_of("");
    EXPECT_EQ(f.code, ErrorCode::ParseError);

    f = failure_of("treatment_id,session_id,round,state\nT,S,1,0\nT,S,2,7\n");
    EXPECT_EQ(f.code, ErrorCode::StateOutOfRange);
    EXPECT_EQ(f.line, 3u);

    f = failure_of("treatment_id,session_id,round,state\nT,S,1,-1\n");
    EXPECT_EQ(f.code, ErrorCode::StateOutOfRange);

    f = failure_of("treatment_id,session_id,round,state\nT,S,2,0\nT,S,2,1\n");
    EXPECT_EQ(f.code, ErrorCode::NonMonotoneRounds);
    EXPECT_EQ(f.line, 3u);

    f = failure_of("treatment_id,session_id,round,state,row_action,col_action\nT,S,1,0,,\nT,S,2,,1,0\n");
    EXPECT_EQ(f.code, ErrorCode::MixedEncodings);
    EXPECT_EQ(f.line, 3u);

    f = failure_of("treatment_id,session_id,round,state,row_action,col_action\nT,S,1,0,1,0\n");
    EXPECT_EQ(f.code, ErrorCode::MixedEncodings);

    f = failure_of("treatment_id,session_id,round,state\nT,S,x,0\n");
    EXPECT_EQ(f.code, ErrorCode::ParseError);
    EXPECT_EQ(f.line, 2u);

    f = failure_of("treatment_id,session_id,round,state\nT,S,1\n");
    EXPECT_EQ(f.code, ErrorCode::ParseError);

    f = failure_of("treatment_id,session_id,round,row_action,col_action\nT,S,1,2,0\n");
    EXPECT_EQ(f.code, ErrorCode::ParseError);

    f = failure_of("session_id,treatment_id,round,state\n");
    EXPECT_EQ(f.line, 1u);
}

TEST(Csv, MissingFileIsIoError)
{
    try {
        load_csv("/nonexistent/definitely/missing.csv", StateSpace::square_2x2());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}

// Property: writing datasets and reading them back is the identity on
// content, in both encodings, and both encodings give the same chain.
TEST(Csv, WriterRoundTripAndEncodingEquivalence)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<TreatmentDataset> data;
        const std::size_t treatments = 1 + rng() % 3;
        for (std::size_t t = 0; t < treatments; ++t) {
            std::vector<Trajectory> sessions;
            const std::size_t n_sessions = 1 + rng() % 3;
            for (std::size_t s = 0; s < n_sessions; ++s) {
                Trajectory traj{"S" + std::to_string(s), std::vector<State>(2 + rng() % 30)};
                for (auto& x : traj.states) {
                    x = static_cast<State>(rng() % 4);
                }
                sessions.push_back(std::move(traj));
            }
            data.emplace_back("T" + std::to_string(t), StateSpace::square_2x2(), std::move(sessions));
        }

        std::ostringstream by_state, by_action;
        write_csv(by_state, data, Encoding::StateIndex);
        write_csv(by_action, data, Encoding::ActionPair);
        const auto a = parse(by_state.str());
        const auto b = parse(by_action.str());
        ASSERT_EQ(a.size(), data.size());
        for (std::size_t t = 0; t < data.size(); ++t) {
            EXPECT_EQ(a[t].sessions(), data[t].sessions());
            EXPECT_EQ(b[t].sessions(), data[t].sessions());
            const auto ma = estimate_markov(a[t]);
            const auto mb = estimate_markov(b[t]);
            EXPECT_EQ(ma.counts(), mb.counts());
            EXPECT_EQ(ma.dos(), mb.dos());
        }
    }
}

TEST(Csv, BundledActionFixture)
{
    const auto d = load_csv(std::string(EPRSTAT_FIXTURE_DIR) + "/small_actions.csv", StateSpace::square_2x2());
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].sessions()[0].states, (std::vector<State>{3, 0, 2, 1}));
    EXPECT_EQ(d[0].sessions()[1].states, (std::vector<State>{3, 3}));
}

// =============================================================================
// descriptors
// =============================================================================

TEST(SpaceDescriptor, Forms)
{
    const auto sq = parse_space_descriptor(R"({"labels":["a","b","c","d"],"coordinates":[[0,0],[0,1],[1,0],[1,1]]})");
    EXPECT_EQ(sq.coordinates(), StateSpace::square_2x2().coordinates());
    EXPECT_EQ(sq.labels()[2], "c");
    EXPECT_EQ(parse_space_descriptor(R"({"states": 3})"), StateSpace::indexed(3));
    EXPECT_EQ(parse_space_descriptor(R"({"coordinates":[[0],[2]]})").labels()[1], "1");
    EXPECT_THROW(parse_space_descriptor("{"), Error);
    EXPECT_THROW(parse_space_descriptor(R"({"coordinates":[[0],[1,2]]})"), Error);
    EXPECT_THROW(parse_space_descriptor(R"({"labels":["a"]})"), Error);
}

TEST(ChainDescriptor, LoadsFixture)
{
    const auto c = load_chain_descriptor(std::string(EPRSTAT_FIXTURE_DIR) + "/near_cycle4.json");
    EXPECT_EQ(c.dos0.size(), 4u);
    EXPECT_EQ(c.transition(0, 2), 0.85);
    EXPECT_EQ(c.transition(3, 1), 0.85);
}

// =============================================================================
// report serialization
// =============================================================================

TEST(Report, EmptyDocumentIsValid)
{
    Report r;
    r.command = "analyze";
    r.reproducible = true;
    const auto doc = nlohmann::json::parse(render_report(r));
    EXPECT_TRUE(doc.at("treatments").empty());
    EXPECT_TRUE(doc.at("tests").empty());
    EXPECT_TRUE(doc.at("fits").empty());
    EXPECT_EQ(doc.at("tool").at("version"), tool_version());
    EXPECT_FALSE(doc.contains("generated_at"));

    r.reproducible = false;
    EXPECT_TRUE(nlohmann::json::parse(render_report(r)).contains("generated_at"));
}

TEST(Report, DoublesRoundTripBitExact)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Report r;
    r.command = "motion-fit";
    r.reproducible = true;
    NamedFit fit;
    for (int i = 0; i < 200; ++i) {
        fit.x.push_back(u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10));
        fit.y.push_back(u(rng) / 3.0);
    }
    fit.fit.slope = 1.0 / 3.0;
    fit.fit.r_squared = 0.9700000000000001;
    r.fits.push_back(fit);

    const auto doc = nlohmann::json::parse(render_report(r));
    const auto& f = doc.at("fits").at(0);
    const auto xs = f.at("points").at("x").get<std::vector<double>>();
    const auto ys = f.at("points").at("y").get<std::vector<double>>();
    ASSERT_EQ(xs.size(), fit.x.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(std::memcmp(&xs[i], &fit.x[i], sizeof(double)), 0);
        EXPECT_EQ(std::memcmp(&ys[i], &fit.y[i], sizeof(double)), 0);
    }
    EXPECT_EQ(f.at("slope").get<double>(), 1.0 / 3.0);
    EXPECT_EQ(f.at("r_squared").get<double>(), 0.9700000000000001);
}

TEST(Report, WriteFailsOnBadPath)
{
    Report r;
    try {
        write_report(r, "/nonexistent/dir/report.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}
