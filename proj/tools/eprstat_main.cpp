// eprstat: entropy production analysis of recorded play sequences.
//
//   eprstat analyze      --input data.csv --output report.json
//   eprstat minimax-test --input data.csv --output report.json [--reps N] [--welch]
//   eprstat cycle-test   --input data.csv --output report.json [--alpha A]...
//   eprstat motion-fit   --input data.csv --output report.json
//   eprstat simulate     --model vnm|chain ... --output data.csv
//
// Exit codes: 0 success, 1 data/config error, 2 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eprstat/dataio.hpp"
#include "eprstat/error.hpp"
#include "eprstat/nullmodels.hpp"
#include "eprstat/pipeline.hpp"

namespace {

using namespace eprstat;

struct CommonFlags {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    std::size_t reps = 10000;
    std::string policy = "skip";
    std::size_t burn_in = 0;
    std::vector<double> alphas{0.001};
    std::string space;
    bool reproducible = false;
    unsigned threads = 0;
    bool welch = false;
};

struct SimulateFlags {
    std::string model = "vnm";
    std::string chain;
    std::string output;
    std::uint64_t seed = 0;
    std::size_t rounds = 1000;
    std::size_t sessions = 1;
    std::size_t treatments = 1;
    double p = 0.5;
    double q = 0.5;
    std::string encoding = "state";
    std::string prefix = "T";
};

void add_analysis_flags(CLI::App& cmd, CommonFlags& f, bool with_alpha, bool with_welch)
{
    cmd.add_option("--input", f.input, "Play records (CSV)")->required();
    cmd.add_option("--output", f.output, "Report path (JSON)")->required();
    cmd.add_option("--seed", f.seed, "Root seed for Monte-Carlo replicates");
    cmd.add_option("--reps", f.reps, "Monte-Carlo replicates per treatment")->capture_default_str();
    cmd.add_option("--zero-flux-policy", f.policy, "skip | strict | smooth=EPS")->capture_default_str();
    cmd.add_option("--burn-in", f.burn_in, "Rounds dropped from the start of each session")->capture_default_str();
    cmd.add_option("--space", f.space, "State-space descriptor (JSON); default is the 2x2 square");
    cmd.add_flag("--reproducible", f.reproducible, "Omit the timestamp so reports are byte-identical");
    cmd.add_option("--threads", f.threads, "Replicate worker threads (0 = all cores)")->capture_default_str();
    if (with_alpha) {
        cmd.add_option("--alpha", f.alphas, "Significance level(s)")->capture_default_str();
    }
    if (with_welch) {
        cmd.add_flag("--welch", f.welch, "Add Welch two-sample tests across treatments");
    }
}

AnalysisConfig build_config(const CommonFlags& f)
{
    AnalysisConfig c;
    c.policy = ZeroFluxPolicy::parse(f.policy);
    c.burn_in = f.burn_in;
    c.mc_reps = f.reps;
    c.seed = Seed{f.seed};
    c.parallelism = Parallelism{f.threads};
    c.alphas = f.alphas;
    c.welch = f.welch;
    c.reproducible = f.reproducible;
    c.input = f.input;
    c.output = f.output;
    c.validate();
    if (!f.space.empty()) {
        c.space_source = f.space;
        c.space = load_space_descriptor(f.space);
    }
    return c;
}

void print_summary(const Report& report)
{
    nlohmann::ordered_json s;
    s["command"] = report.command;
    s["treatments"] = report.treatments.size();
    for (const auto& t : report.tests) {
        if (t.scope == "across_treatments" && t.result) {
            s["tests"][t.name] = {{"statistic", t.result->statistic}, {"p_value", t.result->p_value}};
        }
    }
    for (const auto& t : report.treatments) {
        for (const auto& [k, v] : t.flags) {
            s["flags"][t.treatment_id][k] = v;
        }
    }
    for (const auto& f : report.fits) {
        s["fits"][f.name] = {{"slope", f.fit.slope}, {"slope_stderr", f.fit.slope_stderr},
                             {"intercept", f.fit.intercept}, {"r_squared", f.fit.r_squared}};
    }
    std::cout << s.dump() << '\n';
}

template <class Pipeline>
int run_pipeline(const CommonFlags& flags, Pipeline&& pipeline)
{
    const auto config = build_config(flags);
    const auto data = load_csv(flags.input, config.space);
    std::cerr << "eprstat: " << data.size() << " treatment(s) from " << flags.input << '\n';
    const auto report = pipeline(data, config);
    write_report(report, flags.output);
    std::cerr << "eprstat: wrote " << flags.output << '\n';
    print_summary(report);
    return 0;
}

int run_simulate(const SimulateFlags& f)
{
    if (f.treatments < 1 || f.sessions < 1) {
        throw Error(ErrorCode::InvalidArgument, "--treatments and --sessions must be at least 1");
    }
    if (f.rounds < 2) {
        throw Error(ErrorCode::InvalidArgument, "--rounds must be at least 2");
    }
    if (f.encoding != "state" && f.encoding != "actions") {
        throw Error(ErrorCode::InvalidArgument, "--encoding must be 'state' or 'actions'");
    }
    const auto encoding = f.encoding == "state" ? Encoding::StateIndex : Encoding::ActionPair;
    const Seed root{f.seed};

    std::vector<TreatmentDataset> out;
    if (f.model == "vnm") {
        VnmParams params{f.p, f.q, f.sessions, f.rounds, {}};
        params.validate();
        for (std::size_t t = 0; t < f.treatments; ++t) {
            out.push_back(simulate_vnm(params, StateSpace::square_2x2(), root.split(t),
                                       f.prefix + std::to_string(t + 1)));
        }
    } else if (f.model == "chain") {
        if (f.chain.empty()) {
            throw Error(ErrorCode::InvalidArgument, "--model chain needs --chain FILE");
        }
        const auto chain = load_chain_descriptor(f.chain);
        const auto space = StateSpace::indexed(chain.dos0.size());
        if (encoding == Encoding::ActionPair && space.size() != 4) {
            throw Error(ErrorCode::InvalidArgument, "action encoding needs a 4-state chain");
        }
        for (std::size_t t = 0; t < f.treatments; ++t) {
            std::vector<Trajectory> sessions;
            for (std::size_t s = 0; s < f.sessions; ++s) {
                auto traj = simulate_chain(chain.dos0, chain.transition, f.rounds, root.split(t).split(s));
                traj.session_id = "S" + std::to_string(s + 1);
                sessions.push_back(std::move(traj));
            }
            out.emplace_back(f.prefix + std::to_string(t + 1), space, std::move(sessions));
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "--model must be 'vnm' or 'chain'");
    }

    std::ofstream file(f.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoError, "cannot write '" + f.output + "'");
    }
    write_csv(file, out, encoding);
    std::cerr << "eprstat: wrote " << out.size() << " treatment(s) to " << f.output << '\n';
    nlohmann::ordered_json s{{"command", "simulate"}, {"model", f.model}, {"treatments", out.size()},
                             {"output", f.output}};
    std::cout << s.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entropy production analysis of discrete play sequences"};
    app.set_version_flag("--version", eprstat::tool_version());
    app.require_subcommand(1);

    CommonFlags analyze_flags, minimax_flags, cycle_flags, motion_flags;
    auto* analyze_cmd = app.add_subcommand("analyze", "Entropy, EPR, velocity and motion per treatment");
    add_analysis_flags(*analyze_cmd, analyze_flags, false, false);
    auto* minimax_cmd = app.add_subcommand("minimax-test", "Test minimax randomization against a vNM null");
    add_analysis_flags(*minimax_cmd, minimax_flags, false, true);
    auto* cycle_cmd = app.add_subcommand("cycle-test", "Detect cycles: EPR against the i.i.d. DOS baseline");
    cycle_flags.alphas = {0.001};
    add_analysis_flags(*cycle_cmd, cycle_flags, true, false);
    auto* motion_cmd = app.add_subcommand("motion-fit", "Least-squares fit of motion on EPR across treatments");
    add_analysis_flags(*motion_cmd, motion_flags, false, false);

    SimulateFlags sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Write synthetic play records");
    sim_cmd->add_option("--model", sim.model, "vnm | chain")->capture_default_str();
    sim_cmd->add_option("--chain", sim.chain, "Chain descriptor (JSON) for --model chain");
    sim_cmd->add_option("--output", sim.output, "CSV path")->required();
    sim_cmd->add_option("--seed", sim.seed, "Root seed");
    sim_cmd->add_option("--rounds", sim.rounds, "Rounds per session")->capture_default_str();
    sim_cmd->add_option("--sessions", sim.sessions, "Sessions per treatment")->capture_default_str();
    sim_cmd->add_option("--treatments", sim.treatments, "Number of treatments")->capture_default_str();
    sim_cmd->add_option("--p", sim.p, "P(row action = 1) for --model vnm")->capture_default_str();
    sim_cmd->add_option("--q", sim.q, "P(column action = 1) for --model vnm")->capture_default_str();
    sim_cmd->add_option("--encoding", sim.encoding, "state | actions")->capture_default_str();
    sim_cmd->add_option("--treatment-prefix", sim.prefix, "Treatment id prefix")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze_cmd) {
            return run_pipeline(analyze_flags, [](const auto& d, const auto& c) { return analyze(d, c); });
        }
        if (*minimax_cmd) {
            return run_pipeline(minimax_flags, [](const auto& d, const auto& c) { return minimax_test(d, c); });
        }
        if (*cycle_cmd) {
            return run_pipeline(cycle_flags, [](const auto& d, const auto& c) { return cycle_test(d, c); });
        }
        if (*motion_cmd) {
            return run_pipeline(motion_flags, [](const auto& d, const auto& c) { return motion_fit(d, c); });
        }
        if (*sim_cmd) {
            return run_simulate(sim);
        }
    } catch (const eprstat::Error& e) {
        std::cerr << "eprstat: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "eprstat: internal error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
