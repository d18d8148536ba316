// Command-line front-end for the treasure-hunt game engine: builds strategies,
// certifies equilibria, decomposes matrices into executable plans, and runs
// seeded Monte Carlo experiments. All reports are machine-readable JSON.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "treasure/decompose.hpp"
#include "treasure/equilibrium.hpp"
#include "treasure/game.hpp"
#include "treasure/io.hpp"
#include "treasure/simulate.hpp"
#include "treasure/strategies.hpp"

namespace {

using nlohmann::json;
using namespace treasure;

constexpr int kExitValidation = 2;
constexpr int kExitNotEquilibrium = 3;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

GameConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

StrategyMatrix load_strategy(const std::string& path, const BoxDistribution& f) {
    if (has_suffix(path, ".csv")) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open file: " + path);
        return strategy_from_csv(in, &f);
    }
    return strategy_from_json(read_json_file(path), &f);
}

// Either a full profile file or a single strategy replicated for all seats.
Profile load_profile(const std::string& profile_path, const std::string& strategy_path,
                     const GameConfig& config) {
    if (!profile_path.empty() && !strategy_path.empty())
        throw std::invalid_argument("give either --profile or --strategy, not both");
    if (!profile_path.empty())
        return profile_from_json(read_json_file(profile_path), &config.f);
    if (!strategy_path.empty())
        return Profile::symmetric(load_strategy(strategy_path, config.f), config.players);
    throw std::invalid_argument("a profile is required: pass --profile or --strategy");
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file: " + out_path);
    out << text;
}

void emit_json(const std::string& out_path, const json& j) { emit(out_path, j.dump(2) + "\n"); }

void emit_strategy(const std::string& out_path, const std::string& format,
                   const StrategyMatrix& strategy, const BoxDistribution& f) {
    if (format == "csv") {
        std::ostringstream csv;
        strategy_to_csv(csv, strategy, &f);
        emit(out_path, csv.str());
    } else {
        emit_json(out_path, strategy_to_json(strategy, &f));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treasure-hunt search-game engine"};
    app.require_subcommand(1);

    std::string config_path, profile_path, strategy_path, out_path;
    std::string format = "json";
    double theta = 1e-3;
    double tolerance = 1e-6;
    long long trials = 100000;
    uint64_t seed = 0;
    int extra = 1;
    double cap = 1e7;
    bool expect_equilibrium = false;
    std::vector<double> extension_rewards;

    auto add_common = [&](CLI::App* cmd, bool with_format = false) {
        cmd->add_option("--config", config_path, "game configuration JSON")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        if (with_format)
            cmd->add_option("--format", format, "output format: json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* cmd_astar = app.add_subcommand(
        "astar", "optimal symmetric strategy (equilibrium under the exclusive policy)");
    add_common(cmd_astar, true);

    CLI::App* cmd_sgreedy =
        app.add_subcommand("sgreedy", "approximate self-greedy equilibrium strategy");
    add_common(cmd_sgreedy, true);
    cmd_sgreedy->add_option("--theta", theta, "accuracy knob (default 1e-3)");

    CLI::App* cmd_certify = app.add_subcommand("certify", "best-response equilibrium audit");
    add_common(cmd_certify);
    cmd_certify->add_option("--profile", profile_path, "profile JSON (one strategy per player)");
    cmd_certify->add_option("--strategy", strategy_path, "strategy JSON/CSV replicated for all players");
    cmd_certify->add_option("--tolerance", tolerance, "equilibrium tolerance (default 1e-6)");
    cmd_certify->add_flag("--expect-equilibrium", expect_equilibrium,
                          "exit with code 3 if the profile is not an equilibrium");

    CLI::App* cmd_simulate = app.add_subcommand("simulate", "seeded Monte Carlo playout");
    add_common(cmd_simulate);
    cmd_simulate->add_option("--profile", profile_path, "profile JSON");
    cmd_simulate->add_option("--strategy", strategy_path, "strategy replicated for all players");
    cmd_simulate->add_option("--trials", trials, "number of trials (default 100000)");
    cmd_simulate->add_option("--seed", seed, "RNG seed (default 0)");

    CLI::App* cmd_poa = app.add_subcommand("poa", "price-of-anarchy metrics for a profile");
    add_common(cmd_poa);
    cmd_poa->add_option("--profile", profile_path, "profile JSON");
    cmd_poa->add_option("--strategy", strategy_path, "strategy replicated for all players");

    CLI::App* cmd_robust =
        app.add_subcommand("robustness", "re-certify a strategy with extra players");
    add_common(cmd_robust);
    cmd_robust->add_option("--strategy", strategy_path, "strategy JSON/CSV")->required();
    cmd_robust->add_option("--extra", extra, "number of extra players (default 1)");
    cmd_robust->add_option("--extension-rewards", extension_rewards,
                           "explicit reward table of length k + extra (table policies)");

    CLI::App* cmd_decompose =
        app.add_subcommand("decompose", "Birkhoff decomposition into executable plans");
    add_common(cmd_decompose);
    cmd_decompose->add_option("--strategy", strategy_path, "strategy JSON/CSV")->required();

    CLI::App* cmd_pure =
        app.add_subcommand("pure-search", "exhaustive search for pure equilibria");
    add_common(cmd_pure);
    cmd_pure->add_option("--cap", cap, "largest M^(kT) the search will attempt (default 1e7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const GameConfig config = load_config(config_path);
        const std::string hash = config_hash(config);

        if (cmd_astar->parsed()) {
            emit_strategy(out_path, format,
                          optimal_symmetric_strategy(config.f, config.players, config.rounds),
                          config.f);
        } else if (cmd_sgreedy->parsed()) {
            emit_strategy(out_path, format, approx_equilibrium_strategy(config, theta), config.f);
        } else if (cmd_certify->parsed()) {
            const Profile profile = load_profile(profile_path, strategy_path, config);
            const EquilibriumCertificate cert = certify(config, profile, tolerance);
            emit_json(out_path, certificate_to_json(cert, hash));
            if (expect_equilibrium && !cert.equilibrium) return kExitNotEquilibrium;
        } else if (cmd_simulate->parsed()) {
            const Profile profile = load_profile(profile_path, strategy_path, config);
            emit_json(out_path, simulation_to_json(simulate(config, profile, trials, seed), hash));
        } else if (cmd_poa->parsed()) {
            const Profile profile = load_profile(profile_path, strategy_path, config);
            emit_json(out_path, poa_to_json(poa_metrics(config, profile), hash));
        } else if (cmd_robust->parsed()) {
            const StrategyMatrix strategy = load_strategy(strategy_path, config.f);
            std::optional<CongestionPolicy> extension;
            if (!extension_rewards.empty())
                extension = CongestionPolicy::table(extension_rewards);
            const EquilibriumCertificate cert = robustness_eval(
                config, strategy, extra, extension ? &*extension : nullptr);
            json report = certificate_to_json(cert, hash);
            report["players_evaluated"] = config.players + extra;
            report["extra"] = extra;
            emit_json(out_path, report);
        } else if (cmd_decompose->parsed()) {
            const StrategyMatrix strategy = load_strategy(strategy_path, config.f);
            emit_json(out_path, decomposition_to_json(birkhoff_decompose(strategy), &config.f));
        } else if (cmd_pure->parsed()) {
            emit_json(out_path,
                      pure_search_to_json(pure_equilibrium_search(config, cap), hash, &config.f));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
