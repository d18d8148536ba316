#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "treasure/decompose.hpp"
#include "treasure/equilibrium.hpp"
#include "treasure/game.hpp"
#include "treasure/simulate.hpp"

namespace treasure {

// Report files carry this so downstream tooling can detect format changes.
constexpr int kSchemaVersion = 1;

// Strategies are stored in the engine's internal box order (prior sorted
// non-increasing). Files written by the engine carry "box_labels" mapping
// each row back to the 1-based position in the caller's original prior, and
// files carrying labels are permuted back on load.

nlohmann::json config_to_json(const GameConfig& config);
GameConfig config_from_json(const nlohmann::json& j);

/// FNV-1a over the canonical config serialization; echoed into every report.
std::string config_hash(const GameConfig& config);

nlohmann::json strategy_to_json(const StrategyMatrix& a, const BoxDistribution* labels = nullptr);
StrategyMatrix strategy_from_json(const nlohmann::json& j,
                                  const BoxDistribution* labels = nullptr);

/// CSV with header "box,t1,...,tT"; the box column holds the caller's labels.
void strategy_to_csv(std::ostream& out, const StrategyMatrix& a,
                     const BoxDistribution* labels = nullptr);
StrategyMatrix strategy_from_csv(std::istream& in, const BoxDistribution* labels = nullptr);

nlohmann::json profile_to_json(const Profile& profile, const BoxDistribution* labels = nullptr);
Profile profile_from_json(const nlohmann::json& j, const BoxDistribution* labels = nullptr);

nlohmann::json decomposition_to_json(const StrategyDecomposition& d,
                                     const BoxDistribution* labels = nullptr);

nlohmann::json certificate_to_json(const EquilibriumCertificate& cert,
                                   const std::string& config_hash);
nlohmann::json simulation_to_json(const SimulationReport& report, const std::string& config_hash);
nlohmann::json poa_to_json(const PoAReport& report, const std::string& config_hash);
nlohmann::json pure_search_to_json(const PureSearchResult& result,
                                   const std::string& config_hash,
                                   const BoxDistribution* labels = nullptr);

}  // namespace treasure
