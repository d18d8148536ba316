#include "treasure/io.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace treasure {

using nlohmann::json;

namespace {

json ratio_to_json(double ratio) {
    if (std::isinf(ratio)) return json("infinity");
    return json(ratio);
}

// Maps file rows (in label order) back to internal sorted order.
std::vector<int> internal_order(const std::vector<int>& file_labels,
                                const BoxDistribution& f) {
    if (static_cast<int>(file_labels.size()) != f.box_count())
        throw std::invalid_argument("strategy file: box_labels length disagrees with the prior");
    std::vector<int> row_of_internal(f.box_count(), -1);
    for (int internal = 0; internal < f.box_count(); ++internal) {
        const int wanted = f.label(internal);
        for (size_t row = 0; row < file_labels.size(); ++row) {
            if (file_labels[row] == wanted) {
                if (row_of_internal[internal] != -1)
                    throw std::invalid_argument("strategy file: duplicate box label");
                row_of_internal[internal] = static_cast<int>(row);
            }
        }
        if (row_of_internal[internal] == -1)
            throw std::invalid_argument("strategy file: box label missing from the prior");
    }
    return row_of_internal;
}

StrategyMatrix rows_to_strategy(const std::vector<std::vector<double>>& rows,
                                const std::vector<int>* file_labels,
                                const BoxDistribution* f) {
    if (file_labels == nullptr || f == nullptr) return StrategyMatrix::from_rows(rows);
    const std::vector<int> order = internal_order(*file_labels, *f);
    std::vector<std::vector<double>> permuted(rows.size());
    for (size_t internal = 0; internal < rows.size(); ++internal)
        permuted[internal] = rows[order[internal]];
    return StrategyMatrix::from_rows(permuted);
}

}  // namespace

json config_to_json(const GameConfig& config) {
    json policy;
    policy["kind"] = config.policy.kind_name();
    policy["rewards"] = config.policy.rewards();
    return json{{"f", config.f.original()},
                {"k", config.players},
                {"T", config.rounds},
                {"policy", policy}};
}

GameConfig config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const char* key : {"f", "k", "T", "policy"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    BoxDistribution f(j.at("f").get<std::vector<double>>());
    const int k = j.at("k").get<int>();
    const int rounds = j.at("T").get<int>();
    const json& pj = j.at("policy");
    const std::string kind = pj.at("kind").get<std::string>();
    if (kind == "exclusive") return GameConfig(f, CongestionPolicy::exclusive(k), rounds, k);
    if (kind == "sharing") return GameConfig(f, CongestionPolicy::sharing(k), rounds, k);
    if (kind == "table") {
        if (!pj.contains("rewards"))
            throw std::invalid_argument("config: table policy needs explicit rewards");
        return GameConfig(
            f, CongestionPolicy::table(pj.at("rewards").get<std::vector<double>>()), rounds, k);
    }
    throw std::invalid_argument("config: unknown policy kind '" + kind + "'");
}

std::string config_hash(const GameConfig& config) {
    const std::string canonical = config_to_json(config).dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

json strategy_to_json(const StrategyMatrix& a, const BoxDistribution* labels) {
    std::vector<std::vector<double>> rows(a.box_count());
    for (int x = 0; x < a.box_count(); ++x) {
        rows[x].resize(a.round_count());
        for (int t = 0; t < a.round_count(); ++t) rows[x][t] = a.at(x, t);
    }
    json j{{"M", a.box_count()}, {"T", a.round_count()}, {"rows", rows}};
    if (labels != nullptr) j["box_labels"] = labels->labels();
    return j;
}

StrategyMatrix strategy_from_json(const json& j, const BoxDistribution* labels) {
    if (!j.is_object() || !j.contains("rows"))
        throw std::invalid_argument("strategy: expected an object with a 'rows' field");
    auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (j.contains("M") && j.at("M").get<int>() != static_cast<int>(rows.size()))
        throw std::invalid_argument("strategy: M disagrees with the row count");
    if (j.contains("T") && !rows.empty() &&
        j.at("T").get<int>() != static_cast<int>(rows.front().size()))
        throw std::invalid_argument("strategy: T disagrees with the row length");
    std::vector<int> file_labels;
    if (j.contains("box_labels")) file_labels = j.at("box_labels").get<std::vector<int>>();
    return rows_to_strategy(rows, file_labels.empty() ? nullptr : &file_labels, labels);
}

void strategy_to_csv(std::ostream& out, const StrategyMatrix& a, const BoxDistribution* labels) {
    out << "box";
    for (int t = 1; t <= a.round_count(); ++t) out << ",t" << t;
    out << "\n";
    out.precision(17);
    for (int x = 0; x < a.box_count(); ++x) {
        out << (labels != nullptr ? labels->label(x) : x + 1);
        for (int t = 0; t < a.round_count(); ++t) out << "," << a.at(x, t);
        out << "\n";
    }
}

StrategyMatrix strategy_from_csv(std::istream& in, const BoxDistribution* labels) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("strategy csv: empty input");
    std::vector<std::vector<double>> rows;
    std::vector<int> file_labels;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream fields(line);
        std::string field;
        if (!std::getline(fields, field, ',')) continue;
        try {
            file_labels.push_back(std::stoi(field));
            std::vector<double> row;
            while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            throw std::invalid_argument("strategy csv: unparsable number in line '" + line + "'");
        }
    }
    return rows_to_strategy(rows, labels != nullptr ? &file_labels : nullptr, labels);
}

json profile_to_json(const Profile& profile, const BoxDistribution* labels) {
    json players = json::array();
    for (const auto& p : profile.players()) players.push_back(strategy_to_json(p, labels));
    return json{{"players", players}};
}

Profile profile_from_json(const json& j, const BoxDistribution* labels) {
    const json& players = j.is_array() ? j : j.at("players");
    if (!players.is_array() || players.empty())
        throw std::invalid_argument("profile: expected a non-empty array of strategies");
    std::vector<StrategyMatrix> out;
    out.reserve(players.size());
    for (const auto& pj : players) out.push_back(strategy_from_json(pj, labels));
    return Profile(std::move(out));
}

json decomposition_to_json(const StrategyDecomposition& d, const BoxDistribution* labels) {
    json terms = json::array();
    for (const auto& term : d.terms) {
        json visits = json::object();
        for (int t = 0; t < term.plan.rounds(); ++t) {
            const int x = term.plan.box_of_round[t];
            if (x < 0) continue;
            visits[std::to_string(t + 1)] = labels != nullptr ? labels->label(x) : x + 1;
        }
        terms.push_back(json{{"weight", term.weight}, {"visits", visits}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"M", d.boxes},
                {"T", d.rounds},
                {"terms", terms}};
}

json certificate_to_json(const EquilibriumCertificate& cert, const std::string& hash) {
    json players = json::array();
    for (const auto& audit : cert.players)
        players.push_back(json{{"own_utility", audit.own_utility},
                               {"best_response_utility", audit.best_utility},
                               {"ratio", ratio_to_json(audit.ratio)}});
    return json{{"schema_version", kSchemaVersion},
                {"config_hash", hash},
                {"tolerance", cert.tolerance},
                {"ratio", ratio_to_json(cert.ratio)},
                {"equilibrium", cert.equilibrium},
                {"players", players}};
}

json simulation_to_json(const SimulationReport& report, const std::string& hash) {
    json utilities = json::array();
    for (const auto& estimate : report.player_utility)
        utilities.push_back(json{{"estimate", estimate.mean}, {"stderr", estimate.stderr_}});
    return json{{"schema_version", kSchemaVersion},
                {"config_hash", hash},
                {"trials", report.trials},
                {"seed", report.seed},
                {"success", json{{"estimate", report.success.mean},
                                 {"stderr", report.success.stderr_}}},
                {"player_utilities", utilities}};
}

json poa_to_json(const PoAReport& report, const std::string& hash) {
    return json{{"schema_version", kSchemaVersion},
                {"config_hash", hash},
                {"optimal_success", report.optimal_success},
                {"profile_success", report.profile_success},
                {"ratio", report.ratio},
                {"exclusive_bound", report.exclusive_bound},
                {"certificate_ratio", ratio_to_json(report.certificate_ratio)}};
}

json pure_search_to_json(const PureSearchResult& result, const std::string& hash,
                         const BoxDistribution* labels) {
    json equilibria = json::array();
    for (const auto& profile : result.equilibria) {
        json players = json::array();
        for (const auto& plan : profile) {
            json visits = json::array();
            for (int x : plan) {
                if (x < 0)
                    visits.push_back(nullptr);
                else
                    visits.push_back(labels != nullptr ? labels->label(x) : x + 1);
            }
            players.push_back(visits);
        }
        equilibria.push_back(players);
    }
    return json{{"schema_version", kSchemaVersion},
                {"config_hash", hash},
                {"profiles_checked", result.profiles_checked},
                {"equilibrium_count", result.equilibria.size()},
                {"equilibria", equilibria}};
}

}  // namespace treasure
