#include "chainscore/config.hpp"

#include <stdexcept>

#include "chainscore/util/hash.hpp"
#include "chainscore/util/io.hpp"

namespace chainscore {

namespace {

ParamGrid classification_tree_grid() {
    return {{"max_depth", {3, 6, 9}}, {"n_trees", {100, 300}}};
}

}  // namespace

PipelineConfig PipelineConfig::defaults() {
    PipelineConfig c;
    c.xg_grids = {
        {"logistic_regression", {{"l2", {0.1, 1, 10}}}},
        {"random_forest", classification_tree_grid()},
        {"gradient_boosted_trees",
         {{"max_depth", {3, 6, 9}}, {"n_trees", {100, 300}}, {"learning_rate", {0.05, 0.1}}}},
    };
    c.scorer_grids = c.xg_grids;
    c.transfer_grids = {
        {"random_forest", classification_tree_grid()},
        {"gradient_boosted_trees",
         {{"max_depth", {3, 6, 9}}, {"n_trees", {100, 300}}, {"learning_rate", {0.05, 0.1}}}},
        {"decision_tree", {{"max_depth", {3, 6, 9}}}},
    };
    c.report_players = {"Andrea Belotti",   "Jorginho",       "Mikkel Damsgaard",
                        "Joakim Maehle",    "Ondrej Celustka", "Patrik Schick"};
    return c;
}

namespace {

using Errors = std::vector<std::string>;

void expect_type(const nlohmann::json& v, const char* key, const char* type, Errors& errors) {
    errors.push_back(std::string(key) + ": expected " + type + ", got " + v.type_name());
}

void read_string(const nlohmann::json& j, const char* key, std::string& out, Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) return expect_type(j.at(key), key, "string", errors);
    out = j.at(key).get<std::string>();
}

void read_bool(const nlohmann::json& j, const char* key, bool& out, Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) return expect_type(j.at(key), key, "boolean", errors);
    out = j.at(key).get<bool>();
}

void read_number(const nlohmann::json& j, const char* key, double& out, Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) return expect_type(j.at(key), key, "number", errors);
    out = j.at(key).get<double>();
}

void read_int(const nlohmann::json& j, const char* key, int& out, Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) return expect_type(j.at(key), key, "integer", errors);
    out = j.at(key).get<int>();
}

void read_strings(const nlohmann::json& j, const char* key, std::vector<std::string>& out,
                  Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) return expect_type(j.at(key), key, "array of strings", errors);
    std::vector<std::string> parsed;
    for (const auto& item : j.at(key)) {
        if (!item.is_string()) return expect_type(item, key, "array of strings", errors);
        parsed.push_back(item.get<std::string>());
    }
    out = std::move(parsed);
}

void read_grids(const nlohmann::json& j, const char* key, std::map<std::string, ParamGrid>& out,
                Errors& errors) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_object()) return expect_type(j.at(key), key, "object", errors);
    std::map<std::string, ParamGrid> parsed;
    for (const auto& [algorithm, grid] : j.at(key).items()) {
        if (!grid.is_object()) {
            expect_type(grid, (std::string(key) + "." + algorithm).c_str(), "object", errors);
            return;
        }
        ParamGrid g;
        for (const auto& [param, values] : grid.items()) {
            if (!values.is_array()) {
                expect_type(values, (std::string(key) + "." + algorithm + "." + param).c_str(),
                            "array of numbers", errors);
                return;
            }
            std::vector<double> v;
            for (const auto& value : values) {
                if (!value.is_number()) {
                    expect_type(value, (std::string(key) + "." + algorithm + "." + param).c_str(),
                                "array of numbers", errors);
                    return;
                }
                v.push_back(value.get<double>());
            }
            g[param] = std::move(v);
        }
        parsed[algorithm] = std::move(g);
    }
    out = std::move(parsed);
}

const char* kKnownKeys[] = {
    "data_root",       "valuations_csv",     "players_csv",
    "link_overrides",  "out_dir",            "competitions",
    "seed",            "test_fraction",      "xg_class0_weight",
    "scorer_class0_weight", "xg_grids",      "scorer_grids",
    "transfer_grids",  "xg_final",           "scorer_final",
    "transfer_final",  "selection_metric",   "window_start",
    "window_end",      "min_games",          "jobs",
    "literal_distance", "ablate_chain_length", "suppress_shooter_delta",
    "exclude_penalties", "report_players",   "team_allowlist",
};

}  // namespace

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
    Errors errors;
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnownKeys) known = known || key == k;
        if (!known) errors.push_back(key + ": unknown key");
        (void)value;
    }

    PipelineConfig c = defaults();
    read_string(j, "data_root", c.data_root, errors);
    read_string(j, "valuations_csv", c.valuations_csv, errors);
    read_string(j, "players_csv", c.players_csv, errors);
    read_string(j, "link_overrides", c.link_overrides, errors);
    read_string(j, "out_dir", c.out_dir, errors);

    if (j.contains("competitions")) {
        const auto& comps = j.at("competitions");
        if (!comps.is_array()) {
            expect_type(comps, "competitions", "array of [competition_id, season_id]", errors);
        } else {
            std::vector<std::pair<int, int>> parsed;
            bool ok = true;
            for (const auto& item : comps) {
                if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
                    !item[1].is_number_integer()) {
                    expect_type(item, "competitions", "array of [competition_id, season_id]",
                                errors);
                    ok = false;
                    break;
                }
                parsed.emplace_back(item[0].get<int>(), item[1].get<int>());
            }
            if (ok) c.competitions = std::move(parsed);
        }
    }

    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
            expect_type(j.at("seed"), "seed", "integer", errors);
        } else {
            c.seed = j.at("seed").get<std::uint64_t>();
        }
    }
    read_number(j, "test_fraction", c.test_fraction, errors);
    read_number(j, "xg_class0_weight", c.xg_class0_weight, errors);
    read_number(j, "scorer_class0_weight", c.scorer_class0_weight, errors);
    read_grids(j, "xg_grids", c.xg_grids, errors);
    read_grids(j, "scorer_grids", c.scorer_grids, errors);
    read_grids(j, "transfer_grids", c.transfer_grids, errors);
    read_string(j, "xg_final", c.xg_final, errors);
    read_string(j, "scorer_final", c.scorer_final, errors);
    read_string(j, "transfer_final", c.transfer_final, errors);
    read_string(j, "selection_metric", c.selection_metric, errors);
    read_string(j, "window_start", c.window_start, errors);
    read_string(j, "window_end", c.window_end, errors);
    read_int(j, "min_games", c.min_games, errors);
    read_int(j, "jobs", c.jobs, errors);
    read_bool(j, "literal_distance", c.literal_distance, errors);
    read_bool(j, "ablate_chain_length", c.ablate_chain_length, errors);
    read_bool(j, "suppress_shooter_delta", c.suppress_shooter_delta, errors);
    read_bool(j, "exclude_penalties", c.exclude_penalties, errors);
    read_strings(j, "report_players", c.report_players, errors);
    read_strings(j, "team_allowlist", c.team_allowlist, errors);

    if (c.test_fraction <= 0.0 || c.test_fraction >= 1.0) {
        errors.push_back("test_fraction: must be in (0, 1)");
    }
    if (c.selection_metric != "f1_weighted" && c.selection_metric != "recall_weighted") {
        errors.push_back("selection_metric: must be f1_weighted or recall_weighted");
    }
    for (const auto& [key, name] :
         std::initializer_list<std::pair<const char*, const std::string*>>{
             {"xg_final", &c.xg_final},
             {"scorer_final", &c.scorer_final},
             {"transfer_final", &c.transfer_final}}) {
        try {
            algorithm_from_name(*name);
        } catch (const std::exception&) {
            errors.push_back(std::string(key) + ": unknown algorithm '" + *name + "'");
        }
    }
    if (c.min_games < 0) errors.push_back("min_games: must be >= 0");
    if (c.jobs < 1) errors.push_back("jobs: must be >= 1");

    if (!errors.empty()) {
        std::string message = "config validation failed:";
        for (const std::string& e : errors) message += "\n  - " + e;
        throw std::runtime_error(message);
    }
    return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    return from_json(parse_json_file(path));
}

nlohmann::json PipelineConfig::to_json() const {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& [competition_id, season_id] : competitions) {
        comps.push_back({competition_id, season_id});
    }
    const auto grids_json = [](const std::map<std::string, ParamGrid>& grids) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [algorithm, grid] : grids) out[algorithm] = grid;
        return out;
    };
    return {{"data_root", data_root},
            {"valuations_csv", valuations_csv},
            {"players_csv", players_csv},
            {"link_overrides", link_overrides},
            {"out_dir", out_dir},
            {"competitions", comps},
            {"seed", seed},
            {"test_fraction", test_fraction},
            {"xg_class0_weight", xg_class0_weight},
            {"scorer_class0_weight", scorer_class0_weight},
            {"xg_grids", grids_json(xg_grids)},
            {"scorer_grids", grids_json(scorer_grids)},
            {"transfer_grids", grids_json(transfer_grids)},
            {"xg_final", xg_final},
            {"scorer_final", scorer_final},
            {"transfer_final", transfer_final},
            {"selection_metric", selection_metric},
            {"window_start", window_start},
            {"window_end", window_end},
            {"min_games", min_games},
            {"jobs", jobs},
            {"literal_distance", literal_distance},
            {"ablate_chain_length", ablate_chain_length},
            {"suppress_shooter_delta", suppress_shooter_delta},
            {"exclude_penalties", exclude_penalties},
            {"report_players", report_players},
            {"team_allowlist", team_allowlist}};
}

std::string PipelineConfig::hash() const { return hex64(fnv1a(to_json().dump())); }

}  // namespace chainscore
