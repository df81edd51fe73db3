#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainscore/config.hpp"
#include "chainscore/pipeline.hpp"

namespace {

struct CliValues {
    std::string config;
    std::string out_dir;
    std::string data_root;
    std::string valuations_csv;
    std::string players_csv;
    std::string link_overrides;
    std::uint64_t seed = 0;
    int jobs = 0;
    double test_fraction = 0.0;
    double xg_class0_weight = 0.0;
    double scorer_class0_weight = 0.0;
    int min_games = 0;
    std::string window_start;
    std::string window_end;
    std::string xg_final;
    std::string scorer_final;
    std::string transfer_final;
    std::string selection_metric;
    bool literal_distance = false;
    bool ablate_chain_length = false;
    bool suppress_shooter_delta = false;
    bool exclude_penalties = false;
    std::vector<std::string> team_allowlist;
    std::vector<std::string> report_players;
};

void add_common_options(CLI::App* sub, CliValues& v) {
    sub->add_option("--config", v.config, "config JSON file; flags override its values");
    sub->add_option("--out-dir", v.out_dir, "artifact directory");
    sub->add_option("--data-root", v.data_root, "event data tree (matches/, events/, lineups/)");
    sub->add_option("--valuations-csv", v.valuations_csv, "player_valuations.csv path");
    sub->add_option("--players-csv", v.players_csv, "players.csv path");
    sub->add_option("--link-overrides", v.link_overrides,
                    "JSON map of event-data names to valuation ids");
    sub->add_option("--seed", v.seed, "master random seed");
    sub->add_option("--jobs", v.jobs, "worker threads");
    sub->add_option("--test-fraction", v.test_fraction, "held-out share for evaluation");
    sub->add_option("--xg-class0-weight", v.xg_class0_weight,
                    "miss-class weight for shot models; 0 uses the goal prevalence");
    sub->add_option("--scorer-class0-weight", v.scorer_class0_weight,
                    "negative-class weight for chain models; 0 uses the prevalence");
    sub->add_option("--min-games", v.min_games, "eligibility floor for the symbolic team");
    sub->add_option("--window-start", v.window_start, "valuation window start (YYYY-MM-DD)");
    sub->add_option("--window-end", v.window_end, "valuation window end (YYYY-MM-DD)");
    sub->add_option("--xg-final", v.xg_final, "algorithm whose shot model is saved");
    sub->add_option("--scorer-final", v.scorer_final, "algorithm whose chain model is saved");
    sub->add_option("--transfer-final", v.transfer_final,
                    "algorithm whose value model is saved");
    sub->add_option("--selection-metric", v.selection_metric,
                    "grid-search metric: f1_weighted or recall_weighted");
    sub->add_flag("--literal-distance", v.literal_distance,
                  "use the sqrt(x^2 + (40-y)^2) distance variant");
    sub->add_flag("--ablate-chain-length", v.ablate_chain_length,
                  "drop the actions-to-chain-end feature from the chain model");
    sub->add_flag("--suppress-shooter-delta", v.suppress_shooter_delta,
                  "skip the last state delta when the same player shoots");
    sub->add_flag("--exclude-penalties", v.exclude_penalties,
                  "leave penalty kicks out of the shot model");
    sub->add_option("--team-allowlist", v.team_allowlist,
                    "restrict the symbolic team to these squads");
    sub->add_option("--report-player", v.report_players, "player names for the final report");
}

chainscore::PipelineConfig build_config(const CLI::App* sub, const CliValues& v) {
    chainscore::PipelineConfig cfg = v.config.empty() ? chainscore::PipelineConfig::defaults()
                                                      : chainscore::PipelineConfig::load(v.config);
    if (sub->count("--out-dir")) cfg.out_dir = v.out_dir;
    if (sub->count("--data-root")) cfg.data_root = v.data_root;
    if (sub->count("--valuations-csv")) cfg.valuations_csv = v.valuations_csv;
    if (sub->count("--players-csv")) cfg.players_csv = v.players_csv;
    if (sub->count("--link-overrides")) cfg.link_overrides = v.link_overrides;
    if (sub->count("--seed")) cfg.seed = v.seed;
    if (sub->count("--jobs")) cfg.jobs = v.jobs;
    if (sub->count("--test-fraction")) cfg.test_fraction = v.test_fraction;
    if (sub->count("--xg-class0-weight")) cfg.xg_class0_weight = v.xg_class0_weight;
    if (sub->count("--scorer-class0-weight")) cfg.scorer_class0_weight = v.scorer_class0_weight;
    if (sub->count("--min-games")) cfg.min_games = v.min_games;
    if (sub->count("--window-start")) cfg.window_start = v.window_start;
    if (sub->count("--window-end")) cfg.window_end = v.window_end;
    if (sub->count("--xg-final")) cfg.xg_final = v.xg_final;
    if (sub->count("--scorer-final")) cfg.scorer_final = v.scorer_final;
    if (sub->count("--transfer-final")) cfg.transfer_final = v.transfer_final;
    if (sub->count("--selection-metric")) cfg.selection_metric = v.selection_metric;
    if (sub->count("--literal-distance")) cfg.literal_distance = true;
    if (sub->count("--ablate-chain-length")) cfg.ablate_chain_length = true;
    if (sub->count("--suppress-shooter-delta")) cfg.suppress_shooter_delta = true;
    if (sub->count("--exclude-penalties")) cfg.exclude_penalties = true;
    if (sub->count("--team-allowlist")) cfg.team_allowlist = v.team_allowlist;
    if (sub->count("--report-player")) cfg.report_players = v.report_players;
    if (cfg.jobs < 1) cfg.jobs = 1;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"possession-chain player valuation pipeline"};
    app.require_subcommand(1);

    using Runner = void (*)(const chainscore::PipelineConfig&);
    const std::map<std::string, std::pair<const char*, Runner>> commands{
        {"ingest", {"parse event data and link players to valuations", chainscore::run_ingest}},
        {"chains", {"segment events into possession chains", chainscore::run_chains}},
        {"train-xg", {"train the shot conversion models", chainscore::run_train_xg}},
        {"train-scorer", {"train the chain scoring models", chainscore::run_train_scorer}},
        {"score-players", {"credit players with probability deltas", chainscore::run_score_players}},
        {"train-transfer", {"train the market-value change models", chainscore::run_train_transfer}},
        {"predict", {"predict value changes for all scored players", chainscore::run_predict}},
        {"team", {"pick the best 4-3-3 by credited score", chainscore::run_team}},
        {"report-all", {"run every stage and the player report", chainscore::run_report_all}},
    };

    CliValues values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        add_common_options(sub, values);
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, entry] : commands) {
        CLI::App* sub = subs[name];
        if (!sub->parsed()) continue;
        try {
            const chainscore::PipelineConfig cfg = build_config(sub, values);
            entry.second(cfg);
            std::printf("ok: %s -> %s\n", name.c_str(), cfg.out_dir.c_str());
        } catch (const std::exception& err) {
            const nlohmann::json out{{"command", name}, {"error", err.what()}};
            std::fprintf(stderr, "%s\n", out.dump().c_str());
            return 1;
        }
        return 0;
    }
    return 1;
}
