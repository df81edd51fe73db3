#include "chainscore/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/chains.hpp"
#include "chainscore/ingest.hpp"
#include "chainscore/scorer.hpp"
#include "chainscore/transfer.hpp"
#include "chainscore/util/csv.hpp"
#include "chainscore/util/hash.hpp"
#include "chainscore/util/io.hpp"
#include "chainscore/util/rng.hpp"
#include "chainscore/valuation.hpp"
#include "chainscore/xg.hpp"

namespace chainscore {

namespace {

std::string out_path(const PipelineConfig& cfg, const char* name) {
    return path_join(cfg.out_dir, name);
}

// Upstream artifacts are looked up by name; a missing one names the command
// that produces it so the fix is obvious.
std::string require_artifact(const PipelineConfig& cfg, const char* name, const char* producer) {
    const std::string p = out_path(cfg, name);
    if (!file_exists(p)) {
        throw std::runtime_error(std::string("run ") + producer + " first: " + name + " missing");
    }
    return p;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Content hash over a set of named files, order-independent.
std::string combined_hash(std::vector<std::pair<std::string, std::string>> parts) {
    std::sort(parts.begin(), parts.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [name, hash] : parts) h = fnv1a(name + ":" + hash + "\n", h);
    return hex64(h);
}

class ManifestWriter {
public:
    ManifestWriter(const PipelineConfig& cfg, std::string stage)
        : cfg_(cfg), stage_(std::move(stage)) {}

    void input(const std::string& name, const std::string& path) {
        inputs_[name] = hash_file(path);
    }
    void input_hash(const std::string& name, const std::string& hash) { inputs_[name] = hash; }
    void output(const char* name) { outputs_[name] = hash_file(out_path(cfg_, name)); }

    void write() const {
        nlohmann::json j{{"stage", stage_},
                         {"config_hash", cfg_.hash()},
                         {"seed", cfg_.seed},
                         {"inputs", inputs_},
                         {"outputs", outputs_}};
        write_json_file(out_path(cfg_, ("manifest_" + stage_ + ".json").c_str()), j);
    }

private:
    const PipelineConfig& cfg_;
    std::string stage_;
    std::map<std::string, std::string> inputs_;
    std::map<std::string, std::string> outputs_;
};

// Generic dataset <-> JSON Lines codec. Feature values sit at the top level
// keyed by feature name, alongside the reserved "id" and "label" keys.
std::vector<nlohmann::json> dataset_rows_json(const Dataset& d) {
    std::vector<nlohmann::json> rows;
    rows.reserve(d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        nlohmann::json j{{"id", d.row_id(r)}, {"label", d.target(r)}};
        for (std::size_t f = 0; f < d.n_features(); ++f) {
            const FeatureSpec& spec = d.feature(f);
            if (spec.kind == FeatureKind::Categorical) {
                j[spec.name] = d.level_of(r, f);
            } else {
                j[spec.name] = d.value(r, f);
            }
        }
        rows.push_back(std::move(j));
    }
    return rows;
}

std::vector<Event> read_events_artifact(const std::string& path) {
    std::vector<Event> events;
    for (const nlohmann::json& j : read_jsonl(path)) events.push_back(Event::from_json(j));
    return events;
}

std::vector<PossessionChain> read_chains_artifact(const std::string& path) {
    std::vector<PossessionChain> chains;
    for (const nlohmann::json& j : read_jsonl(path)) chains.push_back(PossessionChain::from_json(j));
    return chains;
}

std::vector<PlayerProfile> read_profiles_artifact(const std::string& path) {
    std::vector<PlayerProfile> profiles;
    for (const nlohmann::json& j : read_jsonl(path)) profiles.push_back(PlayerProfile::from_json(j));
    return profiles;
}

std::vector<MatchInfo> read_matches_artifact(const std::string& path) {
    std::vector<MatchInfo> matches;
    for (const nlohmann::json& j : read_jsonl(path)) matches.push_back(MatchInfo::from_json(j));
    return matches;
}

ModelArtifact read_model_artifact(const std::string& path) {
    return ModelArtifact::from_json(parse_json_file(path));
}

SelectionMetric selection_metric_of(const PipelineConfig& cfg) {
    return cfg.selection_metric == "recall_weighted" ? SelectionMetric::WeightedRecall
                                                     : SelectionMetric::WeightedF1;
}

XgOptions xg_options_of(const PipelineConfig& cfg) {
    return XgOptions{cfg.literal_distance, cfg.exclude_penalties};
}

// Trains every configured algorithm on one shared split and reports each;
// the chosen final algorithm's artifact is returned for saving.
struct ClassifierStageResult {
    ModelArtifact final_model;
    ClassificationReport final_report;
    nlohmann::json per_algorithm;
};

ClassifierStageResult train_classifier_stage(const PipelineConfig& cfg, const Dataset& train,
                                             const Dataset& test, double class0_weight,
                                             const std::map<std::string, ParamGrid>& grids,
                                             const std::string& final_name,
                                             std::uint64_t train_seed) {
    if (grids.find(final_name) == grids.end()) {
        throw std::runtime_error("no hyperparameter grid for final algorithm " + final_name);
    }
    ClassifierStageResult out;
    for (const auto& [name, grid] : grids) {
        const ModelArtifact m = train_classifier(algorithm_from_name(name), train, class0_weight,
                                                 grid, train_seed, selection_metric_of(cfg),
                                                 cfg.jobs);
        const ClassificationReport rep = evaluate_classifier(m, test);
        nlohmann::json entry = rep.to_json();
        entry["training"] = m.training_metrics;
        out.per_algorithm[name] = std::move(entry);
        if (name == final_name) {
            out.final_model = m;
            out.final_report = rep;
        }
    }
    return out;
}

TransferWindow resolve_window(const PipelineConfig& cfg, const std::vector<MatchInfo>& matches) {
    TransferWindow w;
    if (!cfg.window_start.empty()) {
        if (!parse_date(cfg.window_start, w.start)) {
            throw std::runtime_error("invalid window_start: " + cfg.window_start);
        }
    }
    if (!cfg.window_end.empty()) {
        if (!parse_date(cfg.window_end, w.end)) {
            throw std::runtime_error("invalid window_end: " + cfg.window_end);
        }
    }
    if (cfg.window_start.empty() || cfg.window_end.empty()) {
        if (matches.empty()) throw std::runtime_error("no matches available to derive the window");
        Date lo = matches.front().date;
        Date hi = matches.front().date;
        for (const MatchInfo& m : matches) {
            lo = std::min(lo, m.date);
            hi = std::max(hi, m.date);
        }
        if (cfg.window_start.empty()) w.start = lo;
        if (cfg.window_end.empty()) w.end = hi;
    }
    return w;
}

struct TransferArtifactRow {
    int player_id = -1;
    std::string name;
    std::vector<FeatureValue> features;
    double target = 0.0;
};

std::vector<TransferArtifactRow> read_transfer_dataset_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::vector<FeatureSpec> schema = transfer_schema();
    for (const FeatureSpec& f : schema) {
        if (!t.has_column(f.name)) {
            throw std::runtime_error("transfer_dataset.csv is missing column " + f.name);
        }
    }
    std::vector<TransferArtifactRow> rows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        TransferArtifactRow row;
        row.player_id = std::stoi(t.cell(r, "player_id"));
        row.name = t.cell(r, "name");
        for (const FeatureSpec& f : schema) {
            const std::string& cell = t.cell(r, f.name);
            if (f.kind == FeatureKind::Categorical) {
                row.features.push_back(FeatureValue::cat(cell));
            } else {
                row.features.push_back(FeatureValue::num(std::stod(cell)));
            }
        }
        row.target = std::stod(t.cell(r, "target_change_millions"));
        rows.push_back(std::move(row));
    }
    return rows;
}

Dataset transfer_dataset_from_rows(const std::vector<TransferArtifactRow>& rows) {
    DatasetBuilder b(transfer_schema());
    for (const TransferArtifactRow& r : rows) {
        b.add_row(std::to_string(r.player_id), r.features, r.target);
    }
    return b.build();
}

}  // namespace

std::string player_scores_csv(const std::vector<PlayerScore>& scores,
                              const std::vector<PlayerProfile>& profiles) {
    std::map<int, const PlayerProfile*> by_id;
    for (const PlayerProfile& p : profiles) by_id[p.player_id] = &p;
    std::string csv =
        "player_id,name,team,position_group,raw_position,games,chains,total_credit,"
        "score_per_game,linked_valuation_id\n";
    for (const PlayerScore& s : scores) {
        const auto it = by_id.find(s.player_id);
        if (it == by_id.end()) {
            throw std::runtime_error("scored player " + std::to_string(s.player_id) +
                                     " has no profile");
        }
        const PlayerProfile& p = *it->second;
        csv += std::to_string(s.player_id) + "," + csv_escape(p.name) + "," +
               csv_escape(p.team_name) + "," + position_group_name(p.group) + "," +
               csv_escape(p.raw_position) + "," + std::to_string(s.games_played) + "," +
               std::to_string(s.chains_participated) + "," + fmt_double(s.total) + "," +
               fmt_double(s.normalized) + "," + std::to_string(p.linked_valuation_id) + "\n";
    }
    return csv;
}

std::vector<PlayerScore> read_player_scores_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    std::vector<PlayerScore> scores;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        PlayerScore s;
        s.player_id = std::stoi(t.cell(r, "player_id"));
        s.games_played = std::stoi(t.cell(r, "games"));
        s.chains_participated = std::stoi(t.cell(r, "chains"));
        s.total = std::stod(t.cell(r, "total_credit"));
        s.normalized = std::stod(t.cell(r, "score_per_game"));
        scores.push_back(std::move(s));
    }
    return scores;
}

void run_ingest(const PipelineConfig& cfg) {
    if (cfg.data_root.empty()) throw std::runtime_error("data_root is not set");
    if (cfg.valuations_csv.empty()) throw std::runtime_error("valuations_csv is not set");
    if (cfg.players_csv.empty()) throw std::runtime_error("players_csv is not set");
    ensure_dir(cfg.out_dir);
    ManifestWriter manifest(cfg, "ingest");

    const std::vector<MatchInfo> matches = load_match_index(cfg.data_root, cfg.competitions);

    std::vector<std::pair<std::string, std::string>> data_files;
    for (const auto& [comp, season] : cfg.competitions) {
        const std::string rel =
            "matches/" + std::to_string(comp) + "/" + std::to_string(season) + ".json";
        data_files.emplace_back(rel, hash_file(path_join(cfg.data_root, rel)));
    }

    std::vector<std::vector<Event>> events(matches.size());
    std::vector<std::vector<LineupPlayer>> lineups(matches.size());
    std::vector<EventLoadReport> reports(matches.size());
    std::vector<bool> lineup_missing(matches.size(), false);
    parallel_for(matches.size(), cfg.jobs, [&](std::size_t i) {
        const int id = matches[i].match_id;
        events[i] = load_events(cfg.data_root, id, &reports[i]);
        if (file_exists(path_join(cfg.data_root, "lineups/" + std::to_string(id) + ".json"))) {
            lineups[i] = load_lineup(cfg.data_root, id);
        } else {
            lineup_missing[i] = true;
        }
    });

    EventLoadReport load_report;
    int missing_lineups = 0;
    std::vector<nlohmann::json> event_lines;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        load_report.merge(reports[i]);
        if (lineup_missing[i]) ++missing_lineups;
        const int id = matches[i].match_id;
        data_files.emplace_back("events/" + std::to_string(id) + ".json",
                                hash_file(path_join(cfg.data_root,
                                                    "events/" + std::to_string(id) + ".json")));
        if (!lineup_missing[i]) {
            data_files.emplace_back("lineups/" + std::to_string(id) + ".json",
                                    hash_file(path_join(cfg.data_root,
                                                        "lineups/" + std::to_string(id) +
                                                            ".json")));
        }
        for (const Event& e : events[i]) event_lines.push_back(e.to_json());
    }

    std::vector<PlayerProfile> profiles = build_player_profiles(lineups, events);

    const ValuationLoad valuations = load_valuations(cfg.valuations_csv);
    const MetaLoad meta = load_player_meta(cfg.players_csv);

    std::map<std::string, long long> overrides;
    if (!cfg.link_overrides.empty()) {
        const nlohmann::json j = parse_json_file(cfg.link_overrides);
        if (!j.is_object()) {
            throw std::runtime_error("link overrides must be a JSON object: " +
                                     cfg.link_overrides);
        }
        for (const auto& [name, id] : j.items()) {
            if (!id.is_number_integer()) {
                throw std::runtime_error("link override for '" + name + "' must be an integer id");
            }
            overrides[name] = id.get<long long>();
        }
        manifest.input("link_overrides", cfg.link_overrides);
    }

    const LinkOutcome links = link_players(profiles, meta.by_player, overrides);
    for (PlayerProfile& p : profiles) {
        const auto it = links.links.find(p.player_id);
        if (it != links.links.end()) p.linked_valuation_id = it->second;
    }

    std::vector<nlohmann::json> profile_lines;
    for (const PlayerProfile& p : profiles) profile_lines.push_back(p.to_json());
    std::vector<nlohmann::json> match_lines;
    for (const MatchInfo& m : matches) match_lines.push_back(m.to_json());

    write_jsonl(out_path(cfg, artifact::kEvents), event_lines);
    write_jsonl(out_path(cfg, artifact::kPlayers), profile_lines);
    write_jsonl(out_path(cfg, artifact::kMatches), match_lines);
    write_json_file(out_path(cfg, artifact::kLinkReport), links.report());
    write_json_file(out_path(cfg, artifact::kIngestReport),
                    nlohmann::json{{"matches", matches.size()},
                                   {"events", event_lines.size()},
                                   {"players", profile_lines.size()},
                                   {"raw_shot_rows", load_report.raw_shot_rows},
                                   {"parsed_shot_rows", load_report.parsed_shot_rows},
                                   {"out_of_bounds_locations", load_report.out_of_bounds_locations},
                                   {"skipped_records", load_report.skipped},
                                   {"missing_lineups", missing_lineups},
                                   {"valuation_rows_skipped", valuations.skipped_rows},
                                   {"meta_rows_skipped", meta.skipped_rows}});

    manifest.input_hash("data_root", combined_hash(std::move(data_files)));
    manifest.input("valuations_csv", cfg.valuations_csv);
    manifest.input("players_csv", cfg.players_csv);
    manifest.output(artifact::kEvents);
    manifest.output(artifact::kPlayers);
    manifest.output(artifact::kMatches);
    manifest.output(artifact::kLinkReport);
    manifest.output(artifact::kIngestReport);
    manifest.write();
}

void run_chains(const PipelineConfig& cfg) {
    const std::string events_path = require_artifact(cfg, artifact::kEvents, "ingest");
    ManifestWriter manifest(cfg, "chains");
    manifest.input(artifact::kEvents, events_path);

    // events.jsonl is ordered by (match_id, event_index); regroup per match.
    std::map<int, std::vector<Event>> by_match;
    for (Event& e : read_events_artifact(events_path)) {
        by_match[e.match_id].push_back(std::move(e));
    }
    std::vector<const std::vector<Event>*> match_events;
    for (const auto& [id, evs] : by_match) match_events.push_back(&evs);

    std::vector<std::vector<PossessionChain>> per_match(match_events.size());
    std::vector<ChainExtractionReport> reports(match_events.size());
    parallel_for(match_events.size(), cfg.jobs, [&](std::size_t i) {
        per_match[i] = extract_chains(*match_events[i], &reports[i]);
    });

    ChainExtractionReport report;
    std::vector<nlohmann::json> lines;
    for (std::size_t i = 0; i < per_match.size(); ++i) {
        report.merge(reports[i]);
        for (const PossessionChain& c : per_match[i]) lines.push_back(c.to_json());
    }

    int goals = 0;
    for (const nlohmann::json& j : lines) goals += j.at("ends_in_goal").get<bool>() ? 1 : 0;

    write_jsonl(out_path(cfg, artifact::kChains), lines);
    write_json_file(out_path(cfg, artifact::kChainReport),
                    nlohmann::json{{"matches", match_events.size()},
                                   {"shots_seen", report.shots_seen},
                                   {"chains_built", report.chains_built},
                                   {"dropped_shots", report.dropped_shots},
                                   {"skipped_actions", report.skipped_actions},
                                   {"goal_chains", goals}});
    manifest.output(artifact::kChains);
    manifest.output(artifact::kChainReport);
    manifest.write();
}

void run_train_xg(const PipelineConfig& cfg) {
    const std::string chains_path = require_artifact(cfg, artifact::kChains, "chains");
    ManifestWriter manifest(cfg, "train-xg");
    manifest.input(artifact::kChains, chains_path);

    const std::vector<PossessionChain> chains = read_chains_artifact(chains_path);
    XgBuildReport build;
    const Dataset dataset = build_xg_dataset(chains, PitchSpec{}, xg_options_of(cfg), &build);
    write_jsonl(out_path(cfg, artifact::kXgDataset), dataset_rows_json(dataset));

    const auto [train, test] =
        stratified_split(dataset, cfg.test_fraction, Rng::derive(cfg.seed, "xg_split"));
    const double class0 =
        cfg.xg_class0_weight > 0.0 ? cfg.xg_class0_weight : train.positive_prevalence();

    const ClassifierStageResult stage =
        train_classifier_stage(cfg, train, test, class0, cfg.xg_grids, cfg.xg_final,
                               Rng::derive(cfg.seed, "xg_train"));

    write_json_file(out_path(cfg, artifact::kXgModel), stage.final_model.to_json());
    write_json_file(out_path(cfg, artifact::kXgReport),
                    nlohmann::json{{"build",
                                    {{"rows", build.rows},
                                     {"goals", build.goals},
                                     {"skipped_penalties", build.skipped_penalties},
                                     {"prevalence", build.prevalence}}},
                                   {"class0_weight", class0},
                                   {"test_fraction", cfg.test_fraction},
                                   {"selection_metric", cfg.selection_metric},
                                   {"literal_distance", cfg.literal_distance},
                                   {"exclude_penalties", cfg.exclude_penalties},
                                   {"algorithms", stage.per_algorithm},
                                   {"final", cfg.xg_final}});
    write_file(out_path(cfg, artifact::kXgPrCurve), pr_curve_csv(stage.final_report.pr_curve));

    manifest.output(artifact::kXgDataset);
    manifest.output(artifact::kXgModel);
    manifest.output(artifact::kXgReport);
    manifest.output(artifact::kXgPrCurve);
    manifest.write();
}

void run_train_scorer(const PipelineConfig& cfg) {
    const std::string chains_path = require_artifact(cfg, artifact::kChains, "chains");
    ManifestWriter manifest(cfg, "train-scorer");
    manifest.input(artifact::kChains, chains_path);

    const std::vector<PossessionChain> chains = read_chains_artifact(chains_path);
    const ScorerOptions options{cfg.ablate_chain_length};
    ScorerBuildReport build;
    const Dataset dataset = build_scorer_dataset(chains, options, &build);
    write_jsonl(out_path(cfg, artifact::kScorerDataset), dataset_rows_json(dataset));

    const std::uint64_t split_seed = Rng::derive(cfg.seed, "scorer_split");
    const std::uint64_t train_seed = Rng::derive(cfg.seed, "scorer_train");
    const auto [train, test] = stratified_split(dataset, cfg.test_fraction, split_seed);
    const double class0 =
        cfg.scorer_class0_weight > 0.0 ? cfg.scorer_class0_weight : train.positive_prevalence();

    const ClassifierStageResult stage = train_classifier_stage(
        cfg, train, test, class0, cfg.scorer_grids, cfg.scorer_final, train_seed);

    // Sensitivity run without the retrospective chain-length feature. When
    // the main configuration already drops it, the main run doubles as the
    // ablated one.
    nlohmann::json ablated;
    if (cfg.ablate_chain_length) {
        ablated = stage.per_algorithm.at(cfg.scorer_final);
    } else {
        const Dataset ab_dataset = build_scorer_dataset(chains, ScorerOptions{true});
        const auto [ab_train, ab_test] =
            stratified_split(ab_dataset, cfg.test_fraction, split_seed);
        const double ab_class0 = cfg.scorer_class0_weight > 0.0 ? cfg.scorer_class0_weight
                                                                : ab_train.positive_prevalence();
        const ModelArtifact ab_model = train_classifier(
            algorithm_from_name(cfg.scorer_final), ab_train, ab_class0,
            cfg.scorer_grids.at(cfg.scorer_final), train_seed, selection_metric_of(cfg), cfg.jobs);
        ablated = evaluate_classifier(ab_model, ab_test).to_json();
        ablated["training"] = ab_model.training_metrics;
    }
    ablated["algorithm"] = cfg.scorer_final;

    write_json_file(out_path(cfg, artifact::kScorerModel), stage.final_model.to_json());
    write_json_file(out_path(cfg, artifact::kScorerReport),
                    nlohmann::json{{"build",
                                    {{"rows", build.rows},
                                     {"positives", build.positives},
                                     {"prevalence", build.prevalence}}},
                                   {"class0_weight", class0},
                                   {"test_fraction", cfg.test_fraction},
                                   {"selection_metric", cfg.selection_metric},
                                   {"chain_length_feature_dropped", cfg.ablate_chain_length},
                                   {"algorithms", stage.per_algorithm},
                                   {"without_chain_length", ablated},
                                   {"final", cfg.scorer_final}});
    write_file(out_path(cfg, artifact::kScorerPrCurve), pr_curve_csv(stage.final_report.pr_curve));

    manifest.output(artifact::kScorerDataset);
    manifest.output(artifact::kScorerModel);
    manifest.output(artifact::kScorerReport);
    manifest.output(artifact::kScorerPrCurve);
    manifest.write();
}

void run_score_players(const PipelineConfig& cfg) {
    const std::string chains_path = require_artifact(cfg, artifact::kChains, "chains");
    const std::string players_path = require_artifact(cfg, artifact::kPlayers, "ingest");
    const std::string xg_path = require_artifact(cfg, artifact::kXgModel, "train-xg");
    const std::string scorer_path = require_artifact(cfg, artifact::kScorerModel, "train-scorer");
    ManifestWriter manifest(cfg, "score-players");
    manifest.input(artifact::kChains, chains_path);
    manifest.input(artifact::kPlayers, players_path);
    manifest.input(artifact::kXgModel, xg_path);
    manifest.input(artifact::kScorerModel, scorer_path);

    const std::vector<PossessionChain> chains = read_chains_artifact(chains_path);
    const std::vector<PlayerProfile> profiles = read_profiles_artifact(players_path);
    const ModelArtifact xg_model = read_model_artifact(xg_path);
    const ModelArtifact scorer_model = read_model_artifact(scorer_path);

    std::map<int, PositionGroup> roles;
    std::map<int, int> appearances;
    for (const PlayerProfile& p : profiles) {
        roles[p.player_id] = p.group;
        appearances[p.player_id] = p.games_played;
    }

    const ValuationOptions options{cfg.suppress_shooter_delta,
                                   ScorerOptions{cfg.ablate_chain_length}, xg_options_of(cfg)};
    const RoleWeightTable weights;
    const PitchSpec pitch;

    std::vector<std::vector<ActionCredit>> per_chain(chains.size());
    parallel_for(chains.size(), cfg.jobs, [&](std::size_t i) {
        per_chain[i] =
            score_chain(chains[i], scorer_model, xg_model, roles, weights, pitch, options);
    });

    std::vector<ActionCredit> credits;
    std::vector<nlohmann::json> credit_lines;
    for (const std::vector<ActionCredit>& cs : per_chain) {
        for (const ActionCredit& c : cs) {
            credits.push_back(c);
            credit_lines.push_back(c.to_json());
        }
    }

    const std::vector<PlayerScore> scores = aggregate_scores(credits, appearances);

    write_jsonl(out_path(cfg, artifact::kCredits), credit_lines);
    write_file(out_path(cfg, artifact::kPlayerScores), player_scores_csv(scores, profiles));

    manifest.output(artifact::kCredits);
    manifest.output(artifact::kPlayerScores);
    manifest.write();
}

void run_train_transfer(const PipelineConfig& cfg) {
    const std::string scores_path = require_artifact(cfg, artifact::kPlayerScores, "score-players");
    const std::string players_path = require_artifact(cfg, artifact::kPlayers, "ingest");
    const std::string matches_path = require_artifact(cfg, artifact::kMatches, "ingest");
    if (cfg.valuations_csv.empty()) throw std::runtime_error("valuations_csv is not set");
    if (cfg.players_csv.empty()) throw std::runtime_error("players_csv is not set");
    ManifestWriter manifest(cfg, "train-transfer");
    manifest.input(artifact::kPlayerScores, scores_path);
    manifest.input(artifact::kPlayers, players_path);
    manifest.input(artifact::kMatches, matches_path);
    manifest.input("valuations_csv", cfg.valuations_csv);
    manifest.input("players_csv", cfg.players_csv);

    const std::vector<PlayerScore> scores = read_player_scores_csv(scores_path);
    const std::vector<PlayerProfile> profiles = read_profiles_artifact(players_path);
    const std::vector<MatchInfo> matches = read_matches_artifact(matches_path);
    const ValuationLoad valuations = load_valuations(cfg.valuations_csv);
    const MetaLoad meta = load_player_meta(cfg.players_csv);

    const TransferWindow window = resolve_window(cfg, matches);
    TransferBuildReport build;
    std::vector<TransferRowDetail> details;
    const Dataset dataset = build_transfer_dataset(scores, profiles, valuations.by_player,
                                                   meta.by_player, window, &build, &details);
    if (dataset.n_rows() == 0) {
        throw std::runtime_error("no players have valuation records bracketing the window");
    }

    std::string csv =
        "player_id,name,player_score,position_group,evaluation_time,time_lag,age,age_squared,"
        "target_change_millions\n";
    for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
        csv += dataset.row_id(r) + "," + csv_escape(details[r].name) + "," +
               fmt_double(dataset.value(r, 0)) + "," + dataset.level_of(r, 1) + "," +
               fmt_double(dataset.value(r, 2)) + "," + fmt_double(dataset.value(r, 3)) + "," +
               fmt_double(dataset.value(r, 4)) + "," + fmt_double(dataset.value(r, 5)) + "," +
               fmt_double(dataset.target(r)) + "\n";
    }
    write_file(out_path(cfg, artifact::kTransferDataset), csv);

    const auto [train, test] =
        stratified_split(dataset, cfg.test_fraction, Rng::derive(cfg.seed, "transfer_split"));
    const std::uint64_t train_seed = Rng::derive(cfg.seed, "transfer_train");

    if (cfg.transfer_grids.find(cfg.transfer_final) == cfg.transfer_grids.end()) {
        throw std::runtime_error("no hyperparameter grid for final algorithm " +
                                 cfg.transfer_final);
    }
    ModelArtifact final_model;
    nlohmann::json per_algorithm;
    for (const auto& [name, grid] : cfg.transfer_grids) {
        const ModelArtifact m =
            train_regressor(algorithm_from_name(name), train, grid, train_seed, cfg.jobs);
        const RegressionReport rep = evaluate_regressor(m, test);
        nlohmann::json entry = rep.to_json();
        entry["training"] = m.training_metrics;
        per_algorithm[name] = std::move(entry);
        if (name == cfg.transfer_final) final_model = m;
    }

    write_json_file(out_path(cfg, artifact::kTransferModel), final_model.to_json());
    write_json_file(out_path(cfg, artifact::kTransferReport),
                    nlohmann::json{{"build", build.to_json()},
                                   {"window",
                                    {{"start", window.start.to_string()},
                                     {"end", window.end.to_string()}}},
                                   {"test_fraction", cfg.test_fraction},
                                   {"algorithms", per_algorithm},
                                   {"final", cfg.transfer_final}});

    manifest.output(artifact::kTransferDataset);
    manifest.output(artifact::kTransferModel);
    manifest.output(artifact::kTransferReport);
    manifest.write();
}

void run_predict(const PipelineConfig& cfg) {
    const std::string model_path = require_artifact(cfg, artifact::kTransferModel,
                                                    "train-transfer");
    const std::string data_path = require_artifact(cfg, artifact::kTransferDataset,
                                                   "train-transfer");
    ManifestWriter manifest(cfg, "predict");
    manifest.input(artifact::kTransferModel, model_path);
    manifest.input(artifact::kTransferDataset, data_path);

    const ModelArtifact model = read_model_artifact(model_path);
    const std::vector<TransferArtifactRow> rows = read_transfer_dataset_csv(data_path);

    std::string csv = "player_id,name,predicted_change_millions,realized_change_millions\n";
    for (const TransferArtifactRow& r : rows) {
        const double predicted = predict_fee_change(model, r.features);
        csv += std::to_string(r.player_id) + "," + csv_escape(r.name) + "," +
               fmt_double(predicted) + "," + fmt_double(r.target) + "\n";
    }
    write_file(out_path(cfg, artifact::kPredictions), csv);

    manifest.output(artifact::kPredictions);
    manifest.write();
}

void run_team(const PipelineConfig& cfg) {
    const std::string scores_path = require_artifact(cfg, artifact::kPlayerScores, "score-players");
    const std::string players_path = require_artifact(cfg, artifact::kPlayers, "ingest");
    ManifestWriter manifest(cfg, "team");
    manifest.input(artifact::kPlayerScores, scores_path);
    manifest.input(artifact::kPlayers, players_path);

    const std::vector<PlayerScore> scores = read_player_scores_csv(scores_path);
    const std::vector<PlayerProfile> profiles = read_profiles_artifact(players_path);

    const SymbolicTeam team =
        select_symbolic_team(scores, profiles, cfg.min_games, cfg.team_allowlist);
    write_json_file(out_path(cfg, artifact::kSymbolicTeamJson), team.to_json());
    write_file(out_path(cfg, artifact::kSymbolicTeamMd), team.to_markdown());

    manifest.output(artifact::kSymbolicTeamJson);
    manifest.output(artifact::kSymbolicTeamMd);
    manifest.write();
}

void run_report_all(const PipelineConfig& cfg) {
    run_ingest(cfg);
    run_chains(cfg);
    run_train_xg(cfg);
    run_train_scorer(cfg);
    run_score_players(cfg);
    run_train_transfer(cfg);
    run_predict(cfg);
    run_team(cfg);

    ManifestWriter manifest(cfg, "report");
    manifest.input(artifact::kPlayerScores, out_path(cfg, artifact::kPlayerScores));
    manifest.input(artifact::kPlayers, out_path(cfg, artifact::kPlayers));
    manifest.input(artifact::kTransferModel, out_path(cfg, artifact::kTransferModel));
    manifest.input(artifact::kTransferDataset, out_path(cfg, artifact::kTransferDataset));

    const std::vector<PlayerScore> scores =
        read_player_scores_csv(out_path(cfg, artifact::kPlayerScores));
    const std::vector<PlayerProfile> profiles =
        read_profiles_artifact(out_path(cfg, artifact::kPlayers));
    const ModelArtifact model = read_model_artifact(out_path(cfg, artifact::kTransferModel));
    const std::vector<TransferArtifactRow> rows =
        read_transfer_dataset_csv(out_path(cfg, artifact::kTransferDataset));
    const Dataset dataset = transfer_dataset_from_rows(rows);

    const std::vector<PlayerReportRow> report =
        player_report(cfg.report_players, scores, profiles, model, dataset, {});
    write_file(out_path(cfg, artifact::kPlayerReport), player_report_csv(report));

    manifest.output(artifact::kPlayerReport);
    manifest.write();
}

}  // namespace chainscore
