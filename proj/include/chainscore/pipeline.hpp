#pragma once

#include <string>
#include <vector>

#include "chainscore/config.hpp"
#include "chainscore/team.hpp"

namespace chainscore {

// Canonical artifact names inside the out_dir tree.
namespace artifact {
inline constexpr const char* kEvents = "events.jsonl";
inline constexpr const char* kPlayers = "players.jsonl";
inline constexpr const char* kMatches = "matches.jsonl";
inline constexpr const char* kLinkReport = "link_report.json";
inline constexpr const char* kIngestReport = "ingest_report.json";
inline constexpr const char* kChains = "chains.jsonl";
inline constexpr const char* kChainReport = "chain_report.json";
inline constexpr const char* kXgDataset = "xg_dataset.jsonl";
inline constexpr const char* kXgModel = "xg_model.json";
inline constexpr const char* kXgReport = "xg_report.json";
inline constexpr const char* kXgPrCurve = "xg_pr_curve.csv";
inline constexpr const char* kScorerDataset = "scorer_dataset.jsonl";
inline constexpr const char* kScorerModel = "scorer_model.json";
inline constexpr const char* kScorerReport = "scorer_report.json";
inline constexpr const char* kScorerPrCurve = "scorer_pr_curve.csv";
inline constexpr const char* kCredits = "credits.jsonl";
inline constexpr const char* kPlayerScores = "player_scores.csv";
inline constexpr const char* kTransferDataset = "transfer_dataset.csv";
inline constexpr const char* kTransferModel = "transfer_model.json";
inline constexpr const char* kTransferReport = "transfer_report.json";
inline constexpr const char* kPredictions = "predictions.csv";
inline constexpr const char* kSymbolicTeamJson = "symbolic_team.json";
inline constexpr const char* kSymbolicTeamMd = "symbolic_team.md";
inline constexpr const char* kPlayerReport = "player_report.csv";
}  // namespace artifact

// Each stage reads its upstream artifacts from cfg.out_dir, writes its own,
// and drops a manifest_<stage>.json recording input/output content hashes,
// the config hash, and the seed. Missing upstream artifacts raise an error
// naming the producing command.
void run_ingest(const PipelineConfig& cfg);
void run_chains(const PipelineConfig& cfg);
void run_train_xg(const PipelineConfig& cfg);
void run_train_scorer(const PipelineConfig& cfg);
void run_score_players(const PipelineConfig& cfg);
void run_train_transfer(const PipelineConfig& cfg);
void run_predict(const PipelineConfig& cfg);
void run_team(const PipelineConfig& cfg);
void run_report_all(const PipelineConfig& cfg);

// Shared CSV codecs for the score artifacts.
std::string player_scores_csv(const std::vector<PlayerScore>& scores,
                              const std::vector<PlayerProfile>& profiles);
std::vector<PlayerScore> read_player_scores_csv(const std::string& path);

}  // namespace chainscore
