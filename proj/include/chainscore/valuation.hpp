#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/chains.hpp"
#include "chainscore/ingest.hpp"
#include "chainscore/model.hpp"
#include "chainscore/scorer.hpp"
#include "chainscore/xg.hpp"

namespace chainscore {

// Positional bonus applied to positive credits only. Goalkeepers take the
// Defender row.
class RoleWeightTable {
public:
    double multiplier(PositionGroup role, Zone zone) const;
};

// p_next - p_curr: the change in scoring probability one action caused.
double action_delta(double p_next, double p_curr);

// Shot credit: +(1 - c_xG) when it scored, -c_xG when it missed.
double final_action_credit(double c_xg, bool scored);

struct ActionCredit {
    int match_id = 0;
    int chain_id = 0;
    int k = 1;
    int event_index = 0;
    int player_id = -1;
    bool is_final = false;  // the shot's xG credit rather than a state delta
    double raw_delta = 0.0;
    Zone zone = Zone::Midfield;
    double multiplier = 1.0;
    double weighted_credit = 0.0;

    nlohmann::json to_json() const;
    static ActionCredit from_json(const nlohmann::json& j);
};

struct ValuationOptions {
    // Drops the k = K-1 state delta when the same player also shoots, to
    // avoid paying the shooter twice across the model seam.
    bool suppress_shooter_delta = false;
    ScorerOptions scorer;
    XgOptions xg;
};

// Per-action credits for one chain. Non-final actions earn state deltas
// (the final transition hands off to the xG probability); the shooter earns
// the xG credit. Positive credits are scaled by the actor's role/zone
// multiplier, zone taken from the action's start state. Throws when an
// acting player has no role entry.
std::vector<ActionCredit> score_chain(const PossessionChain& chain,
                                      const ModelArtifact& scorer_model,
                                      const ModelArtifact& xg_model,
                                      const std::map<int, PositionGroup>& roles,
                                      const RoleWeightTable& weights, const PitchSpec& pitch,
                                      const ValuationOptions& options = {});

struct PlayerScore {
    int player_id = -1;
    int games_played = 0;                    // N_i
    int chains_participated = 0;             // J_i
    std::map<std::string, double> per_chain; // chain key -> C_i(j)
    double total = 0.0;                      // C_i
    double normalized = 0.0;                 // C_i / N_i
};

// Folds credits into per-player totals in (player, match, chain, k) order
// so the floating-point result is reproducible. Every credited player must
// appear in `appearances`.
std::vector<PlayerScore> aggregate_scores(const std::vector<ActionCredit>& credits,
                                          const std::map<int, int>& appearances);

}  // namespace chainscore
