#include "chainscore/valuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace chainscore {

double RoleWeightTable::multiplier(PositionGroup role, Zone zone) const {
    if (role == PositionGroup::Goalkeeper) role = PositionGroup::Defender;
    switch (role) {
        case PositionGroup::Defender:
            switch (zone) {
                case Zone::Defending: return 1.0;
                case Zone::Midfield: return 1.5;
                case Zone::Attacking: return 2.0;
            }
            break;
        case PositionGroup::Midfielder:
            switch (zone) {
                case Zone::Defending: return 1.0;
                case Zone::Midfield: return 1.0;
                case Zone::Attacking: return 1.5;
            }
            break;
        default:
            break;
    }
    return 1.0;  // Striker: no bonus anywhere
}

double action_delta(double p_next, double p_curr) { return p_next - p_curr; }

double final_action_credit(double c_xg, bool scored) { return scored ? 1.0 - c_xg : -c_xg; }

nlohmann::json ActionCredit::to_json() const {
    return {{"match_id", match_id},
            {"chain_id", chain_id},
            {"k", k},
            {"event_index", event_index},
            {"player_id", player_id},
            {"is_final", is_final},
            {"raw_delta", raw_delta},
            {"zone", zone_name(zone)},
            {"multiplier", multiplier},
            {"weighted_credit", weighted_credit}};
}

ActionCredit ActionCredit::from_json(const nlohmann::json& j) {
    ActionCredit c;
    c.match_id = j.at("match_id").get<int>();
    c.chain_id = j.at("chain_id").get<int>();
    c.k = j.at("k").get<int>();
    c.event_index = j.at("event_index").get<int>();
    c.player_id = j.at("player_id").get<int>();
    c.is_final = j.at("is_final").get<bool>();
    c.raw_delta = j.at("raw_delta").get<double>();
    const std::string zone = j.at("zone").get<std::string>();
    if (zone == "Defending") {
        c.zone = Zone::Defending;
    } else if (zone == "Midfield") {
        c.zone = Zone::Midfield;
    } else if (zone == "Attacking") {
        c.zone = Zone::Attacking;
    } else {
        throw std::runtime_error("unknown zone: " + zone);
    }
    c.multiplier = j.at("multiplier").get<double>();
    c.weighted_credit = j.at("weighted_credit").get<double>();
    return c;
}

namespace {

PositionGroup role_of(const std::map<int, PositionGroup>& roles, int player_id) {
    const auto it = roles.find(player_id);
    if (it == roles.end()) {
        throw std::runtime_error("no role for player " + std::to_string(player_id));
    }
    return it->second;
}

ActionCredit weighted(ActionCredit credit, const std::map<int, PositionGroup>& roles,
                      const RoleWeightTable& weights) {
    const PositionGroup role = role_of(roles, credit.player_id);
    credit.multiplier = credit.raw_delta > 0.0 ? weights.multiplier(role, credit.zone) : 1.0;
    credit.weighted_credit = credit.raw_delta * credit.multiplier;
    return credit;
}

}  // namespace

std::vector<ActionCredit> score_chain(const PossessionChain& chain,
                                      const ModelArtifact& scorer_model,
                                      const ModelArtifact& xg_model,
                                      const std::map<int, PositionGroup>& roles,
                                      const RoleWeightTable& weights, const PitchSpec& pitch,
                                      const ValuationOptions& options) {
    const int K = static_cast<int>(chain.actions.size());
    const ChainAction& shot_action = chain.shot_action();
    const double c_xg = xg_score(xg_model, shot_action, chain.shot, pitch, options.xg);

    // Scoring probability at each state: the scorer model for s_1..s_{K-1},
    // the xG probability at the shot state s_K (the model seam).
    std::vector<double> p(static_cast<std::size_t>(K) + 1, 0.0);
    for (int k = 1; k < K; ++k) p[k] = score_state(scorer_model, chain, k, options.scorer);
    p[K] = c_xg;

    std::vector<ActionCredit> credits;
    credits.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k < K; ++k) {
        const ChainAction& action = chain.actions[static_cast<std::size_t>(k - 1)];
        if (options.suppress_shooter_delta && k == K - 1 &&
            action.player_id == shot_action.player_id) {
            continue;
        }
        ActionCredit credit;
        credit.match_id = chain.match_id;
        credit.chain_id = chain.chain_id;
        credit.k = k;
        credit.event_index = action.event_index;
        credit.player_id = action.player_id;
        credit.raw_delta = action_delta(p[k + 1], p[k]);
        credit.zone = zone_of(action.start_state, pitch);
        credits.push_back(weighted(credit, roles, weights));
    }

    ActionCredit shot_credit;
    shot_credit.match_id = chain.match_id;
    shot_credit.chain_id = chain.chain_id;
    shot_credit.k = K;
    shot_credit.event_index = shot_action.event_index;
    shot_credit.player_id = shot_action.player_id;
    shot_credit.is_final = true;
    shot_credit.raw_delta = final_action_credit(c_xg, chain.ends_in_goal);
    shot_credit.zone = zone_of(shot_action.start_state, pitch);
    credits.push_back(weighted(shot_credit, roles, weights));
    return credits;
}

std::vector<PlayerScore> aggregate_scores(const std::vector<ActionCredit>& credits,
                                          const std::map<int, int>& appearances) {
    std::vector<const ActionCredit*> ordered;
    ordered.reserve(credits.size());
    for (const ActionCredit& c : credits) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(), [](const ActionCredit* a, const ActionCredit* b) {
        if (a->player_id != b->player_id) return a->player_id < b->player_id;
        if (a->match_id != b->match_id) return a->match_id < b->match_id;
        if (a->chain_id != b->chain_id) return a->chain_id < b->chain_id;
        return a->k < b->k;
    });

    std::vector<PlayerScore> out;
    for (const ActionCredit* c : ordered) {
        if (out.empty() || out.back().player_id != c->player_id) {
            const auto it = appearances.find(c->player_id);
            if (it == appearances.end()) {
                throw std::runtime_error("credited player " + std::to_string(c->player_id) +
                                         " has no appearance count");
            }
            PlayerScore score;
            score.player_id = c->player_id;
            score.games_played = it->second;
            out.push_back(std::move(score));
        }
        PlayerScore& score = out.back();
        const std::string chain_key =
            std::to_string(c->match_id) + ":" + std::to_string(c->chain_id);
        score.per_chain[chain_key] += c->weighted_credit;
        score.total += c->weighted_credit;
    }
    for (PlayerScore& score : out) {
        score.chains_participated = static_cast<int>(score.per_chain.size());
        score.normalized =
            score.games_played > 0 ? score.total / score.games_played : 0.0;
    }
    return out;
}

}  // namespace chainscore
