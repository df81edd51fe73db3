#include "chainscore/chains.hpp"

#include <algorithm>
#include <cctype>

namespace chainscore {

nlohmann::json ChainAction::to_json() const {
    return {{"k", k},
            {"event_index", event_index},
            {"player_id", player_id < 0 ? nlohmann::json() : nlohmann::json(player_id)},
            {"player_name", player_name},
            {"type", event_type_name(type)},
            {"start", {start_state.x, start_state.y}},
            {"end", {end_state.x, end_state.y}},
            {"timestamp", timestamp},
            {"duration", duration},
            {"under_pressure", under_pressure},
            {"play_pattern", play_pattern},
            {"period", period}};
}

ChainAction ChainAction::from_json(const nlohmann::json& j) {
    ChainAction a;
    a.k = j.at("k").get<int>();
    a.event_index = j.at("event_index").get<int>();
    a.player_id = j.at("player_id").is_null() ? -1 : j.at("player_id").get<int>();
    a.player_name = j.at("player_name").get<std::string>();
    a.type = event_type_from_name(j.at("type").get<std::string>());
    a.start_state = {j.at("start")[0].get<double>(), j.at("start")[1].get<double>()};
    a.end_state = {j.at("end")[0].get<double>(), j.at("end")[1].get<double>()};
    a.timestamp = j.at("timestamp").get<double>();
    a.duration = j.at("duration").get<double>();
    a.under_pressure = j.at("under_pressure").get<bool>();
    a.play_pattern = j.at("play_pattern").get<std::string>();
    a.period = j.at("period").get<int>();
    return a;
}

nlohmann::json PossessionChain::to_json() const {
    nlohmann::json actions_json = nlohmann::json::array();
    for (const ChainAction& a : actions) actions_json.push_back(a.to_json());
    return {{"match_id", match_id},
            {"chain_id", chain_id},
            {"team_id", team_id},
            {"ends_in_goal", ends_in_goal},
            {"shot",
             {{"technique", shot.technique},
              {"body_part", shot.body_part},
              {"shot_type", shot.shot_type},
              {"is_goal", shot.is_goal}}},
            {"actions", actions_json}};
}

PossessionChain PossessionChain::from_json(const nlohmann::json& j) {
    PossessionChain c;
    c.match_id = j.at("match_id").get<int>();
    c.chain_id = j.at("chain_id").get<int>();
    c.team_id = j.at("team_id").get<int>();
    c.ends_in_goal = j.at("ends_in_goal").get<bool>();
    const auto& s = j.at("shot");
    c.shot = {s.at("technique").get<std::string>(), s.at("body_part").get<std::string>(),
              s.at("shot_type").get<std::string>(), s.at("is_goal").get<bool>()};
    for (const auto& a : j.at("actions")) c.actions.push_back(ChainAction::from_json(a));
    return c;
}

void ChainExtractionReport::merge(const ChainExtractionReport& other) {
    shots_seen += other.shots_seen;
    chains_built += other.chains_built;
    dropped_shots += other.dropped_shots;
    skipped_actions += other.skipped_actions;
}

bool duel_won(const std::string& outcome) {
    std::string folded;
    folded.reserve(outcome.size());
    for (const char c : outcome) {
        folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return folded.find("won") != std::string::npos ||
           folded.find("success") != std::string::npos;
}

namespace {

bool is_on_ball(EventType t) {
    return t == EventType::Pass || t == EventType::Carry || t == EventType::Dribble ||
           t == EventType::Shot;
}

ChainAction make_action(const Event& e) {
    ChainAction a;
    a.event_index = e.event_index;
    a.player_id = e.player_id;
    a.player_name = e.player_name;
    a.type = e.type;
    a.start_state = *e.location;
    a.timestamp = e.timestamp;
    a.duration = e.duration;
    a.under_pressure = e.under_pressure;
    a.play_pattern = e.play_pattern;
    a.period = e.period;
    return a;
}

}  // namespace

std::vector<PossessionChain> extract_chains(const std::vector<Event>& events,
                                            ChainExtractionReport* report) {
    std::vector<PossessionChain> chains;
    std::vector<ChainAction> run;
    int run_team = -1;
    int current_period = -1;
    int current_possession = -1;

    for (const Event& e : events) {
        if (e.period != current_period || e.possession_id != current_possession) {
            run.clear();
            current_period = e.period;
            current_possession = e.possession_id;
        }

        if (is_on_ball(e.type)) {
            if (!run.empty() && e.team_id != run_team) run.clear();
            run_team = e.team_id;

            if (e.type == EventType::Shot) {
                if (report) ++report->shots_seen;
                if (!e.location) {
                    if (report) ++report->dropped_shots;
                    run.clear();
                    continue;
                }
                PossessionChain chain;
                chain.match_id = e.match_id;
                chain.chain_id = static_cast<int>(chains.size());
                chain.team_id = e.team_id;
                chain.actions = run;
                chain.actions.push_back(make_action(e));
                for (std::size_t i = 0; i < chain.actions.size(); ++i) {
                    chain.actions[i].k = static_cast<int>(i) + 1;
                    chain.actions[i].end_state = i + 1 < chain.actions.size()
                                                     ? chain.actions[i + 1].start_state
                                                     : chain.actions[i].start_state;
                }
                chain.shot = *e.shot;
                chain.ends_in_goal = e.shot->is_goal;
                chains.push_back(std::move(chain));
                if (report) ++report->chains_built;
                run.clear();  // the shot closes its chain
            } else {
                if (!e.location) {
                    if (report) ++report->skipped_actions;
                    continue;  // cannot become an Action; absorbed
                }
                run.push_back(make_action(e));
            }
            continue;
        }

        // Opposing off-ball regains cut the run; everything else is absorbed.
        if (!run.empty() && e.team_id != run_team) {
            if (e.type == EventType::Interception || e.type == EventType::Clearance ||
                (e.type == EventType::Duel && duel_won(e.outcome))) {
                run.clear();
            }
        }
    }
    return chains;
}

}  // namespace chainscore
