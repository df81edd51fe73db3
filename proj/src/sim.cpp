#include "chainscore/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainscore/geometry.hpp"
#include "chainscore/ingest.hpp"
#include "chainscore/util/dates.hpp"
#include "chainscore/util/io.hpp"
#include "chainscore/util/rng.hpp"

namespace chainscore {

namespace {

constexpr int kFirstTeamId = 901;
constexpr int kFirstMatchId = 3790001;
constexpr long long kValuationIdBase = 200000;

const char* const kTeams[24] = {
    "Italy",       "England", "Spain",   "Denmark", "Belgium", "Czech Republic",
    "Switzerland", "Ukraine", "Austria", "Croatia", "France",  "Germany",
    "Netherlands", "Portugal", "Sweden", "Wales",   "Finland", "Hungary",
    "North Macedonia", "Poland", "Russia", "Scotland", "Slovakia", "Turkey",
};

// Group-stage pots, indices into kTeams.
const int kGroups[6][4] = {
    {0, 6, 23, 15},   // Italy, Switzerland, Turkey, Wales
    {4, 3, 16, 20},   // Belgium, Denmark, Finland, Russia
    {8, 12, 18, 7},   // Austria, Netherlands, North Macedonia, Ukraine
    {9, 5, 1, 21},    // Croatia, Czech Republic, England, Scotland
    {19, 22, 2, 14},  // Poland, Slovakia, Spain, Sweden
    {10, 11, 17, 13}, // France, Germany, Hungary, Portugal
};

const char* const kSlotPositions[16] = {
    "Goalkeeper",
    "Right Back",
    "Right Center Back",
    "Left Center Back",
    "Left Back",
    "Center Defensive Midfield",
    "Right Center Midfield",
    "Left Center Midfield",
    "Right Wing",
    "Center Forward",
    "Left Wing",
    "Goalkeeper",
    "Center Back",
    "Center Midfield",
    "Right Center Forward",
    "Left Center Forward",
};

struct SimPlayer {
    int id = 0;
    std::string sb_name;   // lineup player_name
    std::string nickname;  // lineup player_nickname, empty -> null
    std::string val_name;  // players.csv spelling, empty -> absent from the csv
    int team_id = 0;
    std::string team_name;
    std::string position;
    PositionGroup group = PositionGroup::Midfielder;
    int slot = 0;
    double skill = 0.0;
    Date dob;
    long long val_id = 0;
    double delta_millions = 0.0;
    long long v0_eur = 0;
    bool duplicate_val_row = false;  // a second csv identity shares this name
};

struct SimTeam {
    int team_id = 0;
    std::string name;
    std::vector<SimPlayer> players;  // 16, by slot
};

// Hand-placed players whose market-value swings the generated tournament is
// built to explain; the rest of the rosters are filled with invented names.
struct SpecialSpec {
    const char* team;
    int slot;
    const char* sb_name;
    const char* nickname;
    const char* val_name;
    const char* position;  // nullptr -> the slot's default
    double skill;
    const char* dob;
    double delta_millions;
    double v0_millions;
};

const SpecialSpec kSpecials[] = {
    {"Italy", 9, "Andrea Belotti", "", "Andrea Belotti", nullptr, -0.55, "1993-12-20", -7.0, 30.0},
    {"Italy", 5, "Jorge Luiz Frello Filho", "Jorginho", "Jorginho", nullptr, 0.60, "1991-12-20",
     5.0, 40.0},
    {"Denmark", 7, "Mikkel Damsgaard", "", "Mikkel Damsgaard", "Left Attacking Midfield", 0.75,
     "2000-07-03", 7.0, 10.0},
    {"Denmark", 4, "Joakim Mæhle", "", "Joakim Maehle", "Left Wing Back", 0.65, "1997-05-20",
     6.0, 12.0},
    {"Czech Republic", 2, "Ondřej Čelůstka", "", "Ondrej Celustka", nullptr, -0.08,
     "1985-06-15", -0.05, 2.5},
    {"Czech Republic", 9, "Patrik Schick", "", "Patrik Schick", nullptr, 0.70, "1996-01-24", 5.0,
     17.0},
    // Linking edge cases: a spelling drift and a name collision.
    {"Sweden", 13, "Erik Holm", "", "Eric Holm", nullptr, 0.10, "1995-03-11", 1.2, 5.0},
    {"Wales", 13, "Luca Marino", "", "Luca Marino", nullptr, 0.05, "1994-09-02", 0.8, 4.0},
};

const char* const kFirstNames[] = {
    "Dario", "Milan",  "Anton", "Petr",   "Lukas",  "Marco",  "Jonas", "Felix",
    "Oscar", "Henrik", "Pavel", "Stefan", "Tomas",  "Viktor", "Emil",  "Robin",
    "Simon", "Daniel", "Martin", "Alexi", "Noel",   "Kasper", "Joel",  "Adam",
};
const char* const kSurStart[] = {"Var", "Bel", "Kor",  "Mal",  "Sor", "Tav", "Rud",
                                 "Lan", "Pet", "Vor",  "Gal",  "Hol", "Mar", "Kel",
                                 "Dor", "Sal", "Bran", "Stur", "Vel", "Nor"};
const char* const kSurMid[] = {"an", "el", "in", "ov", "ar", "os", "ik", "ut", "en", "al"};
const char* const kSurEnd[] = {"ski", "sen", "ov", "ic", "er", "o", "a", "us", "i", "ek"};

std::string kaggle_position(PositionGroup g) {
    switch (g) {
        case PositionGroup::Goalkeeper: return "Goalkeeper";
        case PositionGroup::Defender: return "Defender";
        case PositionGroup::Midfielder: return "Midfield";
        case PositionGroup::Striker: return "Attack";
    }
    return "Midfield";
}

Date parse_date_or_die(const char* text) {
    Date d;
    if (!parse_date(text, d)) throw std::runtime_error(std::string("bad sim date: ") + text);
    return d;
}

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

long long round_to(double eur, long long step) {
    return std::llround(eur / static_cast<double>(step)) * step;
}

std::vector<SimTeam> build_rosters(std::uint64_t seed) {
    Rng name_rng(Rng::derive(seed, "names"));
    Rng skill_rng(Rng::derive(seed, "skills"));
    Rng dob_rng(Rng::derive(seed, "dobs"));
    Rng value_rng(Rng::derive(seed, "values"));
    const Date window_end = Date{2021, 7, 11};

    std::map<std::pair<std::string, int>, const SpecialSpec*> specials;
    std::set<std::string> used_names;
    for (const SpecialSpec& s : kSpecials) {
        specials[{s.team, s.slot}] = &s;
        used_names.insert(normalize_name(s.sb_name));
    }

    std::vector<SimTeam> teams;
    for (int t = 0; t < 24; ++t) {
        SimTeam team;
        team.team_id = kFirstTeamId + t;
        team.name = kTeams[t];
        for (int slot = 0; slot < 16; ++slot) {
            SimPlayer p;
            p.id = team.team_id * 100 + slot;
            p.val_id = kValuationIdBase + p.id;
            p.team_id = team.team_id;
            p.team_name = team.name;
            p.slot = slot;
            p.position = kSlotPositions[slot];

            const auto it = specials.find({team.name, slot});
            if (it != specials.end()) {
                const SpecialSpec& s = *it->second;
                p.sb_name = s.sb_name;
                p.nickname = s.nickname;
                p.val_name = s.val_name;
                if (s.position) p.position = s.position;
                p.skill = s.skill;
                p.dob = parse_date_or_die(s.dob);
                p.delta_millions = s.delta_millions;
                p.v0_eur = round_to(s.v0_millions * 1e6, 50000);
                p.duplicate_val_row = std::string(s.sb_name) == "Luca Marino";
            } else {
                for (;;) {
                    std::string name = std::string(kFirstNames[name_rng.uniform(24)]) + " " +
                                       kSurStart[name_rng.uniform(20)] +
                                       kSurMid[name_rng.uniform(10)] +
                                       kSurEnd[name_rng.uniform(10)];
                    if (used_names.insert(normalize_name(name)).second) {
                        p.sb_name = name;
                        break;
                    }
                }
                p.val_name = p.sb_name;
                p.skill = clamp(skill_rng.normal() * 0.33, -0.75, 0.8);
                p.dob = Date{1989 + static_cast<int>(dob_rng.uniform(13)),
                             1 + static_cast<int>(dob_rng.uniform(12)),
                             1 + static_cast<int>(dob_rng.uniform(28))};
                p.v0_eur = round_to((3.0 + 32.0 * value_rng.real()) * 1e6, 50000);
                const int age = whole_years_between(p.dob, window_end);
                double delta = 6.0 * p.skill - 0.35 * (age - 26) + value_rng.normal() * 1.1;
                delta = clamp(delta, -12.0, 15.0);
                // Market values never go negative.
                delta = std::max(delta, -(static_cast<double>(p.v0_eur) - 5e5) / 1e6);
                p.delta_millions = std::round(delta * 100.0) / 100.0;
            }
            p.group = position_group_of(p.position);
            team.players.push_back(std::move(p));
        }
        teams.push_back(std::move(team));
    }
    return teams;
}

struct Fixture {
    int match_id = 0;
    Date date;
    int home = 0;  // index into the team vector
    int away = 0;
};

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> fx;
    const int pairings[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    for (int md = 0; md < 3; ++md) {
        for (int g = 0; g < 6; ++g) {
            for (int m = 0; m < 2; ++m) {
                Fixture f;
                f.home = kGroups[g][pairings[md][m][0]];
                f.away = kGroups[g][pairings[md][m][1]];
                fx.push_back(f);
            }
        }
    }
    for (std::size_t i = 0; i < fx.size(); ++i) {
        fx[i].date = Date{2021, 6, 11 + static_cast<int>(i) / 3};
    }

    const auto team_index = [](const char* name) {
        for (int i = 0; i < 24; ++i) {
            if (std::string(kTeams[i]) == name) return i;
        }
        throw std::runtime_error(std::string("unknown sim team: ") + name);
    };
    struct KnockTie {
        const char* home;
        const char* away;
        int month;
        int day;
    };
    const KnockTie knockout[] = {
        {"Wales", "Denmark", 6, 26},        {"Italy", "Austria", 6, 26},
        {"Netherlands", "Czech Republic", 6, 27}, {"Belgium", "Portugal", 6, 27},
        {"Croatia", "Spain", 6, 28},        {"France", "Switzerland", 6, 28},
        {"England", "Germany", 6, 29},      {"Sweden", "Ukraine", 6, 29},
        {"Switzerland", "Spain", 7, 2},     {"Belgium", "Italy", 7, 2},
        {"Czech Republic", "Denmark", 7, 3}, {"Ukraine", "England", 7, 3},
        {"Italy", "Spain", 7, 6},           {"England", "Denmark", 7, 7},
        {"Italy", "England", 7, 11},
    };
    for (const KnockTie& tie : knockout) {
        Fixture f;
        f.home = team_index(tie.home);
        f.away = team_index(tie.away);
        f.date = Date{2021, tie.month, tie.day};
        fx.push_back(f);
    }
    for (std::size_t i = 0; i < fx.size(); ++i) fx[i].match_id = kFirstMatchId + static_cast<int>(i);
    return fx;
}

std::string clock_text(double seconds) {
    const int h = static_cast<int>(seconds / 3600.0);
    const int m = static_cast<int>((seconds - h * 3600.0) / 60.0);
    const double s = seconds - h * 3600.0 - m * 60.0;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%06.3f", h, m, s);
    return buf;
}

struct MatchSim {
    nlohmann::json events = nlohmann::json::array();
    int home_goals = 0;
    int away_goals = 0;
    int shots = 0;
    std::vector<const SimPlayer*> home_used;  // starters + subs fielded
    std::vector<const SimPlayer*> away_used;
};

class MatchGenerator {
public:
    MatchGenerator(const Fixture& fx, const SimTeam& home, const SimTeam& away, Rng rng)
        : fx_(fx), home_(home), away_(away), rng_(rng) {}

    MatchSim run() {
        pick_side(home_, out_.home_used);
        pick_side(away_, out_.away_used);

        const int n_possessions = 84 + static_cast<int>(rng_.uniform(13));
        const int first_half = n_possessions / 2;

        frame_event("Starting XI", 1, 0.0, home_.team_id, 1);
        frame_event("Starting XI", 1, 0.0, away_.team_id, 1);
        frame_event("Half Start", 1, 0.0, home_.team_id, 1);
        frame_event("Half Start", 1, 0.0, away_.team_id, 1);

        for (int p = 0; p < n_possessions; ++p) {
            if (p == first_half) {
                frame_event("Half End", 1, clock_ + 30.0, home_.team_id, possession_);
                frame_event("Half End", 1, clock_ + 30.0, away_.team_id, possession_);
                period_ = 2;
                clock_ = 0.0;
                frame_event("Half Start", 2, 0.0, home_.team_id, possession_ + 1);
                frame_event("Half Start", 2, 0.0, away_.team_id, possession_ + 1);
            }
            ++possession_;
            clock_ += 8.0 + 27.0 * rng_.real();
            simulate_possession();
        }
        frame_event("Half End", 2, clock_ + 30.0, home_.team_id, possession_);
        frame_event("Half End", 2, clock_ + 30.0, away_.team_id, possession_);
        return std::move(out_);
    }

private:
    void pick_side(const SimTeam& team, std::vector<const SimPlayer*>& used) {
        for (int slot = 0; slot < 11; ++slot) used.push_back(&team.players[slot]);
        // Three of the four outfield substitutes come on.
        std::vector<int> bench{12, 13, 14, 15};
        rng_.shuffle(bench);
        bench.resize(3);
        std::sort(bench.begin(), bench.end());
        for (const int slot : bench) used.push_back(&team.players[slot]);
    }

    bool attacking_home() { return rng_.real() < 0.5; }

    const std::vector<const SimPlayer*>& pool(bool home) {
        return home ? out_.home_used : out_.away_used;
    }
    int team_id(bool home) const { return home ? home_.team_id : away_.team_id; }
    const std::string& team_name(bool home) const { return home ? home_.name : away_.name; }

    const SimPlayer* pick_actor(bool home, double x) {
        double p_def = 0.18, p_mid = 0.57;
        if (x < 40.0) {
            p_def = 0.62;
            p_mid = 0.28;
        } else if (x >= 80.0) {
            p_def = 0.10;
            p_mid = 0.35;
        }
        const double r = rng_.real();
        const PositionGroup want = r < p_def             ? PositionGroup::Defender
                                   : r < p_def + p_mid   ? PositionGroup::Midfielder
                                                         : PositionGroup::Striker;
        double total = 0.0;
        std::vector<std::pair<const SimPlayer*, double>> weighted;
        for (const SimPlayer* p : pool(home)) {
            double w = 0.0;
            if (p->group == want) {
                w = 1.0 + p->skill;
            } else if (want == PositionGroup::Defender &&
                       p->group == PositionGroup::Goalkeeper && x < 40.0) {
                w = 0.2;
            }
            if (w > 0.0) {
                weighted.emplace_back(p, w);
                total += w;
            }
        }
        double pickpoint = rng_.real() * total;
        for (const auto& [p, w] : weighted) {
            pickpoint -= w;
            if (pickpoint <= 0.0) return p;
        }
        return weighted.back().first;
    }

    const SimPlayer* random_member(bool home) {
        const auto& ps = pool(home);
        return ps[rng_.uniform(ps.size())];
    }

    nlohmann::json base_event(const char* kind, bool home, const SimPlayer* player, double ts,
                              double duration) {
        nlohmann::json e{{"type", {{"name", kind}}},
                         {"period", period_},
                         {"timestamp", clock_text(ts)},
                         {"possession", possession_},
                         {"play_pattern", {{"name", pattern_}}},
                         {"team", {{"id", team_id(home)}, {"name", team_name(home)}}},
                         {"duration", duration}};
        if (player) e["player"] = {{"id", player->id}, {"name", player->sb_name}};
        return e;
    }

    void frame_event(const char* kind, int period, double ts, int team, int possession) {
        nlohmann::json e{{"type", {{"name", kind}}},
                         {"period", period},
                         {"timestamp", clock_text(ts)},
                         {"possession", possession},
                         {"play_pattern", {{"name", "Regular Play"}}},
                         {"team", {{"id", team}, {"name", team == home_.team_id ? home_.name
                                                                                : away_.name}}}};
        out_.events.push_back(std::move(e));
    }

    void emit(nlohmann::json e) { out_.events.push_back(std::move(e)); }

    void choose_pattern() {
        const double r = rng_.real();
        pattern_ = r < 0.80   ? "Regular Play"
                   : r < 0.90 ? "From Throw In"
                   : r < 0.95 ? "From Free Kick"
                              : "From Counter";
    }

    // One on-ball step. Returns the actor so receipts can name the next one.
    const SimPlayer* buildup_action(bool home, double& x, double& y, double q,
                                    const SimPlayer* receiver_of) {
        const SimPlayer* actor = receiver_of ? receiver_of : pick_actor(home, x);

        // Opposition pressure shows up both as a noise event and as the flag.
        // Scrappy moves draw challenges all the way up; clean ones are clean
        // partly because nobody gets near the carrier.
        bool pressured = false;
        if (rng_.real() < 0.26 - 0.20 * q) {
            pressured = true;
            nlohmann::json pe = base_event("Pressure", !home, random_member(!home), clock_, 0.4);
            pe["location"] = {120.0 - x, 80.0 - y};
            emit(std::move(pe));
            clock_ += 0.3;
        }

        const double r = rng_.real();
        const double pass_cut = 0.70 - 0.20 * q;
        const char* kind = r < pass_cut ? "Pass" : r < 0.90 ? "Carry" : "Dribble";
        double duration;
        double dx;
        if (kind[0] == 'P') {
            duration = 0.8 + rng_.real() * std::max(0.2, 1.4 - q);
            dx = 6.0 + 10.0 * q + rng_.normal() * 1.5;
        } else if (kind[0] == 'C') {
            duration = 1.0 + rng_.real() * std::max(0.2, 2.0 - 1.5 * q);
            dx = 4.0 + 6.0 * q + rng_.normal() * 1.0;
        } else {
            duration = 0.5 + rng_.real();
            dx = 2.0 + rng_.normal() * 0.8;
        }
        if (rng_.real() < 0.06) dx = -std::fabs(dx) * 0.6;
        dx += 3.0 * actor->skill;

        nlohmann::json e = base_event(kind, home, actor, clock_, duration);
        e["location"] = {x, y};
        if (pressured || rng_.real() < 0.14 - 0.10 * q) e["under_pressure"] = true;
        // A sliver of records carry no coordinates, as in the wild.
        if (rng_.real() < 0.005) e.erase("location");
        emit(std::move(e));

        clock_ += duration + 0.2 + 0.8 * rng_.real();
        x = clamp(x + dx, 0.5, 119.5);
        // Well-worked moves funnel toward the middle of the box; aimless ones
        // drift along whatever channel they started in.
        y = clamp(y + (40.0 - y) * (0.08 + 0.22 * q) + rng_.normal() * 3.0, 0.5, 79.5);

        if (kind[0] == 'P') {
            const SimPlayer* receiver = pick_actor(home, x);
            nlohmann::json rec = base_event("Ball Receipt*", home, receiver, clock_, 0.0);
            rec["location"] = {x, y};
            emit(std::move(rec));
            clock_ += 0.1;
            return receiver;
        }
        return nullptr;
    }

    void shot_event(bool home, const SimPlayer* shooter, double x, double y, double q,
                    bool force_miss, bool drop_location) {
        ++out_.shots;
        const bool penalty = !force_miss && rng_.real() < 0.03;
        if (penalty) {
            x = 108.0;
            y = 40.0;
        }
        if (x > 118.0) x = 118.0 - 2.0 * rng_.real();

        const bool pressured = rng_.real() < 0.45 - 0.30 * q;
        // Headed attempts mostly cap off scrappy, low-quality moves.
        const double head_cut = 0.28 - 0.18 * q;
        const double r_body = rng_.real();
        const char* body = r_body < head_cut            ? "Head"
                           : r_body < head_cut + 0.30   ? "Left Foot"
                                                        : "Right Foot";
        const double r_tech = rng_.real();
        const char* technique = r_tech < 0.70   ? "Normal"
                                : r_tech < 0.85 ? "Half Volley"
                                : r_tech < 0.95 ? "Volley"
                                                : "Lob";

        const BallState state{x, y};
        const PitchSpec pitch;
        const double theta = shooting_angle(state, pitch);
        const double dist = goal_distance(state, pitch);
        double z = -1.50 + 2.2 * theta - 0.09 * dist + 0.9 * shooter->skill + 4.5 * (q - 0.5);
        if (pressured) z -= 0.5;
        if (dist < 8.0) z += 0.9;
        if (theta > 1.0) z += 0.4;
        if (body[0] == 'H') z -= 0.7;
        if (r_tech >= 0.85 && r_tech < 0.95) z -= 0.35;
        const double p_goal = penalty ? 0.76 : 1.0 / (1.0 + std::exp(-z));

        const bool goal = !force_miss && rng_.real() < p_goal;
        const char* outcome;
        if (goal) {
            outcome = "Goal";
            if (home) {
                ++out_.home_goals;
            } else {
                ++out_.away_goals;
            }
        } else {
            const double r = rng_.real();
            outcome = r < 0.45 ? "Saved" : r < 0.75 ? "Off T" : r < 0.90 ? "Blocked" : "Wayward";
        }

        nlohmann::json e = base_event("Shot", home, shooter, clock_, 0.3 + 0.7 * rng_.real());
        if (!drop_location) e["location"] = {x, y};
        if (pressured) e["under_pressure"] = true;
        e["shot"] = {{"technique", {{"name", technique}}},
                     {"body_part", {{"name", body}}},
                     {"type", {{"name", penalty ? "Penalty" : "Open Play"}}},
                     {"outcome", {{"name", outcome}}}};
        emit(std::move(e));
        clock_ += 2.0 + 3.0 * rng_.real();
    }

    void breaker_event(bool attacking_side, double x, double y) {
        const double r = rng_.real();
        const char* kind = r < 0.40 ? "Interception" : r < 0.70 ? "Clearance" : "Duel";
        nlohmann::json e =
            base_event(kind, !attacking_side, random_member(!attacking_side), clock_, 0.4);
        e["location"] = {120.0 - x, 80.0 - y};
        if (kind[0] == 'I') {
            e["interception"] = {{"outcome", {{"name", "Won"}}}};
        } else if (kind[0] == 'D') {
            const char* duel_outcome = rng_.real() < 0.7 ? "Won" : "Lost In Play";
            e["duel"] = {{"outcome", {{"name", duel_outcome}}}};
        }
        emit(std::move(e));
        clock_ += 1.0;
    }

    void simulate_possession() {
        const bool home = attacking_home();
        choose_pattern();
        const double r_cat = rng_.real();
        const bool is_shot = r_cat < 0.30;
        const bool is_broken = !is_shot && r_cat < 0.65;
        double q = rng_.real();
        if (is_shot) {
            q = 0.35 + 0.65 * q;
            // Fast breaks catch the defence unsettled, so counters sit at the
            // top of the quality range.
            if (pattern_ == "From Counter") q = 0.5 + 0.5 * q;
        }

        double x = 26.0 + 16.0 * rng_.real();
        double y = 10.0 + 60.0 * rng_.real();
        // Clean looks are earned by sustained moves; hopeful punts go off after
        // a touch or two. Possessions that never produce a shot keep a flat mix.
        const int n = is_shot ? 1 + static_cast<int>(8.0 * q)
                              : 2 + static_cast<int>(rng_.uniform(5));

        const SimPlayer* carried = nullptr;
        for (int i = 0; i < n; ++i) {
            carried = buildup_action(home, x, y, q, carried);
            // A lost opposition duel in the middle of the move: play rolls on.
            if (is_shot && i == n / 2 && rng_.real() < 0.08) {
                nlohmann::json e =
                    base_event("Duel", !home, random_member(!home), clock_, 0.5);
                e["location"] = {120.0 - x, 80.0 - y};
                e["duel"] = {{"outcome", {{"name", "Lost In Play"}}}};
                emit(std::move(e));
                clock_ += 0.5;
            }
        }

        if (is_shot) {
            const SimPlayer* shooter = carried ? carried : pick_actor(home, x);
            const bool rebound = rng_.real() < 0.04;
            const bool drop_location = rng_.real() < 0.01;
            shot_event(home, shooter, x, y, q, /*force_miss=*/rebound || drop_location,
                       drop_location);
            if (rebound) {
                double rx = clamp(x - 4.0 - 6.0 * rng_.real(), 0.5, 119.5);
                double ry = clamp(y + rng_.normal() * 4.0, 0.5, 79.5);
                const int extra = 1 + static_cast<int>(rng_.uniform(2));
                const SimPlayer* again = nullptr;
                for (int i = 0; i < extra; ++i) again = buildup_action(home, rx, ry, q, again);
                const SimPlayer* second = again ? again : pick_actor(home, rx);
                shot_event(home, second, rx, ry, q, false, false);
            }
        } else if (is_broken && rng_.real() < 0.5) {
            breaker_event(home, x, y);
        }
        // Otherwise the move just dies and the next possession starts fresh.
    }

    const Fixture& fx_;
    const SimTeam& home_;
    const SimTeam& away_;
    Rng rng_;
    MatchSim out_;
    int period_ = 1;
    int possession_ = 0;
    double clock_ = 0.0;
    std::string pattern_ = "Regular Play";
};

nlohmann::json lineup_entry(const SimTeam& team, const std::vector<const SimPlayer*>& used) {
    std::set<int> used_ids;
    for (const SimPlayer* p : used) used_ids.insert(p->id);
    nlohmann::json players = nlohmann::json::array();
    for (const SimPlayer& p : team.players) {
        nlohmann::json row{{"player_id", p.id}, {"player_name", p.sb_name}};
        row["player_nickname"] =
            p.nickname.empty() ? nlohmann::json(nullptr) : nlohmann::json(p.nickname);
        nlohmann::json positions = nlohmann::json::array();
        if (used_ids.count(p.id) > 0) {
            positions.push_back({{"position", p.position}, {"from", p.slot < 11 ? "00:00" : "60:00"}});
        }
        row["positions"] = std::move(positions);
        players.push_back(std::move(row));
    }
    return nlohmann::json{{"team_id", team.team_id}, {"team_name", team.name},
                          {"lineup", std::move(players)}};
}

}  // namespace

SimSummary generate_corpus(const std::string& root, const SimOptions& options) {
    const std::vector<SimTeam> teams = build_rosters(options.seed);
    const std::vector<Fixture> fixtures = build_fixtures();

    ensure_dir(root);
    ensure_dir(path_join(root, "matches"));
    ensure_dir(path_join(root, "matches/" + std::to_string(options.competition_id)));
    ensure_dir(path_join(root, "events"));
    ensure_dir(path_join(root, "lineups"));

    SimSummary summary;
    summary.matches = static_cast<int>(fixtures.size());
    summary.players = 24 * 16;

    nlohmann::json index = nlohmann::json::array();
    for (const Fixture& fx : fixtures) {
        const SimTeam& home = teams[fx.home];
        const SimTeam& away = teams[fx.away];
        MatchGenerator gen(fx, home, away,
                           Rng(Rng::derive(options.seed, "match_" + std::to_string(fx.match_id))));
        MatchSim sim = gen.run();

        summary.events += static_cast<int>(sim.events.size());
        summary.shots += sim.shots;
        summary.goals += sim.home_goals + sim.away_goals;

        write_file(path_join(root, "events/" + std::to_string(fx.match_id) + ".json"),
                   sim.events.dump());
        const nlohmann::json lineups = nlohmann::json::array(
            {lineup_entry(home, sim.home_used), lineup_entry(away, sim.away_used)});
        write_file(path_join(root, "lineups/" + std::to_string(fx.match_id) + ".json"),
                   lineups.dump());

        index.push_back(nlohmann::json{
            {"match_id", fx.match_id},
            {"match_date", fx.date.to_string()},
            {"kick_off", "21:00:00.000"},
            {"competition",
             {{"competition_id", options.competition_id},
              {"country_name", "Europe"},
              {"competition_name", "UEFA Euro"}}},
            {"season", {{"season_id", options.season_id}, {"season_name", "2020"}}},
            {"home_team", {{"home_team_id", home.team_id}, {"home_team_name", home.name}}},
            {"away_team", {{"away_team_id", away.team_id}, {"away_team_name", away.name}}},
            {"home_score", sim.home_goals},
            {"away_score", sim.away_goals}});
    }
    write_file(path_join(root, "matches/" + std::to_string(options.competition_id) + "/" +
                                   std::to_string(options.season_id) + ".json"),
               index.dump());

    // Market-value tables. Every player gets a pair of records bracketing the
    // tournament plus two decoys outside the window; the post-tournament
    // record realizes the planted value change.
    struct CsvPlayer {
        long long id;
        std::string name;
        Date dob;
        PositionGroup group;
        long long v0;
        double delta;
    };
    std::vector<CsvPlayer> csv_players;
    for (const SimTeam& team : teams) {
        for (const SimPlayer& p : team.players) {
            if (p.val_name.empty()) continue;
            csv_players.push_back({p.val_id, p.val_name, p.dob, p.group, p.v0_eur,
                                   p.delta_millions});
            if (p.duplicate_val_row) {
                csv_players.push_back({290001, p.val_name, Date{1992, 4, 18}, p.group, 3500000,
                                       0.4});
            }
        }
    }
    csv_players.push_back({290002, "Teo Brandalen", Date{1994, 2, 9}, PositionGroup::Midfielder,
                           6000000, 0.9});
    csv_players.push_back({290003, "Ruben Skovgaard", Date{1990, 11, 23}, PositionGroup::Defender,
                           4500000, -0.6});
    csv_players.push_back({290004, "Anders Vollan", Date{1998, 5, 30}, PositionGroup::Striker,
                           9000000, 2.1});
    std::sort(csv_players.begin(), csv_players.end(),
              [](const CsvPlayer& a, const CsvPlayer& b) { return a.id < b.id; });

    std::string players_csv = "player_id,name,date_of_birth,position\n";
    std::string valuations_csv = "player_id,date,market_value_in_eur\n";
    for (const CsvPlayer& p : csv_players) {
        players_csv += std::to_string(p.id) + "," + p.name + "," + p.dob.to_string() + "," +
                       kaggle_position(p.group) + "\n";
        const long long after = p.v0 + std::llround(p.delta * 1e6);
        const long long rows[4][2] = {{p.v0 / 20 * 19, 0},  // pre-season decoy
                                      {p.v0, 1},
                                      {after, 2},
                                      {after, 3}};
        const char* dates[4] = {"2020-12-01", "2021-05-15", "2021-08-15", "2021-10-01"};
        for (int i = 0; i < 4; ++i) {
            valuations_csv += std::to_string(p.id) + "," + dates[i] + "," +
                              std::to_string(rows[i][0]) + "\n";
        }
    }
    write_file(path_join(root, "players.csv"), players_csv);
    write_file(path_join(root, "player_valuations.csv"), valuations_csv);

    return summary;
}

}  // namespace chainscore
