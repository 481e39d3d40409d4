#include "canesim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "canesim/perception.hpp"
#include "canesim/rng.hpp"

namespace canesim {

using nlohmann::json;

bool trigger_before(const EventTrigger& a, const EventTrigger& b) noexcept
{
    if (a.kind != b.kind) return a.kind == EventTrigger::Kind::Time;
    if (a.kind == EventTrigger::Kind::Time) return a.time_s < b.time_s;
    return a.step < b.step;
}

namespace {

std::string cell_str(Cell c)
{
    return "[" + std::to_string(c.row) + ", " + std::to_string(c.col) + "]";
}

[[noreturn]] void invalid(const std::string& what)
{
    throw ScenarioValidationError("invalid scenario: " + what);
}

} // namespace

void Scenario::validate() const
{
    GridMap grid(1, 1);
    try {
        grid = map.make_grid();
    } catch (const std::invalid_argument& e) {
        invalid(std::string("map dimensions: ") + e.what());
    }
    if (seats.empty()) invalid("at least one seat is required");
    if (groups.size() > static_cast<std::size_t>(kMaxGroups))
        invalid("scenario declares " + std::to_string(groups.size()) +
                " human groups; at most 2 groups are supported");

    std::size_t people = 0;
    std::set<std::string> group_ids;
    for (const HumanGroup& g : groups) {
        if (g.member_cells.empty()) invalid("group '" + g.group_id + "' has no members");
        if (!group_ids.insert(g.group_id).second) invalid("duplicate group id '" + g.group_id + "'");
        people += g.member_cells.size();
    }
    if (people > static_cast<std::size_t>(kMaxPeople))
        invalid("groups hold " + std::to_string(people) +
                " people in total; at most 13 individuals are supported");

    std::set<Cell> used;
    auto claim = [&](Cell c, const std::string& what) {
        if (!grid.in_bounds(c)) invalid(what + " at " + cell_str(c) + " lies outside the map");
        if (!used.insert(c).second) invalid(what + " at " + cell_str(c) + " overlaps another entity");
    };
    for (Cell c : static_obstacles) claim(c, "static obstacle");
    for (const Seat& s : seats) claim(s.cell, "seat");
    for (const HumanGroup& g : groups)
        for (Cell c : g.member_cells) claim(c, "member of group '" + g.group_id + "'");
    if (!grid.in_bounds(start_pose.cell)) invalid("start cell " + cell_str(start_pose.cell) + " lies outside the map");
    if (used.count(start_pose.cell)) invalid("start cell " + cell_str(start_pose.cell) + " is not free");

    for (std::size_t i = 0; i < events.size(); ++i) {
        const TimedEvent& e = events[i];
        if (e.trigger.kind == EventTrigger::Kind::Time && !(e.trigger.time_s >= 0.0))
            invalid("event " + std::to_string(i) + " has a negative trigger time");
        if (e.trigger.kind == EventTrigger::Kind::Step && e.trigger.step < 0)
            invalid("event " + std::to_string(i) + " has a negative trigger step");
        if (i > 0 && trigger_before(e.trigger, events[i - 1].trigger))
            invalid("events are not sorted by trigger (event " + std::to_string(i) + ")");
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, SeatBecomesOccupied>) {
                    if (a.seat_index < 0 || static_cast<std::size_t>(a.seat_index) >= seats.size())
                        invalid("event " + std::to_string(i) + " references missing seat " +
                                std::to_string(a.seat_index));
                } else {
                    if (!group_ids.count(a.group_id))
                        invalid("event " + std::to_string(i) + " references missing group '" +
                                a.group_id + "'");
                }
            },
            e.action);
    }
}

GridMap Scenario::ground_truth_map() const
{
    GridMap grid = map.make_grid();
    for (Cell c : static_obstacles) grid.set_state(c, CellState::StaticObstacle);
    for (const Seat& s : seats)
        grid.set_state(s.cell, s.initially_occupied ? CellState::SeatOccupied : CellState::SeatVacant);
    for (const HumanGroup& g : groups)
        for (Cell c : g.member_cells) grid.set_state(c, CellState::Human);
    return grid;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json cell_json(Cell c) { return json::array({c.row, c.col}); }

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const json& node() const { return j_; }
    const std::string& path() const { return path_; }

    Reader at(const std::string& key) const
    {
        if (!j_.is_object()) fail("expected an object");
        const auto it = j_.find(key);
        if (it == j_.end()) throw ScenarioParseError("scenario field " + path_ + "/" + key + ": missing");
        return Reader(*it, path_ + "/" + key);
    }
    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

    // Rejects keys outside `allowed`.
    void only(std::initializer_list<std::string_view> allowed) const
    {
        if (!j_.is_object()) fail("expected an object");
        for (const auto& [key, value] : j_.items())
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                throw ScenarioParseError("scenario field " + path_ + "/" + key + ": unknown key");
    }

    Reader at(std::size_t i) const { return Reader(j_.at(i), path_ + "/" + std::to_string(i)); }

    const json& array() const
    {
        if (!j_.is_array()) fail("expected an array");
        return j_;
    }
    double number() const
    {
        if (!j_.is_number()) fail("expected a number");
        return j_.get<double>();
    }
    int integer() const
    {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }
    std::uint64_t unsigned_integer() const
    {
        if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<long long>() >= 0))
            fail("expected a non-negative integer");
        return j_.get<std::uint64_t>();
    }
    bool boolean() const
    {
        if (!j_.is_boolean()) fail("expected a boolean");
        return j_.get<bool>();
    }
    std::string string() const
    {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    Cell cell() const
    {
        if (!j_.is_array() || j_.size() != 2 || !j_[0].is_number_integer() || !j_[1].is_number_integer())
            fail("expected a [row, col] pair of integers");
        return {j_[0].get<int>(), j_[1].get<int>()};
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw ScenarioParseError("scenario field " + (path_.empty() ? std::string("/") : path_) + ": " + why);
    }

private:
    const json& j_;
    std::string path_;
};

std::vector<Cell> read_cells(const Reader& r)
{
    std::vector<Cell> out;
    for (std::size_t i = 0; i < r.array().size(); ++i) out.push_back(r.at(i).cell());
    return out;
}

} // namespace

json to_json(const Scenario& s)
{
    json j;
    j["format_version"] = kScenarioFormatVersion;
    j["map"] = {{"width_m", s.map.width_m}, {"length_m", s.map.length_m}, {"resolution_m", s.map.resolution_m}};
    j["start"] = {{"cell", cell_json(s.start_pose.cell)}, {"heading", std::string(to_string(s.start_pose.heading))}};
    j["seed"] = s.seed;

    json obstacles = json::array();
    for (Cell c : s.static_obstacles) obstacles.push_back(cell_json(c));
    j["static_obstacles"] = obstacles;

    json seats = json::array();
    for (const Seat& seat : s.seats) seats.push_back({{"cell", cell_json(seat.cell)}, {"occupied", seat.initially_occupied}});
    j["seats"] = seats;

    json groups = json::array();
    for (const HumanGroup& g : s.groups) {
        json members = json::array();
        for (Cell c : g.member_cells) members.push_back(cell_json(c));
        groups.push_back({{"id", g.group_id}, {"activity", std::string(to_string(g.true_activity))}, {"members", members}});
    }
    j["groups"] = groups;

    json events = json::array();
    for (const TimedEvent& e : s.events) {
        json ev;
        if (e.trigger.kind == EventTrigger::Kind::Time)
            ev["trigger"] = {{"time", e.trigger.time_s}};
        else
            ev["trigger"] = {{"step", e.trigger.step}};
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, SeatBecomesOccupied>)
                    ev["action"] = {{"type", "seat_occupied"}, {"seat", a.seat_index}};
                else if constexpr (std::is_same_v<T, GroupVacates>)
                    ev["action"] = {{"type", "group_vacates"}, {"group", a.group_id}};
                else
                    ev["action"] = {{"type", "group_moves"}, {"group", a.group_id},
                                    {"displacement", json::array({a.drow, a.dcol})}};
            },
            e.action);
        events.push_back(ev);
    }
    j["events"] = events;
    return j;
}

Scenario scenario_from_json(const json& j)
{
    const Reader root(j, "");
    if (!j.is_object()) root.fail("expected a JSON object");
    root.only({"format_version", "map", "start", "seed", "static_obstacles", "seats", "groups", "events"});
    const int version = root.at("format_version").integer();
    if (version != kScenarioFormatVersion)
        root.at("format_version").fail("unsupported version " + std::to_string(version));

    Scenario s;
    const Reader m = root.at("map");
    m.only({"width_m", "length_m", "resolution_m"});
    s.map.width_m = m.at("width_m").number();
    s.map.length_m = m.at("length_m").number();
    s.map.resolution_m = m.has("resolution_m") ? m.at("resolution_m").number() : kDefaultResolution;

    const Reader start = root.at("start");
    start.only({"cell", "heading"});
    s.start_pose.cell = start.at("cell").cell();
    const auto heading = heading_from_string(start.at("heading").string());
    if (!heading) start.at("heading").fail("unknown heading");
    s.start_pose.heading = *heading;
    s.seed = root.has("seed") ? root.at("seed").unsigned_integer() : 0;

    if (root.has("static_obstacles")) s.static_obstacles = read_cells(root.at("static_obstacles"));

    const Reader seats = root.at("seats");
    for (std::size_t i = 0; i < seats.array().size(); ++i) {
        const Reader seat = seats.at(i);
        seat.only({"cell", "occupied"});
        s.seats.push_back({seat.at("cell").cell(), seat.has("occupied") && seat.at("occupied").boolean()});
    }

    if (root.has("groups")) {
        const Reader groups = root.at("groups");
        for (std::size_t i = 0; i < groups.array().size(); ++i) {
            const Reader g = groups.at(i);
            g.only({"id", "activity", "members"});
            HumanGroup group;
            group.group_id = g.at("id").string();
            const auto act = activity_from_string(g.at("activity").string());
            if (!act) g.at("activity").fail("unknown activity (expected walking, talking, queuing or waiting)");
            group.true_activity = *act;
            group.member_cells = read_cells(g.at("members"));
            s.groups.push_back(std::move(group));
        }
    }

    if (root.has("events")) {
        const Reader events = root.at("events");
        for (std::size_t i = 0; i < events.array().size(); ++i) {
            const Reader e = events.at(i);
            e.only({"trigger", "action"});
            TimedEvent ev;
            const Reader trig = e.at("trigger");
            trig.only({"time", "step"});
            if (trig.has("time") == trig.has("step")) trig.fail("exactly one of 'time' or 'step' is required");
            ev.trigger = trig.has("time") ? EventTrigger::at_time(trig.at("time").number())
                                          : EventTrigger::at_step(trig.at("step").integer());
            const Reader act = e.at("action");
            const std::string type = act.at("type").string();
            if (type == "seat_occupied") {
                act.only({"type", "seat"});
                ev.action = SeatBecomesOccupied{act.at("seat").integer()};
            } else if (type == "group_vacates") {
                act.only({"type", "group"});
                ev.action = GroupVacates{act.at("group").string()};
            } else if (type == "group_moves") {
                act.only({"type", "group", "displacement"});
                const Cell d = act.at("displacement").cell();
                ev.action = GroupMoves{act.at("group").string(), d.row, d.col};
            } else {
                act.at("type").fail("unknown action '" + type + "'");
            }
            s.events.push_back(std::move(ev));
        }
    }
    s.validate();
    return s;
}

Scenario parse_scenario(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

void save(const Scenario& s, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file " + path.string());
    out << to_json(s).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing scenario file " + path.string());
}

Scenario load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// Templates and generation

std::string to_string(const SuiteTemplate& t)
{
    switch (t.kind) {
    case SuiteTemplate::Kind::StaticOnly: return "static";
    case SuiteTemplate::Kind::TargetChange: return "target_change";
    case SuiteTemplate::Kind::Social: return "social:" + std::string(to_string(t.activity));
    }
    return "?";
}

SuiteTemplate template_from_string(const std::string& s)
{
    if (s == "static") return SuiteTemplate::static_only();
    if (s == "target_change") return SuiteTemplate::target_change();
    if (s.rfind("social:", 0) == 0) {
        const auto a = activity_from_string(s.substr(7));
        if (a) return SuiteTemplate::social(*a);
    }
    throw std::invalid_argument("unknown suite template '" + s +
                                "' (expected static, target_change or social:<activity>)");
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Member cells for one group; empty when placement failed.
std::vector<Cell> place_group(Rng& rng, const GridMap& grid, ActivityClass activity,
                              const std::set<Cell>& taken)
{
    const int size = uniform_int(rng, 3, 6);
    const int row_lo = 4;
    const int row_hi = grid.rows() - 5;
    auto usable = [&](Cell c) {
        return grid.in_bounds(c) && c.row >= row_lo && c.row <= row_hi && !taken.count(c);
    };

    std::vector<Cell> members;
    if (activity == ActivityClass::Queuing) {
        // Queues line up along the room's long axis.
        const Cell head{uniform_int(rng, row_lo, row_hi - size + 1), uniform_int(rng, 1, grid.cols() - 2)};
        for (int i = 0; i < size; ++i) {
            const Cell c{head.row + i, head.col};
            if (!usable(c)) return {};
            members.push_back(c);
        }
        return members;
    }

    const Cell seed{uniform_int(rng, row_lo + 1, row_hi - 1), uniform_int(rng, 1, grid.cols() - 2)};
    if (!usable(seed)) return {};
    members.push_back(seed);
    std::set<Cell> in(members.begin(), members.end());
    for (int guard = 0; static_cast<int>(members.size()) < size && guard < 200; ++guard) {
        const Cell from = members[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(members.size()) - 1))];
        const Cell c = step(from, static_cast<Heading>(uniform_int(rng, 0, 3)));
        if (!usable(c) || in.count(c)) continue;
        in.insert(c);
        members.push_back(c);
    }
    if (static_cast<int>(members.size()) < size) return {};
    std::sort(members.begin(), members.end());
    return members;
}

std::optional<Scenario> attempt(const SuiteTemplate& tmpl, std::uint64_t seed, Rng& rng)
{
    Scenario s;
    s.seed = seed;
    const GridMap grid = s.map.make_grid();
    const SensorConfig camera;  // default 70 degree, 5 m
    s.start_pose = {{grid.rows() - 1, uniform_int(rng, 1, grid.cols() - 2)}, Heading::North};

    std::set<Cell> taken{s.start_pose.cell};
    auto visible = [&](Cell c) { return in_view(s.start_pose, c, camera, grid.resolution()); };

    const int seat_count = tmpl.kind == SuiteTemplate::Kind::StaticOnly ? uniform_int(rng, 1, 3) : uniform_int(rng, 2, 3);
    for (int guard = 0; static_cast<int>(s.seats.size()) < seat_count && guard < 100; ++guard) {
        const Cell c{uniform_int(rng, 1, 3), uniform_int(rng, 0, grid.cols() - 1)};
        if (taken.count(c) || !visible(c)) continue;
        taken.insert(c);
        s.seats.push_back({c, false});
    }
    if (static_cast<int>(s.seats.size()) < seat_count) return std::nullopt;
    std::sort(s.seats.begin(), s.seats.end(), [](const Seat& a, const Seat& b) { return a.cell < b.cell; });

    if (tmpl.kind == SuiteTemplate::Kind::Social) {
        HumanGroup g{"g1", place_group(rng, grid, tmpl.activity, taken), tmpl.activity};
        if (g.member_cells.empty()) return std::nullopt;
        for (Cell c : g.member_cells) {
            if (!visible(c)) return std::nullopt;
            taken.insert(c);
        }
        if (tmpl.activity == ActivityClass::Walking) {
            // Cross the room sideways at one cell per second until gone.
            const int dir = uniform_int(rng, 0, 1) == 0 ? -1 : 1;
            for (int k = 1; k <= grid.cols() + 6; ++k)
                s.events.push_back({EventTrigger::at_time(kScriptedWalkStart + k), GroupMoves{g.group_id, 0, dir}});
        }
        s.groups.push_back(std::move(g));
    }

    const int obstacle_count = tmpl.kind == SuiteTemplate::Kind::Social ? uniform_int(rng, 2, 6) : uniform_int(rng, 3, 8);
    for (int guard = 0; static_cast<int>(s.static_obstacles.size()) < obstacle_count && guard < 200; ++guard) {
        const Cell c{uniform_int(rng, 3, grid.rows() - 3), uniform_int(rng, 0, grid.cols() - 1)};
        if (taken.count(c)) continue;
        taken.insert(c);
        s.static_obstacles.push_back(c);
    }
    std::sort(s.static_obstacles.begin(), s.static_obstacles.end());

    const GridMap truth = s.ground_truth_map();
    for (const Seat& seat : s.seats)
        if (!bfs_distance(truth, s.start_pose.cell, seat.cell)) return std::nullopt;

    if (tmpl.kind == SuiteTemplate::Kind::TargetChange) {
        std::vector<ObjectObservation> seen;
        for (std::size_t i = 0; i < s.seats.size(); ++i)
            seen.push_back({"seat-" + std::to_string(i), ObjectClass::Seat, false, 0.0, s.seats[i].cell, false});
        const Cell target = select_target(seen, s.start_pose.cell).cell;
        const auto it = std::find_if(s.seats.begin(), s.seats.end(), [&](const Seat& x) { return x.cell == target; });
        const int target_index = static_cast<int>(it - s.seats.begin());
        const int length = *bfs_distance(truth, s.start_pose.cell, target);
        if (length < 2) return std::nullopt;

        // Every alternative must stay reachable from anywhere the user could
        // be once the target is taken.
        GridMap after = truth;
        after.set_state(target, CellState::SeatOccupied);
        const auto before_reach = reachable_set(truth, s.start_pose.cell);
        for (const Seat& seat : s.seats) {
            if (seat.cell == target) continue;
            const auto alt_reach = reachable_set(after, seat.cell);
            for (std::size_t i = 0; i < before_reach.size(); ++i)
                if (before_reach[i] && !alt_reach[i] && grid.cell_at(i) != target) return std::nullopt;
        }
        s.events.push_back({EventTrigger::at_step(length / 2), SeatBecomesOccupied{target_index}});
    }

    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const TimedEvent& a, const TimedEvent& b) { return trigger_before(a.trigger, b.trigger); });
    s.validate();
    return s;
}

} // namespace

Scenario generate(const SuiteTemplate& tmpl, std::uint64_t seed)
{
    Rng rng = substream(seed, "generate:" + to_string(tmpl));
    for (int i = 0; i < kGenerationAttempts; ++i)
        if (auto s = attempt(tmpl, seed, rng)) return *s;
    throw Unsatisfiable("no solvable " + to_string(tmpl) + " scenario after " +
                        std::to_string(kGenerationAttempts) + " attempts (seed " + std::to_string(seed) + ")");
}

} // namespace canesim
