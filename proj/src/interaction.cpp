#include "canesim/interaction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <set>

namespace canesim {

using nlohmann::json;

namespace {

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string fold(std::string_view s)
{
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += ascii_lower(c);
    }
    return out;
}

// Lowercased ASCII alphanumeric runs.
std::vector<std::string> english_words(std::string_view s)
{
    std::vector<std::string> words;
    std::string cur;
    for (char c : s) {
        const char l = ascii_lower(c);
        if ((l >= 'a' && l <= 'z') || (l >= '0' && l <= '9')) {
            cur += l;
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

bool has_word(const std::vector<std::string>& words, std::initializer_list<std::string_view> table)
{
    for (const std::string& w : words)
        for (std::string_view k : table)
            if (w == k) return true;
    return false;
}

bool has_substring(std::string_view text, std::initializer_list<std::string_view> table)
{
    for (std::string_view k : table)
        if (text.find(k) != std::string_view::npos) return true;
    return false;
}

const std::initializer_list<std::string_view> kVisionWordsEn{
    "find",   "locate",   "where",  "describe", "around",    "surroundings", "surrounding", "see",
    "look",   "front",    "nearby", "near",     "object",    "objects",      "obstacle",    "obstacles",
    "people", "person",   "crowd",  "distance", "far",       "navigate",     "navigation",  "camera",
    "sign",   "identify", "search", "chair",    "chairs",    "seat",         "seats",       "bottle",
    "cup",    "table",    "door",   "phone",    "scene",     "read"};

const std::initializer_list<std::string_view> kVisionWordsFa{
    "پیدا",  // find
    "کجا",   // where
    "جلوی",  // in front of
    "اطراف", // around
    "ببین",  // see
    "توصیف", // describe
    "مانع",  // obstacle
    "صندلی", // chair
    "بطری",  // bottle
    "میز",   // table
    "فنجان", // cup
    "لیوان", // glass
    "گوشی",  // phone
    "چیه",   // what is it
};

const std::initializer_list<std::string_view> kObjectVerbsEn{"find", "locate", "identify", "search", "objects",
                                                             "things"};
const std::initializer_list<std::string_view> kObjectVerbsFa{"پیدا", "کجاست", "بگرد"};

struct Noun {
    std::string_view surface;
    std::string_view label;
};

const std::vector<Noun> kNounsEn{
    {"chair", "chair"}, {"chairs", "chair"}, {"seat", "chair"},    {"seats", "chair"},  {"bottle", "bottle"},
    {"bottles", "bottle"}, {"cup", "cup"},   {"cups", "cup"},      {"phone", "phone"},  {"table", "table"},
    {"door", "door"},   {"glass", "glass"}, {"bag", "bag"},        {"keys", "keys"},    {"book", "book"},
    {"laptop", "laptop"}};

const std::vector<Noun> kNounsFa{
    {"صندلی", "chair"}, {"بطری", "bottle"}, {"فنجان", "cup"}, {"لیوان", "glass"},
    {"گوشی", "phone"},  {"میز", "table"},   {"کیف", "bag"},   {"کتاب", "book"}};

// Earliest mentioned object noun, mapped to a detector label.
std::optional<std::string> extract_target(const std::string& text)
{
    std::size_t best_pos = std::string::npos;
    std::optional<std::string> best;
    const std::string folded = fold(text);
    // English: whole words, located by scanning word boundaries.
    std::size_t i = 0;
    while (i < folded.size()) {
        const auto is_alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
        if (!is_alnum(folded[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < folded.size() && is_alnum(folded[j])) ++j;
        const std::string_view w(folded.data() + i, j - i);
        for (const Noun& n : kNounsEn)
            if (w == n.surface && i < best_pos) {
                best_pos = i;
                best = std::string(n.label);
            }
        i = j;
    }
    for (const Noun& n : kNounsFa) {
        const auto pos = folded.find(n.surface);
        if (pos != std::string::npos && pos < best_pos) {
            best_pos = pos;
            best = std::string(n.label);
        }
    }
    return best;
}

json parse_strict(std::string_view raw, const char* contract)
{
    if (raw.size() >= 3 && raw.substr(0, 3) == "\xEF\xBB\xBF")
        throw ContractViolation(std::string(contract) + ": byte order mark", std::string(raw));
    std::vector<std::set<std::string>> keys;
    bool duplicate = false;
    json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
        case json::parse_event_t::object_start: keys.emplace_back(); break;
        case json::parse_event_t::object_end:
            if (!keys.empty()) keys.pop_back();
            break;
        case json::parse_event_t::key:
            if (!keys.empty() && !keys.back().insert(parsed.get<std::string>()).second) duplicate = true;
            break;
        default: break;
        }
        return true;
    };
    json j;
    try {
        j = json::parse(raw.begin(), raw.end(), cb);
    } catch (const json::parse_error& e) {
        throw ContractViolation(std::string(contract) + ": not a single JSON document (" + e.what() + ")",
                                std::string(raw));
    }
    if (duplicate) throw ContractViolation(std::string(contract) + ": duplicate key", std::string(raw));
    if (!j.is_object()) throw ContractViolation(std::string(contract) + ": expected a JSON object", std::string(raw));
    return j;
}

std::string json_quote(const std::string& s) { return json(s).dump(); }

} // namespace

Utterance Utterance::make(std::string text, double timestamp_s)
{
    if (fold(text).empty()) throw std::invalid_argument("utterance is blank");
    return {std::move(text), timestamp_s};
}

bool kws_match(std::string_view transcript, std::span<const std::string> phrases)
{
    if (phrases.empty()) throw std::invalid_argument("kws_match: phrase list is empty");
    const std::string text = fold(transcript);
    for (const std::string& p : phrases) {
        const std::string needle = fold(p);
        if (!needle.empty() && text.find(needle) != std::string::npos) return true;
    }
    return false;
}

std::string_view to_string(Mode m) noexcept { return m == Mode::Voice ? "VOICE" : "VISION"; }
std::string_view to_string(VisionAction a) noexcept { return a == VisionAction::Scene ? "SCENE" : "OBJECT"; }

ModeDecision parse_mode_decision(std::string_view raw)
{
    const json j = parse_strict(raw, "mode decision");
    if (j.size() != 1 || !j.contains("mode"))
        throw ContractViolation("mode decision: expected exactly the key \"mode\"", std::string(raw));
    const json& v = j.at("mode");
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s == "VOICE") return {Mode::Voice};
        if (s == "VISION") return {Mode::Vision};
    }
    throw ContractViolation("mode decision: mode must be \"VOICE\" or \"VISION\"", std::string(raw));
}

VisionDecision parse_vision_decision(std::string_view raw)
{
    const json j = parse_strict(raw, "vision decision");
    if (j.size() != 2 || !j.contains("action") || !j.contains("target"))
        throw ContractViolation("vision decision: expected exactly the keys \"action\" and \"target\"",
                                std::string(raw));
    const json& a = j.at("action");
    const json& t = j.at("target");
    VisionDecision d;
    if (a == "SCENE")
        d.action = VisionAction::Scene;
    else if (a == "OBJECT")
        d.action = VisionAction::Object;
    else
        throw ContractViolation("vision decision: action must be \"SCENE\" or \"OBJECT\"", std::string(raw));
    if (t.is_string()) {
        if (t.get_ref<const std::string&>().empty())
            throw ContractViolation("vision decision: target must not be empty", std::string(raw));
        if (d.action == VisionAction::Scene)
            throw ContractViolation("vision decision: SCENE takes a null target", std::string(raw));
        d.target = t.get<std::string>();
    } else if (!t.is_null()) {
        throw ContractViolation("vision decision: target must be a string or null", std::string(raw));
    }
    return d;
}

std::string to_json_string(const ModeDecision& d)
{
    return "{\"mode\": \"" + std::string(to_string(d.mode)) + "\"}";
}

std::string to_json_string(const VisionDecision& d)
{
    return "{\"action\": \"" + std::string(to_string(d.action)) +
           "\", \"target\": " + (d.target ? json_quote(*d.target) : std::string("null")) + "}";
}

std::string mock_mode_router(const Utterance& u)
{
    const bool vision = has_word(english_words(u.text), kVisionWordsEn) || has_substring(u.text, kVisionWordsFa);
    return to_json_string(ModeDecision{vision ? Mode::Vision : Mode::Voice});
}

std::string mock_vision_router(const Utterance& u)
{
    const auto words = english_words(u.text);
    const auto target = extract_target(u.text);
    const bool object = target.has_value() || has_word(words, kObjectVerbsEn) || has_substring(u.text, kObjectVerbsFa);
    VisionDecision d;
    d.action = object ? VisionAction::Object : VisionAction::Scene;
    if (object) d.target = target;
    return to_json_string(d);
}

bool is_temporal_query(const Utterance& u)
{
    return has_word(english_words(u.text), {"date", "time", "today", "day", "clock", "weekday", "month", "year"}) ||
           has_substring(u.text, {"تاریخ", "ساعت", "امروز", "شنبه", "روز"});
}

int distance_to_steps(double distance_m, double step_length)
{
    if (!(distance_m >= 0.0)) throw std::invalid_argument("distance must be non-negative");
    if (!(step_length > 0.0)) throw std::invalid_argument("step length must be positive");
    double q = distance_m / step_length;
    // 1.0 / 0.4 lands a hair off 2.5 in binary; treat near-halves as halves.
    const double half = std::round(q * 2.0) / 2.0;
    if (std::abs(q - half) <= 1e-9 * std::max(1.0, q)) q = half;
    const double whole = std::floor(q);
    const double frac = q - whole;
    long n = static_cast<long>(whole);
    if (frac > 0.5 || (frac == 0.5 && n % 2 != 0)) ++n;
    return static_cast<int>(n);
}

ObjectReport build_object_report(std::span<const Detection> detections, const std::optional<std::string>& target,
                                 double step_length)
{
    std::map<std::string, double> nearest;
    for (const Detection& d : detections) {
        if (!(d.distance_m >= 0.0)) throw std::invalid_argument("detection '" + d.label + "' has a negative distance");
        auto [it, inserted] = nearest.emplace(d.label, d.distance_m);
        if (!inserted) it->second = std::min(it->second, d.distance_m);
    }
    ObjectReport report;
    report.target = target;
    const std::string wanted = target ? fold(*target) : std::string();
    for (const auto& [label, dist] : nearest) {
        const bool hit = target && fold(label) == wanted;
        report.entries.push_back({label, distance_to_steps(dist, step_length), hit});
        report.target_found = report.target_found || hit;
    }
    return report;
}

std::string persian_digits(long value)
{
    if (value < 0) throw std::invalid_argument("persian_digits: negative value");
    const std::string ascii = std::to_string(value);
    std::string out;
    for (char c : ascii) {
        out += '\xDB';
        out += static_cast<char>(0xB0 + (c - '0'));
    }
    return out;
}

std::string ObjectReport::render() const
{
    std::string out;
    for (const ObjectReportEntry& e : entries) {
        if (!out.empty()) out += '\n';
        out += e.label + ": حدود " + persian_digits(e.steps) + " قدم";
    }
    if (target) {
        if (!out.empty()) out += '\n';
        out += "جست‌وجو برای «" + *target + "»: " + (target_found ? "پیدا شد" : "پیدا نشد");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mocks

std::string MockTranscriber::transcribe(const std::string& audio)
{
    ++calls;
    return audio;
}

std::string MockModeRouter::route(const Utterance& u)
{
    ++calls;
    return mock_mode_router(u);
}

std::string MockVisionRouter::route(const Utterance& u)
{
    ++calls;
    return mock_vision_router(u);
}

std::string ScriptedRouter::route(const Utterance&)
{
    if (outputs_.empty()) throw std::logic_error("ScriptedRouter has no outputs");
    const std::size_t i = std::min(static_cast<std::size_t>(calls), outputs_.size() - 1);
    ++calls;
    return outputs_[i];
}

std::string MockSceneDescriber::describe()
{
    ++calls;
    return text_;
}

MockDetector::MockDetector() : samples_{{{"chair", 1.6}, {"table", 0.8}}, {{"chair", 1.7}, {"bottle", 1.1}}} {}

std::vector<Detection> MockDetector::detect()
{
    if (samples_.empty()) {
        ++calls;
        return {};
    }
    const auto& s = samples_[static_cast<std::size_t>(calls) % samples_.size()];
    ++calls;
    return s;
}

std::string MockResponder::respond(const ResponderInput& in)
{
    ++calls;
    last_input = in;
    if (in.clock) return "It is " + *in.clock + ".";
    if (!in.object_report.empty()) return in.object_report;
    if (!in.scene.empty()) return in.scene;
    return "I am listening.";
}

void MockSpeechSynthesizer::speak(const std::string& text)
{
    ++calls;
    spoken.push_back(text);
}

DateTime FixedClock::now()
{
    ++calls;
    return t_;
}

BackendSet MockBackends::set()
{
    return {&transcriber, &mode_router, &vision_router, &scene_describer, &detector, &responder, &speech_synthesizer,
            &clock};
}

// ---------------------------------------------------------------------------
// Orchestration

void TranscriptLog::record(const std::string& stage, const json& input, const json& output)
{
    records_.push_back({{"seq", records_.size()}, {"stage", stage}, {"input", input}, {"output", output}});
}

std::string TranscriptLog::to_ndjson() const
{
    std::string out;
    for (const json& r : records_) out += r.dump() + "\n";
    return out;
}

namespace {

class StageTimer {
public:
    StageTimer(InteractionResponse& r, std::string stage) : r_(r), stage_(std::move(stage)) {}
    ~StageTimer()
    {
        r_.latency_s[stage_] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    InteractionResponse& r_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Decision, class Parse>
std::optional<Decision> route_with_retry(RouterBackend& router, const Utterance& u, Parse parse, const char* stage,
                                         InteractionResponse& r, TranscriptLog* log)
{
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string raw;
        {
            StageTimer t(r, stage);
            raw = router.route(u);
        }
        try {
            Decision d = parse(raw);
            if (log) log->record(stage, {{"utterance", u.text}, {"attempt", attempt}}, raw);
            return d;
        } catch (const ContractViolation& e) {
            if (log)
                log->record(std::string(stage) + ".contract_violation", {{"utterance", u.text}, {"attempt", attempt}},
                            {{"raw", e.raw()}, {"error", e.what()}});
        }
    }
    return std::nullopt;
}

void require(const BackendSet& b)
{
    if (!b.mode_router || !b.vision_router || !b.scene_describer || !b.detector || !b.responder ||
        !b.speech_synthesizer || !b.clock)
        throw std::invalid_argument("orchestrate: every backend handle must be set");
}

} // namespace

InteractionResponse orchestrate(const Utterance& utterance, const BackendSet& backends,
                                const OrchestratorConfig& config, TranscriptLog* log)
{
    require(backends);
    if (config.detection_samples < 1) throw std::invalid_argument("orchestrate: detection_samples must be >= 1");
    InteractionResponse r;

    auto finish = [&](std::string text) {
        {
            StageTimer t(r, "speech_synthesizer");
            backends.speech_synthesizer->speak(text);
        }
        r.mode_path.push_back("speech_synthesizer");
        if (log) log->record("speech_synthesizer", {{"text", text}}, nullptr);
        r.text = std::move(text);
        return r;
    };
    auto fallback = [&](const char* stage) {
        r.fallback = true;
        r.mode_path.push_back("fallback");
        if (log) log->record("error", {{"stage", stage}}, {{"reply", config.fallback_reply}});
        return finish(config.fallback_reply);
    };

    r.mode_path.push_back("mode_router");
    const auto mode = route_with_retry<ModeDecision>(*backends.mode_router, utterance, parse_mode_decision,
                                                     "mode_router", r, log);
    if (!mode) return fallback("mode_router");
    r.mode_path.push_back(std::string(to_string(mode->mode)));

    ResponderInput in;
    in.utterance = utterance.text;
    if (mode->mode == Mode::Voice) {
        if (is_temporal_query(utterance)) {
            DateTime now;
            {
                StageTimer t(r, "clock");
                now = backends.clock->now();
            }
            const CivilDate j = gregorian_to_jalali(now.date.year, now.date.month, now.date.day);
            char hm[8];
            std::snprintf(hm, sizeof hm, "%02d:%02d", now.hour, now.minute);
            in.clock = format_jalali(j) + " " + hm;
            r.mode_path.push_back("clock");
            if (log) log->record("clock", nullptr, {{"jalali", format_jalali(j)}, {"time", hm}});
        }
    } else {
        r.mode_path.push_back("vision_router");
        const auto vision = route_with_retry<VisionDecision>(*backends.vision_router, utterance,
                                                             parse_vision_decision, "vision_router", r, log);
        if (!vision) return fallback("vision_router");
        r.mode_path.push_back(std::string(to_string(vision->action)));
        {
            StageTimer t(r, "scene_describer");
            in.scene = backends.scene_describer->describe();
        }
        r.mode_path.push_back("scene_describer");
        if (log) log->record("scene_describer", nullptr, in.scene);

        if (vision->action == VisionAction::Object) {
            std::vector<Detection> window;
            {
                StageTimer t(r, "detector");
                for (int i = 0; i < config.detection_samples; ++i) {
                    auto sample = backends.detector->detect();
                    window.insert(window.end(), sample.begin(), sample.end());
                }
            }
            ObjectReport report = build_object_report(window, vision->target, config.step_length_m);
            in.object_report = report.render();
            r.mode_path.push_back("detector");
            if (log) log->record("detector", {{"samples", config.detection_samples}}, in.object_report);
            r.report = std::move(report);
        }
    }

    std::string text;
    {
        StageTimer t(r, "responder");
        text = backends.responder->respond(in);
    }
    r.mode_path.push_back("responder");
    if (log) log->record("responder", {{"user_message", responder_user_message(in)}}, text);
    return finish(std::move(text));
}

std::vector<InteractionResponse> run_session(std::span<const std::string> lines, const BackendSet& backends,
                                             const OrchestratorConfig& config, TranscriptLog* log,
                                             std::span<const std::string> wake_phrases)
{
    if (!backends.transcriber) throw std::invalid_argument("run_session: transcriber handle must be set");
    std::vector<InteractionResponse> out;
    bool armed = false;
    for (const std::string& line : lines) {
        const std::string text = backends.transcriber->transcribe(line);
        if (!armed) {
            armed = kws_match(text, wake_phrases);
            if (log) log->record("wake_word", text, armed);
            continue;
        }
        if (fold(text).empty()) continue;
        out.push_back(orchestrate(Utterance::make(text), backends, config, log));
        armed = false;
    }
    return out;
}

RemoteBackendConfig RemoteBackendConfig::from_env()
{
    auto get = [](const char* name) {
        const char* v = std::getenv(name);
        return v ? std::string(v) : std::string();
    };
    return {get("CANESIM_LLM_ENDPOINT"), get("CANESIM_LLM_API_KEY"), get("CANESIM_LLM_MODEL")};
}

const std::string_view kModeRouterInstruction =
    "Classify whether answering the user needs the camera right now. Reply with one JSON object and nothing "
    "else: {\"mode\": \"VISION\"} or {\"mode\": \"VOICE\"}. VISION covers objects, people, obstacles, "
    "distances, surroundings and navigation. VOICE covers date, time, small talk and general questions. "
    "When unsure, answer VOICE.";

const std::string_view kVisionRouterInstruction =
    "Choose the vision tool for the user's last request. SCENE: scene description only. OBJECT: scene "
    "description plus object detection, for finding or locating a specific object or listing nearby objects. "
    "Put a named object in \"target\", otherwise null. Reply with exactly "
    "{\"action\": \"SCENE\" or \"OBJECT\", \"target\": string or null} and no other text.";

const std::string_view kResponderInstruction =
    "You are a cane assistant talking with its user. Answer briefly and kindly in Persian. Mention step counts "
    "to objects when they are given, and read out any sign text that helps with orientation.";

json build_chat_request(const RemoteBackendConfig& cfg, std::string_view system, const std::string& user)
{
    return {{"model", cfg.model},
            {"temperature", 0},
            {"messages", json::array({{{"role", "system"}, {"content", std::string(system)}},
                                      {{"role", "user"}, {"content", user}}})}};
}

std::string responder_user_message(const ResponderInput& in)
{
    std::string msg;
    if (!in.scene.empty()) msg += "Scene: " + in.scene + "\n";
    if (!in.object_report.empty()) msg += "Objects:\n" + in.object_report + "\n";
    if (in.clock) msg += "Date and time (Jalali): " + *in.clock + "\n";
    msg += "Question: " + in.utterance;
    return msg;
}

} // namespace canesim
