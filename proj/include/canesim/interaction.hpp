#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "canesim/jalali.hpp"

namespace canesim {

struct Utterance {
    std::string text;
    double timestamp_s = 0.0;

    // Throws std::invalid_argument when the text is blank.
    static Utterance make(std::string text, double timestamp_s = 0.0);
};

// ---------------------------------------------------------------------------
// Wake word

inline const std::vector<std::string> kDefaultWakePhrases{"Hello, PISHYAR", "PISHYAR, my friend"};

// ASCII case folding and whitespace collapsing on both sides, then plain
// substring search. Non-ASCII bytes are compared as-is.
bool kws_match(std::string_view transcript, std::span<const std::string> phrases);

// ---------------------------------------------------------------------------
// Router contracts

enum class Mode { Voice, Vision };
enum class VisionAction { Scene, Object };

std::string_view to_string(Mode m) noexcept;          // "VOICE" / "VISION"
std::string_view to_string(VisionAction a) noexcept;  // "SCENE" / "OBJECT"

struct ModeDecision {
    Mode mode = Mode::Voice;
    friend bool operator==(const ModeDecision&, const ModeDecision&) = default;
};

struct VisionDecision {
    VisionAction action = VisionAction::Scene;
    std::optional<std::string> target;  // OBJECT only
    friend bool operator==(const VisionDecision&, const VisionDecision&) = default;
};

class ContractViolation : public std::runtime_error {
public:
    ContractViolation(const std::string& why, std::string raw)
        : std::runtime_error(why), raw_(std::move(raw))
    {
    }
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

// Exactly {"mode": "VOICE"|"VISION"}; JSON whitespace around tokens is fine,
// anything else throws ContractViolation.
ModeDecision parse_mode_decision(std::string_view raw);

// Exactly the keys "action" and "target". target is null or a non-empty
// string, and must be null for SCENE.
VisionDecision parse_vision_decision(std::string_view raw);

std::string to_json_string(const ModeDecision& d);
std::string to_json_string(const VisionDecision& d);

// Keyword routers emitting the strict shapes above. English keywords match
// whole words after ASCII case folding; Persian keywords match substrings.
std::string mock_mode_router(const Utterance& u);
std::string mock_vision_router(const Utterance& u);

// Date, time or weekday questions.
bool is_temporal_query(const Utterance& u);

// ---------------------------------------------------------------------------
// Object report

struct Detection {
    std::string label;
    double distance_m = 0.0;
};

struct ObjectReportEntry {
    std::string label;
    int steps = 0;
    bool found_target = false;
    friend bool operator==(const ObjectReportEntry&, const ObjectReportEntry&) = default;
};

struct ObjectReport {
    std::vector<ObjectReportEntry> entries;  // sorted by label
    std::optional<std::string> target;
    bool target_found = false;

    // Persian block handed to the responder, e.g.
    //   chair: حدود ۴ قدم
    //   جست‌وجو برای «chair»: پیدا شد
    std::string render() const;
    friend bool operator==(const ObjectReport&, const ObjectReport&) = default;
};

inline constexpr double kStepLength = 0.40;

// distance / step_length rounded half to even.
int distance_to_steps(double distance_m, double step_length = kStepLength);

// Collapses duplicate labels to the nearest instance. Throws
// std::invalid_argument on a negative distance.
ObjectReport build_object_report(std::span<const Detection> detections,
                                 const std::optional<std::string>& target,
                                 double step_length = kStepLength);

// Persian digits for a non-negative integer.
std::string persian_digits(long value);

// ---------------------------------------------------------------------------
// Backends

struct DateTime {
    CivilDate date;
    int hour = 0;
    int minute = 0;
};

struct ResponderInput {
    std::string utterance;
    std::string scene;          // empty on the VOICE path
    std::string object_report;  // empty unless OBJECT
    std::optional<std::string> clock;
};

class Transcriber {
public:
    virtual ~Transcriber() = default;
    virtual std::string transcribe(const std::string& audio) = 0;
};
class RouterBackend {
public:
    virtual ~RouterBackend() = default;
    virtual std::string route(const Utterance& u) = 0;
};
class SceneDescriber {
public:
    virtual ~SceneDescriber() = default;
    virtual std::string describe() = 0;
};
class Detector {
public:
    virtual ~Detector() = default;
    // One detector sample.
    virtual std::vector<Detection> detect() = 0;
};
class Responder {
public:
    virtual ~Responder() = default;
    virtual std::string respond(const ResponderInput& in) = 0;
};
class SpeechSynthesizer {
public:
    virtual ~SpeechSynthesizer() = default;
    virtual void speak(const std::string& text) = 0;
};
class Clock {
public:
    virtual ~Clock() = default;
    virtual DateTime now() = 0;
};

// Non-owning handles. All must be set before orchestrate().
struct BackendSet {
    Transcriber* transcriber = nullptr;
    RouterBackend* mode_router = nullptr;
    RouterBackend* vision_router = nullptr;
    SceneDescriber* scene_describer = nullptr;
    Detector* detector = nullptr;
    Responder* responder = nullptr;
    SpeechSynthesizer* speech_synthesizer = nullptr;
    Clock* clock = nullptr;
};

// Deterministic mocks, each counting its calls.
class MockTranscriber : public Transcriber {
public:
    std::string transcribe(const std::string& audio) override;
    int calls = 0;
};

class MockModeRouter : public RouterBackend {
public:
    std::string route(const Utterance& u) override;
    int calls = 0;
};

class MockVisionRouter : public RouterBackend {
public:
    std::string route(const Utterance& u) override;
    int calls = 0;
};

// Replays canned router output, then repeats the last entry.
class ScriptedRouter : public RouterBackend {
public:
    explicit ScriptedRouter(std::vector<std::string> outputs) : outputs_(std::move(outputs)) {}
    std::string route(const Utterance& u) override;
    int calls = 0;

private:
    std::vector<std::string> outputs_;
};

class MockSceneDescriber : public SceneDescriber {
public:
    explicit MockSceneDescriber(std::string text = "A small room with a table against the left wall and two "
                                                   "chairs in the middle. No readable signs.")
        : text_(std::move(text))
    {
    }
    std::string describe() override;
    int calls = 0;

private:
    std::string text_;
};

// Cycles through the scripted samples.
class MockDetector : public Detector {
public:
    MockDetector();
    explicit MockDetector(std::vector<std::vector<Detection>> samples) : samples_(std::move(samples)) {}
    std::vector<Detection> detect() override;
    int calls = 0;

private:
    std::vector<std::vector<Detection>> samples_;
};

class MockResponder : public Responder {
public:
    std::string respond(const ResponderInput& in) override;
    int calls = 0;
    ResponderInput last_input;
};

class MockSpeechSynthesizer : public SpeechSynthesizer {
public:
    void speak(const std::string& text) override;
    int calls = 0;
    std::vector<std::string> spoken;
};

class FixedClock : public Clock {
public:
    explicit FixedClock(DateTime t) : t_(t) {}
    DateTime now() override;
    int calls = 0;

private:
    DateTime t_;
};

// Bundles one of every mock.
struct MockBackends {
    MockTranscriber transcriber;
    MockModeRouter mode_router;
    MockVisionRouter vision_router;
    MockSceneDescriber scene_describer;
    MockDetector detector;
    MockResponder responder;
    MockSpeechSynthesizer speech_synthesizer;
    FixedClock clock{DateTime{{2024, 3, 20}, 9, 30}};

    BackendSet set();
};

// ---------------------------------------------------------------------------
// Orchestration

struct OrchestratorConfig {
    int detection_samples = 10;  // detector samples unioned per OBJECT request
    double step_length_m = kStepLength;
    std::string fallback_reply = "Sorry, I could not understand that. Please try again.";
};

struct InteractionResponse {
    std::string text;
    std::vector<std::string> mode_path;  // e.g. {"mode_router", "VISION", "vision_router", "OBJECT", ...}
    std::map<std::string, double> latency_s;
    std::optional<ObjectReport> report;
    bool fallback = false;
};

// Newline-delimited JSON record of every stage input and output.
class TranscriptLog {
public:
    void record(const std::string& stage, const nlohmann::json& input, const nlohmann::json& output);
    std::string to_ndjson() const;
    const std::vector<nlohmann::json>& records() const noexcept { return records_; }

private:
    std::vector<nlohmann::json> records_;
};

InteractionResponse orchestrate(const Utterance& utterance, const BackendSet& backends,
                                const OrchestratorConfig& config = {}, TranscriptLog* log = nullptr);

// Runs scripted input lines through the transcriber and wake-word gate. A
// line containing a wake phrase arms the session; the next line is handled
// by orchestrate().
std::vector<InteractionResponse> run_session(std::span<const std::string> lines, const BackendSet& backends,
                                             const OrchestratorConfig& config = {}, TranscriptLog* log = nullptr,
                                             std::span<const std::string> wake_phrases = kDefaultWakePhrases);

// ---------------------------------------------------------------------------
// Remote adapters (request shapes only; nothing here opens a connection)

struct RemoteBackendConfig {
    std::string endpoint;
    std::string api_key;
    std::string model;

    bool configured() const noexcept { return !endpoint.empty() && !api_key.empty(); }
    // CANESIM_LLM_ENDPOINT, CANESIM_LLM_API_KEY, CANESIM_LLM_MODEL.
    static RemoteBackendConfig from_env();
};

extern const std::string_view kModeRouterInstruction;
extern const std::string_view kVisionRouterInstruction;
extern const std::string_view kResponderInstruction;

// Chat-completions style body: a system message and a user message.
nlohmann::json build_chat_request(const RemoteBackendConfig& cfg, std::string_view system, const std::string& user);
// User message for the responder: scene text, object report, question.
std::string responder_user_message(const ResponderInput& in);

} // namespace canesim
