#include <doctest.h>

#include <algorithm>

#include "canesim/interaction.hpp"
#include "canesim/jalali.hpp"
#include "fuzz.hpp"
#include "oracle/jalali_oracle.hpp"

using namespace canesim;

namespace {

bool path_has(const InteractionResponse& r, const std::string& stage)
{
    return std::find(r.mode_path.begin(), r.mode_path.end(), stage) != r.mode_path.end();
}

} // namespace

TEST_CASE("wake word")
{
    CHECK(kws_match("hello, pishyar", kDefaultWakePhrases));
    CHECK_FALSE(kws_match("hello world", kDefaultWakePhrases));
    CHECK(kws_match("  PISHYAR,   my friend  ", kDefaultWakePhrases));
    CHECK(kws_match("ok so Hello,\tPishyar can you help", kDefaultWakePhrases));
    CHECK_FALSE(kws_match("hello pishyar", kDefaultWakePhrases));
    const std::vector<std::string> none;
    CHECK_THROWS(kws_match("x", none));
}

TEST_CASE("utterances must carry text")
{
    CHECK_THROWS_AS(Utterance::make("   "), std::invalid_argument);
    CHECK(Utterance::make("hi", 2.5).timestamp_s == 2.5);
}

TEST_CASE("mode contract")
{
    CHECK(parse_mode_decision(R"({"mode": "VISION"})").mode == Mode::Vision);
    CHECK(parse_mode_decision(" {\n\"mode\":\"VOICE\"} ").mode == Mode::Voice);
    CHECK_THROWS_AS(parse_mode_decision(R"({"mode": "VOICE"} thanks!)"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision(R"({"mode": "vision"})"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision(R"({"mode": "VOICE", "extra": 1})"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision(R"({"mode": "VOICE", "mode": "VISION"})"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision("\xEF\xBB\xBF{\"mode\": \"VOICE\"}"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision(R"(["VOICE"])"), ContractViolation);
    CHECK_THROWS_AS(parse_mode_decision(""), ContractViolation);
    try {
        parse_mode_decision("nope");
    } catch (const ContractViolation& e) {
        CHECK(e.raw() == "nope");
    }
}

TEST_CASE("vision contract")
{
    VisionDecision d = parse_vision_decision(R"({"action": "OBJECT", "target": "chair"})");
    CHECK(d.action == VisionAction::Object);
    CHECK(d.target == "chair");
    d = parse_vision_decision(R"({"action": "SCENE", "target": null})");
    CHECK(d.action == VisionAction::Scene);
    CHECK_FALSE(d.target.has_value());
    CHECK_THROWS_AS(parse_vision_decision(R"({"action": "SCENE", "target": "cup"})"), ContractViolation);
    CHECK_THROWS_AS(parse_vision_decision(R"({"action": "SCENE", "target": None})"), ContractViolation);
    CHECK_THROWS_AS(parse_vision_decision(R"({"action": "OBJECT"})"), ContractViolation);
    CHECK_THROWS_AS(parse_vision_decision(R"({"action": "OBJECT", "target": ""})"), ContractViolation);
    CHECK_THROWS_AS(parse_vision_decision(R"({"action": "OBJECT", "target": 3})"), ContractViolation);
    CHECK(parse_vision_decision(R"({"target": null, "action": "OBJECT"})").action == VisionAction::Object);
}

TEST_CASE("contract serialization round trips")
{
    for (Mode m : {Mode::Voice, Mode::Vision}) CHECK(parse_mode_decision(to_json_string(ModeDecision{m})).mode == m);
    const VisionDecision a{VisionAction::Object, "bottle"};
    CHECK(parse_vision_decision(to_json_string(a)) == a);
    const VisionDecision b{VisionAction::Scene, std::nullopt};
    CHECK(parse_vision_decision(to_json_string(b)) == b);
    CHECK(to_json_string(ModeDecision{Mode::Vision}) == R"({"mode": "VISION"})");
}

TEST_CASE("grammar oracle agrees on seeds")
{
    CHECK(oracle::expected_mode(R"({"mode": "VISION"})").has_value());
    CHECK_FALSE(oracle::expected_mode(R"({"mode": "VISION"}x)").has_value());
    CHECK(oracle::expected_vision(R"({"action": "OBJECT", "target": "chair"})")->target == "chair");
    CHECK_FALSE(oracle::expected_vision(R"({"action": "SCENE", "target": "chair"})").has_value());
}

TEST_CASE("near-miss fuzzing")
{
    const auto o = testsupport::fuzz_contracts(2000, 77);
    CHECK(o.silent_misparses == 0);
    CHECK(o.rejected > o.cases / 2);
    CHECK(o.accepted > 0);
}

TEST_CASE("mock routers")
{
    CHECK(mock_mode_router(Utterance::make("بطری آب را پیدا کن")) == R"({"mode": "VISION"})");
    CHECK(mock_mode_router(Utterance::make("امروز چند شنبه است؟")) == R"({"mode": "VOICE"})");
    CHECK(mock_mode_router(Utterance::make("tell me a joke")) == R"({"mode": "VOICE"})");
    CHECK(mock_mode_router(Utterance::make("Find the chair")) == R"({"mode": "VISION"})");
    CHECK(mock_mode_router(Utterance::make("what time is it")) == R"({"mode": "VOICE"})");

    auto v = parse_vision_decision(mock_vision_router(Utterance::make("می تونی بگی که جلوی من چیه؟")));
    CHECK(v.action == VisionAction::Scene);
    CHECK_FALSE(v.target.has_value());
    v = parse_vision_decision(mock_vision_router(Utterance::make("صندلی رو برام پیدا کن.")));
    CHECK(v.action == VisionAction::Object);
    CHECK(v.target == "chair");
    v = parse_vision_decision(mock_vision_router(Utterance::make("describe my surroundings")));
    CHECK(v.action == VisionAction::Scene);
    v = parse_vision_decision(mock_vision_router(Utterance::make("locate the water bottle on the table")));
    CHECK(v.action == VisionAction::Object);
    CHECK(v.target == "bottle");
    v = parse_vision_decision(mock_vision_router(Utterance::make("what objects are near me")));
    CHECK(v.action == VisionAction::Object);
    CHECK_FALSE(v.target.has_value());
}

TEST_CASE("temporal queries")
{
    CHECK(is_temporal_query(Utterance::make("what time is it")));
    CHECK(is_temporal_query(Utterance::make("امروز چند شنبه است؟")));
    CHECK_FALSE(is_temporal_query(Utterance::make("tell me a joke")));
}

TEST_CASE("steps and object report")
{
    CHECK(distance_to_steps(1.6) == 4);
    CHECK(distance_to_steps(0.8) == 2);
    CHECK(distance_to_steps(1.0) == 2);
    CHECK(distance_to_steps(1.4) == 4);
    CHECK(distance_to_steps(0.0) == 0);

    const std::vector<Detection> det{{"chair", 1.6}, {"table", 0.8}};
    ObjectReport r = build_object_report(det, std::string("chair"));
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0] == ObjectReportEntry{"chair", 4, true});
    CHECK(r.entries[1] == ObjectReportEntry{"table", 2, false});
    CHECK(r.target_found);
    CHECK(r.render() == "chair: حدود ۴ قدم\ntable: حدود ۲ قدم\nجست‌وجو برای «chair»: پیدا شد");

    const std::vector<Detection> cups{{"cup", 1.2}, {"cup", 1.0}};
    r = build_object_report(cups, std::nullopt);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].steps == 2);

    r = build_object_report({}, std::string("bottle"));
    CHECK(r.entries.empty());
    CHECK_FALSE(r.target_found);
    CHECK(r.render() == "جست‌وجو برای «bottle»: پیدا نشد");

    const std::vector<Detection> bad{{"cup", -1.0}};
    CHECK_THROWS_AS(build_object_report(bad, std::nullopt), std::invalid_argument);
    CHECK(persian_digits(1403) == "۱۴۰۳");
    CHECK(persian_digits(0) == "۰");
}

TEST_CASE("jalali fixtures")
{
    CHECK(gregorian_to_jalali(2024, 3, 20) == CivilDate{1403, 1, 1});
    CHECK(gregorian_to_jalali(1970, 1, 1) == CivilDate{1348, 10, 11});
    CHECK(gregorian_to_jalali(2025, 3, 20) == CivilDate{1403, 12, 30});
    CHECK(gregorian_to_jalali(2025, 3, 21) == CivilDate{1404, 1, 1});
    CHECK(format_jalali({1403, 1, 1}) == "1403/01/01");
    CHECK_THROWS_AS(gregorian_to_jalali(1899, 12, 31), std::invalid_argument);
    CHECK_THROWS_AS(gregorian_to_jalali(2023, 2, 29), std::invalid_argument);
    CHECK(is_gregorian_leap(2000));
    CHECK_FALSE(is_gregorian_leap(1900));
}

TEST_CASE("jalali matches the day-walk oracle")
{
    CHECK(oracle::gregorian_to_jalali({2024, 3, 20}) == CivilDate{1403, 1, 1});
    CHECK(oracle::jalali_to_gregorian({1403, 1, 1}) == CivilDate{2024, 3, 20});
    // Every 37th day across the range, plus each year's Nowruz neighbourhood.
    CivilDate g{1900, 1, 1};
    CivilDate j = oracle::gregorian_to_jalali(g);
    int n = 0;
    while (g.year <= 2100) {
        if (n % 37 == 0 || (g.month == 3 && g.day >= 19 && g.day <= 22)) REQUIRE(gregorian_to_jalali(g.year, g.month, g.day) == j);
        oracle::next_gregorian(g);
        oracle::next_jalali(j);
        ++n;
    }
}

TEST_CASE("voice path with clock")
{
    MockBackends m;
    TranscriptLog log;
    const auto r = orchestrate(Utterance::make("what is the date today"), m.set(), {}, &log);
    CHECK(path_has(r, "VOICE"));
    CHECK(path_has(r, "clock"));
    CHECK(m.clock.calls == 1);
    CHECK(m.detector.calls == 0);
    CHECK(m.vision_router.calls == 0);
    CHECK(m.scene_describer.calls == 0);
    CHECK(r.text.find("1403/01/01") != std::string::npos);
    CHECK(m.speech_synthesizer.spoken == std::vector<std::string>{r.text});
    CHECK_FALSE(log.records().empty());
}

TEST_CASE("scene path skips the detector")
{
    MockBackends m;
    const auto r = orchestrate(Utterance::make("describe my surroundings"), m.set());
    const std::vector<std::string> expected{"mode_router", "VISION", "vision_router", "SCENE",
                                            "scene_describer", "responder", "speech_synthesizer"};
    CHECK(r.mode_path == expected);
    CHECK(m.detector.calls == 0);
    CHECK(m.clock.calls == 0);
}

TEST_CASE("object path reports steps")
{
    MockBackends m;
    const auto r = orchestrate(Utterance::make("find the chair"), m.set());
    CHECK(path_has(r, "OBJECT"));
    CHECK(path_has(r, "detector"));
    CHECK(m.detector.calls == 10);
    REQUIRE(r.report.has_value());
    CHECK(r.report->target_found);
    CHECK(r.text.find("قدم") != std::string::npos);
    CHECK(m.responder.last_input.object_report.find("chair: حدود ۴ قدم") != std::string::npos);
}

TEST_CASE("router contract violation retries once then falls back")
{
    MockBackends m;
    ScriptedRouter bad_then_good({"VISION", R"({"mode": "VOICE"})"});
    BackendSet b = m.set();
    b.mode_router = &bad_then_good;
    auto r = orchestrate(Utterance::make("hi"), b);
    CHECK_FALSE(r.fallback);
    CHECK(bad_then_good.calls == 2);

    ScriptedRouter always_bad({R"({"mode": "voice"})"});
    b.mode_router = &always_bad;
    const int responder_before = m.responder.calls;
    TranscriptLog log;
    r = orchestrate(Utterance::make("hi"), b, {}, &log);
    CHECK(r.fallback);
    CHECK(always_bad.calls == 2);
    CHECK(r.text == OrchestratorConfig{}.fallback_reply);
    CHECK(m.responder.calls == responder_before);

    ScriptedRouter vision_bad({R"({"action": "SCENE", "target": "cup"})"});
    b = m.set();
    b.vision_router = &vision_bad;
    r = orchestrate(Utterance::make("find the cup"), b);
    CHECK(r.fallback);
    CHECK(m.detector.calls == 0);

    BackendSet missing;
    CHECK_THROWS_AS(orchestrate(Utterance::make("hi"), missing), std::invalid_argument);
}

TEST_CASE("session wake gating")
{
    MockBackends m;
    const std::vector<std::string> lines{"find the chair", "Hello, PISHYAR", "find the chair", "what time is it",
                                         "PISHYAR, my friend", "what time is it"};
    TranscriptLog log;
    const auto out = run_session(lines, m.set(), {}, &log);
    REQUIRE(out.size() == 2);
    CHECK(path_has(out[0], "OBJECT"));
    CHECK(path_has(out[1], "clock"));
    CHECK(m.transcriber.calls == 6);
    const std::string nd = log.to_ndjson();
    CHECK(std::count(nd.begin(), nd.end(), '\n') == static_cast<long>(log.records().size()));
}

TEST_CASE("remote request shape")
{
    const RemoteBackendConfig cfg{"http://localhost:1", "k", "m"};
    CHECK(cfg.configured());
    const auto req = build_chat_request(cfg, kModeRouterInstruction, "hello");
    CHECK(req.at("model") == "m");
    CHECK(req.at("messages").size() == 2);
    CHECK(req.at("messages")[0].at("role") == "system");
    ResponderInput in;
    in.utterance = "where is the chair";
    in.object_report = "chair: حدود ۴ قدم";
    const std::string msg = responder_user_message(in);
    CHECK(msg.find("where is the chair") != std::string::npos);
    CHECK(msg.find("chair: حدود ۴ قدم") != std::string::npos);
    CHECK_FALSE(RemoteBackendConfig{}.configured());
}
