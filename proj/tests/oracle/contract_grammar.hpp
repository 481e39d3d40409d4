#pragma once

// Regular-expression restatement of the two router output shapes. Returns
// the decision the payload should parse to, or nullopt when it must be
// rejected.

#include <optional>
#include <regex>
#include <string>

#include <json.hpp>

#include "canesim/interaction.hpp"

namespace oracle {

inline const std::string kWs = "[ \\t\\n\\r]*";
inline const std::string kStr = "\"((?:[^\"\\\\\\x00-\\x1f]|\\\\[\"\\\\/bfnrt]|\\\\u[0-9a-fA-F]{4})+)\"";

inline std::optional<canesim::ModeDecision> expected_mode(const std::string& raw)
{
    static const std::regex re("^" + kWs + "\\{" + kWs + "\"mode\"" + kWs + ":" + kWs + "\"(VOICE|VISION)\"" +
                               kWs + "\\}" + kWs + "$");
    std::smatch m;
    if (!std::regex_match(raw, m, re)) return std::nullopt;
    return canesim::ModeDecision{m[1] == "VOICE" ? canesim::Mode::Voice : canesim::Mode::Vision};
}

inline std::optional<canesim::VisionDecision> expected_vision(const std::string& raw)
{
    const std::string action = "\"action\"" + kWs + ":" + kWs + "\"(SCENE|OBJECT)\"";
    const std::string target = "\"target\"" + kWs + ":" + kWs + "(null|" + kStr + ")";
    static const std::regex at("^" + kWs + "\\{" + kWs + action + kWs + "," + kWs + target + kWs + "\\}" + kWs + "$");
    static const std::regex ta("^" + kWs + "\\{" + kWs + target + kWs + "," + kWs + action + kWs + "\\}" + kWs + "$");
    std::smatch m;
    std::string act, tgt;
    if (std::regex_match(raw, m, at)) {
        act = m[1];
        tgt = m[2];
    } else if (std::regex_match(raw, m, ta)) {
        tgt = m[1];
        act = m[3];
    } else {
        return std::nullopt;
    }
    canesim::VisionDecision d;
    d.action = act == "SCENE" ? canesim::VisionAction::Scene : canesim::VisionAction::Object;
    if (tgt != "null") {
        std::string decoded;
        try {
            decoded = nlohmann::json::parse(tgt).get<std::string>();
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
        if (decoded.empty() || d.action == canesim::VisionAction::Scene) return std::nullopt;
        d.target = decoded;
    }
    return d;
}

} // namespace oracle
