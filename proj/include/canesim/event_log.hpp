#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace canesim {

struct EventRecord {
    double time_s = 0.0;
    std::string phase;
    std::string event;
    nlohmann::json payload = nlohmann::json::object();

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

class EventLog {
public:
    void push(double time_s, std::string phase, std::string event,
              nlohmann::json payload = nlohmann::json::object());

    const std::vector<EventRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    std::size_t count(const std::string& event) const;
    // First record with this event name, or nullptr.
    const EventRecord* find(const std::string& event) const;

    // One JSON object per line: {"time","phase","event","payload"}.
    std::string to_ndjson() const;
    static EventLog from_ndjson(const std::string& text);

    friend bool operator==(const EventLog&, const EventLog&) = default;

private:
    std::vector<EventRecord> records_;
};

} // namespace canesim
