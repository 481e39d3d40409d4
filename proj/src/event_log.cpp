#include "canesim/event_log.hpp"

#include <sstream>

namespace canesim {

void EventLog::push(double time_s, std::string phase, std::string event, nlohmann::json payload)
{
    records_.push_back({time_s, std::move(phase), std::move(event), std::move(payload)});
}

std::size_t EventLog::count(const std::string& event) const
{
    std::size_t n = 0;
    for (const EventRecord& r : records_)
        if (r.event == event) ++n;
    return n;
}

const EventRecord* EventLog::find(const std::string& event) const
{
    for (const EventRecord& r : records_)
        if (r.event == event) return &r;
    return nullptr;
}

std::string EventLog::to_ndjson() const
{
    std::string out;
    for (const EventRecord& r : records_) {
        const nlohmann::json j{{"time", r.time_s}, {"phase", r.phase}, {"event", r.event}, {"payload", r.payload}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

EventLog EventLog::from_ndjson(const std::string& text)
{
    EventLog log;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        log.push(j.at("time").get<double>(), j.at("phase").get<std::string>(),
                 j.at("event").get<std::string>(), j.at("payload"));
    }
    return log;
}

} // namespace canesim
