#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hestia/types.hpp"

namespace hestia {

enum class EventKind {
    frame_ready,
    instruction_received,
    timer_fired,
    proposal_emitted,
    plan_decided,
    command_issued,
    command_rejected,
    task_interrupted,
    task_resumed,
    task_completed,
    task_failed,
    disturbance_applied,
    caption_recorded,
};

const char* to_string(EventKind kind);
std::optional<EventKind> event_kind_from(const std::string& name);

struct RuntimeEvent {
    std::uint64_t seq = 0; // gapless per run; (time, seq) is a strict total order
    Tick time = 0;
    EventKind kind = EventKind::frame_ready;
    json payload;

    json to_json() const;
};

// Renders one json value as a single line with a fixed number format:
// integers as-is, floating values with exactly 6 decimal places. Trace
// golden comparison is byte-exact, so all serialization funnels through
// this writer.
std::string dump_fixed(const json& value);

class Trace {
public:
    std::uint64_t append(Tick time, EventKind kind, json payload);
    const std::vector<RuntimeEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    // One record per line: seq, time, kind, payload.
    std::string to_jsonl() const;

private:
    std::vector<RuntimeEvent> events_;
    std::uint64_t next_seq_ = 0;
};

} // namespace hestia
