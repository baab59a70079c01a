#include "hestia/events.hpp"

#include <array>
#include <cstdio>

namespace hestia {

namespace {

constexpr std::array<const char*, 13> kKindNames = {
    "frame_ready",     "instruction_received", "timer_fired",      "proposal_emitted",
    "plan_decided",    "command_issued",       "command_rejected", "task_interrupted",
    "task_resumed",    "task_completed",       "task_failed",      "disturbance_applied",
    "caption_recorded",
};

void dump_value(const json& v, std::string& out) {
    switch (v.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += json(it.key()).dump();
            out += ':';
            dump_value(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& item : v) {
            if (!first) out += ',';
            first = false;
            dump_value(item, out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v.get<double>());
        out += buf;
        break;
    }
    default:
        out += v.dump();
        break;
    }
}

} // namespace

const char* to_string(EventKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> event_kind_from(const std::string& name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (name == kKindNames[i]) return static_cast<EventKind>(i);
    }
    return std::nullopt;
}

json RuntimeEvent::to_json() const {
    json line;
    line["seq"] = seq;
    line["time"] = time;
    line["kind"] = to_string(kind);
    line["payload"] = payload;
    return line;
}

std::string dump_fixed(const json& value) {
    std::string out;
    dump_value(value, out);
    return out;
}

std::uint64_t Trace::append(Tick time, EventKind kind, json payload) {
    RuntimeEvent ev;
    ev.seq = next_seq_++;
    ev.time = time;
    ev.kind = kind;
    ev.payload = std::move(payload);
    events_.push_back(std::move(ev));
    return events_.back().seq;
}

std::string Trace::to_jsonl() const {
    std::string out;
    for (const auto& ev : events_) {
        out += dump_fixed(ev.to_json());
        out += '\n';
    }
    return out;
}

} // namespace hestia
