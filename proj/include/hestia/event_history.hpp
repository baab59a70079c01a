#pragma once

#include <set>
#include <string>
#include <vector>

#include "hestia/types.hpp"

namespace hestia {

enum class RecordSource { caption_eviction, planner_note, instruction_echo };

const char* to_string(RecordSource source);

struct EventRecord {
    std::uint64_t seq = 0; // insertion order
    Tick start = 0;
    Tick end = 0;
    std::string caption; // non-empty
    bool urgent = false;
    RecordSource source = RecordSource::caption_eviction;
};

struct ScoredRecord {
    EventRecord record;
    double score = 0.0;
};

std::set<std::string> token_set(const std::string& text);
double jaccard(const std::string& a, const std::string& b);

// Time-stamped captions and notes; the retrieval corpus for planner context.
class EventHistory {
public:
    std::uint64_t record(Tick start, Tick end, std::string caption, bool urgent,
                         RecordSource source);

    // Top-k by token-set Jaccard against the query; ties broken by recency
    // (newer end tick first) then by seq (newer first). Returns exactly
    // min(k, size()) records.
    std::vector<ScoredRecord> retrieve(const std::string& query, std::size_t k) const;

    const std::vector<EventRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    std::vector<std::string> dump_lines() const;

private:
    std::vector<EventRecord> records_;
    std::uint64_t next_seq_ = 0;
};

struct ContextConfig {
    std::size_t budget = 4000;     // characters of serialized bundle
    Tick urgent_horizon = 500;     // ticks
    std::size_t retrieve_k = 8;
};

// Budgeted package handed to evaluators: query verbatim, then all recent
// urgency-flagged records (newest first), then retrieved records by score.
// Whole items only; never truncated mid-record.
struct ContextBundle {
    std::string query;
    std::vector<EventRecord> urgent;        // newest first
    std::vector<ScoredRecord> retrieved;    // score order
    bool truncated = false;                 // set when urgent items alone overflow

    std::string serialize() const;
    std::size_t size() const { return serialize().size(); }
};

ContextBundle assemble_context(const std::string& query, const EventHistory& history,
                               Tick now, const ContextConfig& cfg);

} // namespace hestia
