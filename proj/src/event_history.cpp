#include "hestia/event_history.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace hestia {

const char* to_string(RecordSource source) {
    switch (source) {
    case RecordSource::caption_eviction: return "caption_eviction";
    case RecordSource::planner_note: return "planner_note";
    case RecordSource::instruction_echo: return "instruction_echo";
    }
    return "?";
}

std::set<std::string> token_set(const std::string& text) {
    std::set<std::string> tokens;
    std::string current;
    for (char ch : text) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        } else if (!current.empty()) {
            tokens.insert(current);
            current.clear();
        }
    }
    if (!current.empty()) tokens.insert(current);
    return tokens;
}

double jaccard(const std::string& a, const std::string& b) {
    std::set<std::string> ta = token_set(a);
    std::set<std::string> tb = token_set(b);
    if (ta.empty() && tb.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : ta) inter += tb.count(t);
    std::size_t uni = ta.size() + tb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::uint64_t EventHistory::record(Tick start, Tick end, std::string caption, bool urgent,
                                   RecordSource source) {
    if (caption.empty()) throw ValidationError("event record: caption must be non-empty");
    if (start > end) throw ValidationError("event record: start > end");
    EventRecord rec{next_seq_++, start, end, std::move(caption), urgent, source};
    records_.push_back(std::move(rec));
    return records_.back().seq;
}

std::vector<ScoredRecord> EventHistory::retrieve(const std::string& query, std::size_t k) const {
    if (k == 0) throw ValidationError("retrieve: k must be positive");
    std::vector<ScoredRecord> scored;
    scored.reserve(records_.size());
    for (const auto& rec : records_) {
        scored.push_back({rec, jaccard(query, rec.caption)});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const ScoredRecord& a, const ScoredRecord& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.record.end != b.record.end) return a.record.end > b.record.end;
        return a.record.seq > b.record.seq;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

std::vector<std::string> EventHistory::dump_lines() const {
    std::vector<std::string> lines;
    for (const auto& r : records_) {
        lines.push_back("event|" + std::to_string(r.seq) + "|" + std::to_string(r.start) + "-" +
                        std::to_string(r.end) + "|" + to_string(r.source) + "|urgent=" +
                        (r.urgent ? "1" : "0") + "|" + r.caption);
    }
    return lines;
}

namespace {

std::string urgent_line(const EventRecord& r) {
    return "U[" + std::to_string(r.start) + "-" + std::to_string(r.end) + "] " + r.caption + "\n";
}

std::string retrieved_line(const ScoredRecord& r) {
    char score[32];
    std::snprintf(score, sizeof(score), "%.6f", r.score);
    return "R[" + std::string(score) + "] " + r.record.caption + "\n";
}

} // namespace

std::string ContextBundle::serialize() const {
    std::string out = "Q: " + query + "\n";
    for (const auto& r : urgent) out += urgent_line(r);
    for (const auto& r : retrieved) out += retrieved_line(r);
    return out;
}

ContextBundle assemble_context(const std::string& query, const EventHistory& history, Tick now,
                               const ContextConfig& cfg) {
    ContextBundle bundle;
    bundle.query = query;
    std::size_t used = query.size() + 4; // "Q: " + newline
    if (cfg.budget <= used) {
        throw ValidationError("assemble_context: budget must exceed the query line");
    }

    // Urgent records inside the horizon, newest first.
    Tick floor = now >= cfg.urgent_horizon ? now - cfg.urgent_horizon : 0;
    std::vector<EventRecord> urgent;
    for (const auto& r : history.records()) {
        if (r.urgent && r.end >= floor) urgent.push_back(r);
    }
    std::stable_sort(urgent.begin(), urgent.end(), [](const EventRecord& a, const EventRecord& b) {
        if (a.end != b.end) return a.end > b.end;
        return a.seq > b.seq;
    });

    std::size_t urgent_total = 0;
    for (const auto& r : urgent) urgent_total += urgent_line(r).size();
    // Oldest urgent items are dropped when they alone blow the budget.
    while (!urgent.empty() && used + urgent_total > cfg.budget) {
        urgent_total -= urgent_line(urgent.back()).size();
        urgent.pop_back();
        bundle.truncated = true;
    }
    bundle.urgent = urgent;
    used += urgent_total;

    std::set<std::uint64_t> included;
    for (const auto& r : bundle.urgent) included.insert(r.seq);

    // Greedy score-order prefix: stop at the first record that does not fit.
    for (const auto& sr : history.retrieve(query, std::max<std::size_t>(cfg.retrieve_k, 1))) {
        if (included.count(sr.record.seq)) continue;
        std::size_t line = retrieved_line(sr).size();
        if (used + line > cfg.budget) break;
        bundle.retrieved.push_back(sr);
        used += line;
    }
    return bundle;
}

} // namespace hestia
