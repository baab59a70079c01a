#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hestia/task.hpp"

namespace hestia {

struct MemorySnapshot {
    std::vector<TaskRecord> pending;     // pending + ready statuses
    std::vector<TaskRecord> scheduled;   // timer templates
    std::vector<TaskRecord> interrupted;
    std::vector<TaskRecord> executing;
    std::map<TaskStatus, std::size_t> counts;

    std::vector<std::string> dump_lines() const;
};

struct FiredTimer {
    TaskId template_id = 0;
    Tick due = 0;
    TaskId task = 0; // fresh instantiation
};

struct AgingConfig {
    bool enabled = false;
    Tick per_ticks = 100; // +1 priority per this many ticks waited
};

// Houses every task across its lifecycle. Live tasks sit in exactly one of
// the pending / scheduled / interrupted / executing splits; terminal
// statuses are absorbing.
class TaskMemory {
public:
    // Assigns an id when record.id == 0. Throws ValidationError on unknown
    // dependency ids or when the insertion would create a dependency cycle
    // (the message names the cycle's ids).
    TaskId insert_task(TaskRecord record);

    // Evaluator-confirmed edge: task depends on dep. Rejects cycles.
    void add_dependency(TaskId task, TaskId dep);

    // Instantiates every template firing due at or before now, once per due
    // tick. Recurring specs re-arm; at/after fire exactly once.
    std::vector<FiredTimer> trigger_scheduled(Tick now);

    // Tasks in {pending, ready, interrupted} with every dependency completed,
    // ordered by (priority desc, created_at asc, id asc).
    std::vector<TaskRecord> executable_set(Tick now) const;
    std::vector<const TaskRecord*> executable_view(Tick now) const;

    void mark_executing(TaskId id, Tick now);
    void mark_interrupted(TaskId id, std::vector<std::string> resume_context);

    // Absorbing. Returns the ids of dependents cascade-cancelled when the
    // outcome is failed or cancelled.
    std::vector<TaskId> finalize(TaskId id, TaskStatus outcome, Tick now);

    const TaskRecord& task(TaskId id) const;
    TaskRecord& task_mut(TaskId id);
    bool has_task(TaskId id) const { return tasks_.count(id) > 0; }

    std::vector<TaskId> executing_ids() const { return executing_; }
    std::vector<const TaskRecord*> executing_view() const;
    std::vector<const TaskRecord*> interrupted_view() const;

    MemorySnapshot snapshot() const;

    std::size_t created_count() const { return tasks_.size(); }
    std::size_t live_count() const;
    std::size_t terminal_count() const;
    // Live tasks other than timer templates; quiescence ignores templates.
    bool any_live_work() const;
    std::optional<Tick> next_due(Tick now) const;

    int effective_priority(const TaskRecord& rec, Tick now) const;

    void set_aging(AgingConfig aging) { aging_ = aging; }
    void set_priority(TaskId id, int priority);

private:
    std::vector<TaskId>& split_for(const TaskRecord& rec);
    void remove_from_splits(TaskId id);
    bool would_cycle(TaskId from, const std::set<TaskId>& deps,
                     std::vector<TaskId>* cycle) const;

    std::map<TaskId, TaskRecord> tasks_;
    std::map<TaskId, std::vector<TaskId>> dependents_;
    std::vector<TaskId> pending_;
    std::vector<TaskId> scheduled_;
    std::vector<TaskId> interrupted_;
    std::vector<TaskId> executing_;
    TaskId next_id_ = 1;
    AgingConfig aging_;
};

} // namespace hestia
