#include "hestia/task_memory.hpp"

#include <algorithm>
#include <deque>

namespace hestia {

const char* to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::passive: return "passive";
    case TaskKind::active: return "active";
    case TaskKind::scheduled: return "scheduled";
    }
    return "?";
}

const char* to_string(TaskStatus status) {
    switch (status) {
    case TaskStatus::pending: return "pending";
    case TaskStatus::ready: return "ready";
    case TaskStatus::executing: return "executing";
    case TaskStatus::interrupted: return "interrupted";
    case TaskStatus::completed: return "completed";
    case TaskStatus::failed: return "failed";
    case TaskStatus::cancelled: return "cancelled";
    }
    return "?";
}

const char* to_string(Category category) {
    switch (category) {
    case Category::clean_debris: return "clean_debris";
    case Category::organize_item: return "organize_item";
    case Category::safety_check: return "safety_check";
    case Category::other: return "other";
    }
    return "?";
}

std::optional<TaskKind> task_kind_from(const std::string& name) {
    if (name == "passive") return TaskKind::passive;
    if (name == "active") return TaskKind::active;
    if (name == "scheduled") return TaskKind::scheduled;
    return std::nullopt;
}

std::optional<Category> category_from(const std::string& name) {
    if (name == "clean_debris") return Category::clean_debris;
    if (name == "organize_item") return Category::organize_item;
    if (name == "safety_check") return Category::safety_check;
    if (name == "other") return Category::other;
    return std::nullopt;
}

json ScheduleSpec::to_json() const {
    json out;
    switch (mode) {
    case Mode::at: out["at"] = at_tick; break;
    case Mode::after: out["after"] = delay; break;
    case Mode::every:
        out["every"] = period;
        if (first_at) out["first_at"] = *first_at;
        if (end) out["end"] = *end;
        break;
    }
    return out;
}

bool TaskMemory::would_cycle(TaskId from, const std::set<TaskId>& deps,
                             std::vector<TaskId>* cycle) const {
    // DFS from each dependency; a path back to `from` closes a cycle.
    for (TaskId root : deps) {
        if (root == from) {
            if (cycle) *cycle = {from};
            return true;
        }
        std::deque<std::vector<TaskId>> paths{{root}};
        while (!paths.empty()) {
            std::vector<TaskId> path = std::move(paths.front());
            paths.pop_front();
            auto it = tasks_.find(path.back());
            if (it == tasks_.end()) continue;
            for (TaskId next : it->second.deps) {
                if (next == from) {
                    if (cycle) {
                        *cycle = path;
                        cycle->push_back(from);
                    }
                    return true;
                }
                std::vector<TaskId> extended = path;
                extended.push_back(next);
                paths.push_back(std::move(extended));
            }
        }
    }
    return false;
}

TaskId TaskMemory::insert_task(TaskRecord record) {
    if (record.id == 0) record.id = next_id_++;
    else next_id_ = std::max(next_id_, record.id + 1);
    if (tasks_.count(record.id)) {
        throw ValidationError("insert_task: duplicate id " + std::to_string(record.id));
    }
    if (record.priority < 0 || record.priority > 100) {
        throw ValidationError("insert_task: priority out of [0,100]");
    }
    for (TaskId dep : record.deps) {
        if (dep != record.id && !tasks_.count(dep)) {
            throw ValidationError("insert_task: unknown dependency id " + std::to_string(dep));
        }
    }
    std::vector<TaskId> cycle;
    if (would_cycle(record.id, record.deps, &cycle)) {
        std::string ids;
        for (TaskId id : cycle) {
            if (!ids.empty()) ids += ",";
            ids += std::to_string(id);
        }
        throw ValidationError("insert_task: dependency cycle [" + ids + "]");
    }

    if (record.is_template()) {
        record.kind = TaskKind::scheduled;
        record.status = TaskStatus::pending;
    }
    TaskId id = record.id;
    for (TaskId dep : record.deps) dependents_[dep].push_back(id);
    split_for(record).push_back(id);
    tasks_.emplace(id, std::move(record));
    return id;
}

void TaskMemory::add_dependency(TaskId task, TaskId dep) {
    TaskRecord& rec = task_mut(task);
    if (!tasks_.count(dep)) {
        throw ValidationError("add_dependency: unknown dependency id " + std::to_string(dep));
    }
    if (rec.deps.count(dep)) return;
    std::set<TaskId> probe{dep};
    if (would_cycle(task, probe, nullptr)) {
        throw ValidationError("add_dependency: edge " + std::to_string(task) + " -> " +
                              std::to_string(dep) + " would create a cycle");
    }
    rec.deps.insert(dep);
    dependents_[dep].push_back(task);
}

std::vector<FiredTimer> TaskMemory::trigger_scheduled(Tick now) {
    std::vector<FiredTimer> fired;
    std::vector<TaskId> templates = scheduled_;
    for (TaskId id : templates) {
        TaskRecord& tpl = tasks_.at(id);
        ScheduleSpec& spec = *tpl.schedule;

        std::vector<Tick> due;
        switch (spec.mode) {
        case ScheduleSpec::Mode::at:
            if (!spec.last_fired && spec.at_tick <= now) due.push_back(spec.at_tick);
            break;
        case ScheduleSpec::Mode::after: {
            Tick when = tpl.created_at + spec.delay;
            if (!spec.last_fired && when <= now) due.push_back(when);
            break;
        }
        case ScheduleSpec::Mode::every: {
            Tick start = spec.first_at.value_or(tpl.created_at);
            Tick next = spec.last_fired ? *spec.last_fired + spec.period : start;
            while (next <= now && (!spec.end || next <= *spec.end)) {
                due.push_back(next);
                next += spec.period;
            }
            break;
        }
        }

        for (Tick due_tick : due) {
            TaskRecord inst;
            inst.kind = TaskKind::scheduled;
            inst.description = tpl.description;
            inst.situation = tpl.situation;
            inst.category = tpl.category;
            inst.priority = tpl.priority;
            inst.status = TaskStatus::ready;
            inst.created_at = now;
            inst.interruptible = tpl.interruptible;
            inst.postcondition = tpl.postcondition;
            inst.deadline_ticks = tpl.deadline_ticks;
            inst.steps = tpl.steps;
            inst.resource_tags = tpl.resource_tags;
            inst.template_id = id;
            TaskId inst_id = insert_task(std::move(inst));
            fired.push_back(FiredTimer{id, due_tick, inst_id});
            spec.last_fired = due_tick;
        }
    }
    return fired;
}

int TaskMemory::effective_priority(const TaskRecord& rec, Tick now) const {
    if (!aging_.enabled || aging_.per_ticks == 0) return rec.priority;
    int ceiling = 100;
    if (rec.priority <= 29) ceiling = 29;
    else if (rec.priority <= 59) ceiling = 59;
    else if (rec.priority <= 79) ceiling = 79;
    Tick waited = now > rec.created_at ? now - rec.created_at : 0;
    int aged = rec.priority + static_cast<int>(waited / aging_.per_ticks);
    return std::min(aged, ceiling);
}

std::vector<const TaskRecord*> TaskMemory::executable_view(Tick now) const {
    std::vector<const TaskRecord*> out;
    auto consider = [&](TaskId id) {
        const TaskRecord& rec = tasks_.at(id);
        if (rec.is_template()) return;
        for (TaskId dep : rec.deps) {
            if (tasks_.at(dep).status != TaskStatus::completed) return;
        }
        out.push_back(&rec);
    };
    for (TaskId id : pending_) consider(id);
    for (TaskId id : interrupted_) consider(id);
    std::stable_sort(out.begin(), out.end(), [&](const TaskRecord* a, const TaskRecord* b) {
        int pa = effective_priority(*a, now);
        int pb = effective_priority(*b, now);
        if (pa != pb) return pa > pb;
        if (a->created_at != b->created_at) return a->created_at < b->created_at;
        return a->id < b->id;
    });
    return out;
}

std::vector<TaskRecord> TaskMemory::executable_set(Tick now) const {
    std::vector<TaskRecord> out;
    for (const TaskRecord* rec : executable_view(now)) out.push_back(*rec);
    return out;
}

void TaskMemory::mark_executing(TaskId id, Tick now) {
    TaskRecord& rec = task_mut(id);
    if (is_terminal(rec.status) || rec.status == TaskStatus::executing) {
        throw StateError("mark_executing: task " + std::to_string(id) + " is " +
                         to_string(rec.status));
    }
    remove_from_splits(id);
    rec.status = TaskStatus::executing;
    if (!rec.dispatched_once) {
        rec.dispatched_once = true;
        rec.first_dispatched = now;
    }
    executing_.push_back(id);
}

void TaskMemory::mark_interrupted(TaskId id, std::vector<std::string> resume_context) {
    TaskRecord& rec = task_mut(id);
    if (rec.status != TaskStatus::executing) {
        throw StateError("mark_interrupted: task " + std::to_string(id) + " is " +
                         to_string(rec.status) + ", not executing");
    }
    if (!rec.interruptible) {
        throw StateError("mark_interrupted: task " + std::to_string(id) + " is not interruptible");
    }
    remove_from_splits(id);
    rec.status = TaskStatus::interrupted;
    rec.resume_context = std::move(resume_context);
    interrupted_.push_back(id);
}

std::vector<TaskId> TaskMemory::finalize(TaskId id, TaskStatus outcome, Tick now) {
    if (outcome != TaskStatus::completed && outcome != TaskStatus::failed &&
        outcome != TaskStatus::cancelled) {
        throw ValidationError("finalize: outcome must be terminal");
    }
    TaskRecord& rec = task_mut(id);
    if (is_terminal(rec.status)) {
        throw StateError("finalize: task " + std::to_string(id) + " already " +
                         to_string(rec.status));
    }
    remove_from_splits(id);
    rec.status = outcome;
    rec.finalized_at = now;
    rec.resume_context.clear();

    std::vector<TaskId> cancelled;
    if (outcome == TaskStatus::failed || outcome == TaskStatus::cancelled) {
        // A dependency that can never complete deadlocks its dependents;
        // cascade-cancel the whole downstream closure.
        std::deque<TaskId> queue{id};
        while (!queue.empty()) {
            TaskId cur = queue.front();
            queue.pop_front();
            auto it = dependents_.find(cur);
            if (it == dependents_.end()) continue;
            for (TaskId dep : it->second) {
                TaskRecord& drec = tasks_.at(dep);
                if (is_terminal(drec.status)) continue;
                remove_from_splits(dep);
                drec.status = TaskStatus::cancelled;
                drec.finalized_at = now;
                drec.resume_context.clear();
                cancelled.push_back(dep);
                queue.push_back(dep);
            }
        }
    }
    return cancelled;
}

const TaskRecord& TaskMemory::task(TaskId id) const {
    auto it = tasks_.find(id);
    if (it == tasks_.end()) throw StateError("unknown task id " + std::to_string(id));
    return it->second;
}

TaskRecord& TaskMemory::task_mut(TaskId id) {
    auto it = tasks_.find(id);
    if (it == tasks_.end()) throw StateError("unknown task id " + std::to_string(id));
    return it->second;
}

std::vector<const TaskRecord*> TaskMemory::executing_view() const {
    std::vector<const TaskRecord*> out;
    for (TaskId id : executing_) out.push_back(&tasks_.at(id));
    return out;
}

std::vector<const TaskRecord*> TaskMemory::interrupted_view() const {
    std::vector<const TaskRecord*> out;
    for (TaskId id : interrupted_) out.push_back(&tasks_.at(id));
    return out;
}

MemorySnapshot TaskMemory::snapshot() const {
    MemorySnapshot snap;
    for (TaskId id : pending_) snap.pending.push_back(tasks_.at(id));
    for (TaskId id : scheduled_) snap.scheduled.push_back(tasks_.at(id));
    for (TaskId id : interrupted_) snap.interrupted.push_back(tasks_.at(id));
    for (TaskId id : executing_) snap.executing.push_back(tasks_.at(id));
    for (const auto& [id, rec] : tasks_) snap.counts[rec.status]++;
    return snap;
}

std::size_t TaskMemory::live_count() const {
    std::size_t n = 0;
    for (const auto& [id, rec] : tasks_) {
        if (!is_terminal(rec.status)) ++n;
    }
    return n;
}

std::size_t TaskMemory::terminal_count() const { return tasks_.size() - live_count(); }

bool TaskMemory::any_live_work() const {
    return !pending_.empty() || !interrupted_.empty() || !executing_.empty();
}

std::optional<Tick> TaskMemory::next_due(Tick now) const {
    std::optional<Tick> soonest;
    for (TaskId id : scheduled_) {
        const TaskRecord& tpl = tasks_.at(id);
        const ScheduleSpec& spec = *tpl.schedule;
        std::optional<Tick> due;
        switch (spec.mode) {
        case ScheduleSpec::Mode::at:
            if (!spec.last_fired) due = spec.at_tick;
            break;
        case ScheduleSpec::Mode::after:
            if (!spec.last_fired) due = tpl.created_at + spec.delay;
            break;
        case ScheduleSpec::Mode::every: {
            Tick next = spec.last_fired ? *spec.last_fired + spec.period
                                        : spec.first_at.value_or(tpl.created_at);
            if (!spec.end || next <= *spec.end) due = next;
            break;
        }
        }
        if (due && (!soonest || *due < *soonest)) soonest = due;
    }
    (void)now;
    return soonest;
}

void TaskMemory::set_priority(TaskId id, int priority) {
    if (priority < 0 || priority > 100) {
        throw ValidationError("set_priority: out of [0,100]");
    }
    task_mut(id).priority = priority;
}

std::vector<TaskId>& TaskMemory::split_for(const TaskRecord& rec) {
    if (rec.is_template()) return scheduled_;
    switch (rec.status) {
    case TaskStatus::pending:
    case TaskStatus::ready: return pending_;
    case TaskStatus::interrupted: return interrupted_;
    case TaskStatus::executing: return executing_;
    default: throw StateError("terminal task has no split");
    }
}

void TaskMemory::remove_from_splits(TaskId id) {
    for (auto* split : {&pending_, &scheduled_, &interrupted_, &executing_}) {
        split->erase(std::remove(split->begin(), split->end(), id), split->end());
    }
}

std::vector<std::string> MemorySnapshot::dump_lines() const {
    std::vector<std::string> lines;
    auto emit = [&](const char* name, const std::vector<TaskRecord>& split) {
        lines.push_back(std::string("split|") + name + "|" + std::to_string(split.size()));
        for (const auto& rec : split) {
            std::string deps;
            for (TaskId dep : rec.deps) {
                if (!deps.empty()) deps += ",";
                deps += std::to_string(dep);
            }
            lines.push_back("task|" + std::to_string(rec.id) + "|" + to_string(rec.kind) + "|" +
                            to_string(rec.status) + "|" + to_string(rec.category) + "|prio=" +
                            std::to_string(rec.priority) + "|created=" +
                            std::to_string(rec.created_at) + "|deps=" + deps + "|" +
                            rec.description);
        }
    };
    emit("pending", pending);
    emit("scheduled", scheduled);
    emit("interrupted", interrupted);
    emit("executing", executing);
    return lines;
}

} // namespace hestia
