#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hestia/predicates.hpp"
#include "hestia/types.hpp"

namespace hestia {

enum class TaskKind { passive, active, scheduled };
enum class TaskStatus { pending, ready, executing, interrupted, completed, failed, cancelled };
enum class Category { clean_debris, organize_item, safety_check, other };

const char* to_string(TaskKind kind);
const char* to_string(TaskStatus status);
const char* to_string(Category category);
std::optional<TaskKind> task_kind_from(const std::string& name);
std::optional<Category> category_from(const std::string& name);

inline bool is_terminal(TaskStatus s) {
    return s == TaskStatus::completed || s == TaskStatus::failed || s == TaskStatus::cancelled;
}

struct ScheduleSpec {
    enum class Mode { at, after, every };
    Mode mode = Mode::at;
    Tick at_tick = 0;                // at: absolute due tick
    Tick delay = 0;                  // after: delay from registration
    Tick period = 0;                 // every: period >= 1
    std::optional<Tick> first_at;    // every: phase; defaults to registration tick
    std::optional<Tick> end;         // every: last tick a firing may be due
    std::optional<Tick> last_fired;  // last due tick already fired

    json to_json() const;
};

// One sub-step of a task's program: a command template, optionally guarded.
// A false guard at issue time skips the step.
struct Step {
    std::string id;
    std::string tool;
    std::string op;
    json args = json::object();
    std::optional<Predicate> when;
};

struct TaskRecord {
    TaskId id = 0;
    TaskKind kind = TaskKind::passive;
    std::string description;
    std::string situation; // room/surface where the task is expected to occur
    Category category = Category::other;
    int priority = 50; // 0..100
    std::set<TaskId> deps;
    TaskStatus status = TaskStatus::pending;
    Tick created_at = 0;
    std::optional<ScheduleSpec> schedule; // present => timer template
    bool interruptible = true;
    std::vector<std::string> resume_context; // completed sub-step ids
    std::optional<Predicate> postcondition;
    std::optional<Tick> deadline_ticks;

    std::vector<Step> steps;
    std::set<std::string> resource_tags; // union of step tools' tags + claims
    bool dispatched_once = false;
    Tick first_dispatched = 0;
    Tick finalized_at = 0;
    TaskId template_id = 0; // for timer instantiations

    bool is_template() const { return schedule.has_value(); }
};

} // namespace hestia
