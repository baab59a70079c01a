#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hestia/types.hpp"

namespace hestia {

class SceneGraph;

inline const char* kNavigationTool = "navigation";
inline const char* kManipulationTool = "manipulation";
inline const char* kIotTool = "iot";
inline const char* kWebTool = "web";
inline const char* kSpeakerTool = "speaker";

// Parameter semantic types; arguments are schema-checked for presence and
// shape before dispatch. Existence of referenced entities surfaces later
// (manipulation validation or world-side rejection).
enum class ParamType { string, integer, object_ref, room_ref, device_ref };

struct ToolParam {
    std::string name;
    ParamType type = ParamType::string;
};

struct ToolOp {
    std::string name;
    std::vector<ToolParam> params;
};

// A registered one-way capability. There is deliberately no feedback or
// callback field: a tool's effect on the world is observable only through
// subsequent frames.
struct ToolSpec {
    std::string name;
    std::string description;
    std::vector<ToolOp> ops;
    std::set<std::string> resource_tags; // subset of {body, audio, network, device:<id>}
    bool mandatory = false;

    json to_json() const;
    static ToolSpec parse(const json& doc); // throws ValidationError
};

struct Command {
    std::string tool;
    std::string op;
    json args = json::object();
    TaskId task = 0;
    Tick issued_at = 0;
};

class ToolRegistry {
public:
    void register_tool(ToolSpec spec); // duplicate name -> ValidationError
    bool has(const std::string& name) const { return tools_.count(name) > 0; }
    const ToolSpec& spec(const std::string& name) const;
    const ToolOp* find_op(const std::string& tool, const std::string& op) const;
    std::set<std::string> tags_for(const std::string& tool) const;
    std::vector<std::string> tool_names() const;

    // Navigation and manipulation control the robot directly and must be
    // present before any run starts.
    void ensure_mandatory() const; // throws StateError

    // Arity + type conformance. Returns a reason on failure.
    std::optional<std::string> schema_check(const Command& cmd) const;

private:
    std::map<std::string, ToolSpec> tools_;
};

// Installs the built-in simulated tool agents.
void register_builtin_tools(ToolRegistry& registry);

// Safety gate for manipulation commands, evaluated against the agent's scene
// graph: every object argument must be known, in the robot's current room,
// and off the deny list. A rejection is traced but never written to event
// history.
std::optional<std::string> validate_manipulation(const Command& cmd, const SceneGraph& graph,
                                                 const std::set<std::string>& deny_classes);

} // namespace hestia
