#include "hestia/tools.hpp"

#include "hestia/scene_graph.hpp"

namespace hestia {

namespace {

const char* param_type_name(ParamType t) {
    switch (t) {
    case ParamType::string: return "string";
    case ParamType::integer: return "int";
    case ParamType::object_ref: return "object";
    case ParamType::room_ref: return "room";
    case ParamType::device_ref: return "device";
    }
    return "?";
}

std::optional<ParamType> param_type_from(const std::string& name) {
    if (name == "string") return ParamType::string;
    if (name == "int") return ParamType::integer;
    if (name == "object") return ParamType::object_ref;
    if (name == "room") return ParamType::room_ref;
    if (name == "device") return ParamType::device_ref;
    return std::nullopt;
}

} // namespace

json ToolSpec::to_json() const {
    json out;
    out["name"] = name;
    out["description"] = description;
    json ops_arr = json::array();
    for (const auto& op : ops) {
        json op_doc;
        op_doc["name"] = op.name;
        json params = json::array();
        for (const auto& p : op.params) {
            params.push_back({{"name", p.name}, {"type", param_type_name(p.type)}});
        }
        op_doc["params"] = params;
        ops_arr.push_back(op_doc);
    }
    out["ops"] = ops_arr;
    out["resource_tags"] = resource_tags;
    return out;
}

ToolSpec ToolSpec::parse(const json& doc) {
    std::vector<std::string> issues;
    ToolSpec spec;
    if (!doc.is_object()) throw ValidationError("tool spec: expected object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key != "name" && key != "description" && key != "ops" && key != "resource_tags") {
            issues.push_back("tool spec: unknown field '" + key + "'");
        }
    }
    if (!doc.contains("name") || !doc["name"].is_string() || doc["name"].get<std::string>().empty()) {
        issues.push_back("tool spec: 'name' must be a non-empty string");
    } else {
        spec.name = doc["name"].get<std::string>();
    }
    if (doc.contains("description") && doc["description"].is_string()) {
        spec.description = doc["description"].get<std::string>();
    }
    if (!doc.contains("ops") || !doc["ops"].is_array() || doc["ops"].empty()) {
        issues.push_back("tool spec: 'ops' must be a non-empty array");
    } else {
        std::set<std::string> seen;
        for (const auto& op_doc : doc["ops"]) {
            ToolOp op;
            if (!op_doc.is_object() || !op_doc.contains("name") || !op_doc["name"].is_string()) {
                issues.push_back("tool spec: op needs a string 'name'");
                continue;
            }
            op.name = op_doc["name"].get<std::string>();
            if (!seen.insert(op.name).second) {
                issues.push_back("tool spec: duplicate op name '" + op.name + "'");
            }
            if (op_doc.contains("params")) {
                for (const auto& p_doc : op_doc["params"]) {
                    ToolParam p;
                    if (!p_doc.is_object() || !p_doc.contains("name") || !p_doc.contains("type")) {
                        issues.push_back("tool spec: param needs 'name' and 'type'");
                        continue;
                    }
                    p.name = p_doc["name"].get<std::string>();
                    auto t = param_type_from(p_doc["type"].get<std::string>());
                    if (!t) {
                        issues.push_back("tool spec: unknown param type '" +
                                         p_doc["type"].get<std::string>() + "'");
                        continue;
                    }
                    p.type = *t;
                    op.params.push_back(p);
                }
            }
            spec.ops.push_back(op);
        }
    }
    if (doc.contains("resource_tags")) {
        for (const auto& tag : doc["resource_tags"]) {
            if (tag.is_string()) spec.resource_tags.insert(tag.get<std::string>());
            else issues.push_back("tool spec: resource tags must be strings");
        }
    }
    if (!issues.empty()) throw ValidationError("invalid tool spec", issues);
    return spec;
}

void ToolRegistry::register_tool(ToolSpec spec) {
    if (tools_.count(spec.name)) {
        throw ValidationError("register_tool: '" + spec.name + "' is already registered");
    }
    std::set<std::string> seen;
    for (const auto& op : spec.ops) {
        if (!seen.insert(op.name).second) {
            throw ValidationError("register_tool: duplicate op '" + op.name + "' in '" +
                                  spec.name + "'");
        }
    }
    tools_.emplace(spec.name, std::move(spec));
}

const ToolSpec& ToolRegistry::spec(const std::string& name) const {
    auto it = tools_.find(name);
    if (it == tools_.end()) throw StateError("unknown tool '" + name + "'");
    return it->second;
}

const ToolOp* ToolRegistry::find_op(const std::string& tool, const std::string& op) const {
    auto it = tools_.find(tool);
    if (it == tools_.end()) return nullptr;
    for (const auto& candidate : it->second.ops) {
        if (candidate.name == op) return &candidate;
    }
    return nullptr;
}

std::set<std::string> ToolRegistry::tags_for(const std::string& tool) const {
    auto it = tools_.find(tool);
    return it == tools_.end() ? std::set<std::string>{} : it->second.resource_tags;
}

std::vector<std::string> ToolRegistry::tool_names() const {
    std::vector<std::string> names;
    for (const auto& [name, spec] : tools_) names.push_back(name);
    return names;
}

void ToolRegistry::ensure_mandatory() const {
    for (const char* name : {kNavigationTool, kManipulationTool}) {
        if (!tools_.count(name)) {
            throw StateError(std::string("mandatory tool missing: ") + name);
        }
    }
}

std::optional<std::string> ToolRegistry::schema_check(const Command& cmd) const {
    auto it = tools_.find(cmd.tool);
    if (it == tools_.end()) return "unknown tool '" + cmd.tool + "'";
    const ToolOp* op = find_op(cmd.tool, cmd.op);
    if (!op) return "tool '" + cmd.tool + "' has no op '" + cmd.op + "'";
    if (!cmd.args.is_object()) return "args must be an object";
    std::size_t matched = 0;
    for (const auto& p : op->params) {
        if (!cmd.args.contains(p.name)) return "missing arg '" + p.name + "'";
        const json& v = cmd.args[p.name];
        bool ok = p.type == ParamType::integer ? v.is_number_integer() : v.is_string();
        if (!ok) {
            return "arg '" + p.name + "' must be " +
                   (p.type == ParamType::integer ? "an integer" : "a string");
        }
        ++matched;
    }
    if (cmd.args.size() != matched) return "unexpected extra args";
    return std::nullopt;
}

void register_builtin_tools(ToolRegistry& registry) {
    ToolSpec navigation;
    navigation.name = kNavigationTool;
    navigation.description = "moves the robot between rooms";
    navigation.ops = {{"navigate", {{"room", ParamType::room_ref}}}};
    navigation.resource_tags = {"body"};
    navigation.mandatory = true;
    registry.register_tool(navigation);

    ToolSpec manipulation;
    manipulation.name = kManipulationTool;
    manipulation.description = "grasps, places and photographs objects";
    manipulation.ops = {
        {"grasp", {{"object", ParamType::object_ref}}},
        {"place", {{"object", ParamType::object_ref}, {"target", ParamType::object_ref}}},
        {"photo", {{"target", ParamType::object_ref}}},
    };
    manipulation.resource_tags = {"body"};
    manipulation.mandatory = true;
    registry.register_tool(manipulation);

    ToolSpec iot;
    iot.name = kIotTool;
    iot.description = "one-way smart device control";
    iot.ops = {{"set_device",
                {{"device", ParamType::device_ref},
                 {"attr", ParamType::string},
                 {"value", ParamType::string}}}};
    registry.register_tool(iot);

    ToolSpec web;
    web.name = kWebTool;
    web.description = "fetches answers from the scenario knowledge table";
    web.ops = {{"fetch", {{"topic", ParamType::string}}}};
    web.resource_tags = {"network"};
    registry.register_tool(web);

    ToolSpec speaker;
    speaker.name = kSpeakerTool;
    speaker.description = "text output channel";
    speaker.ops = {{"speak", {{"text", ParamType::string}}}};
    speaker.resource_tags = {"audio"};
    registry.register_tool(speaker);
}

std::optional<std::string> validate_manipulation(const Command& cmd, const SceneGraph& graph,
                                                 const std::set<std::string>& deny_classes) {
    std::string robot_room = graph.robot_room();
    std::vector<std::string> object_args;
    for (const char* key : {"object", "target"}) {
        if (cmd.args.contains(key) && cmd.args[key].is_string()) {
            object_args.push_back(cmd.args[key].get<std::string>());
        }
    }
    for (const auto& id : object_args) {
        const SceneNode* node = graph.node(id);
        if (!node) return "unknown object '" + id + "'";
        if (deny_classes.count(node->cls)) {
            return "deny-listed class '" + node->cls + "' (" + id + ")";
        }
        if (node->room != robot_room) {
            return "unreachable: '" + id + "' is in " + node->room + ", robot is in " + robot_room;
        }
    }
    return std::nullopt;
}

} // namespace hestia
