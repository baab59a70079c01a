#include "hestia/predicates.hpp"

#include <map>
#include <sstream>

#include "hestia/scene_graph.hpp"

namespace hestia {

namespace {

bool photo_logged(const SceneGraph& g, const std::string& object) {
    const SceneNode* robot = g.node(kRobotId);
    if (!robot) return false;
    auto it = robot->attrs.find("photos");
    if (it == robot->attrs.end()) return false;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == object) return true;
    }
    return false;
}

PredicateResult known(bool holds) {
    return {holds ? PredicateVerdict::holds : PredicateVerdict::fails, ""};
}

PredicateResult unknown(const std::string& id) {
    return {PredicateVerdict::unknown_object, "object never observed: " + id};
}

} // namespace

PredicateResult eval_predicate(const Predicate& p, const SceneGraph& g) {
    using K = Predicate::Kind;
    switch (p.kind) {
    case K::device_state: {
        if (!g.ever_observed(p.object)) return unknown(p.object);
        const SceneNode* n = g.node(p.object);
        if (!n) return known(false);
        auto it = n->attrs.find(p.attr);
        return known(it != n->attrs.end() && it->second == p.value);
    }
    case K::relation_holds:
        if (!g.ever_observed(p.object)) return unknown(p.object);
        // place() records either "on" or "in" depending on the target; a
        // postcondition naming "on" accepts both containment flavors only
        // when written with relation "on_or_in".
        if (p.relation == "on_or_in") {
            return known(g.has_edge(p.object, "on", p.anchor) ||
                         g.has_edge(p.object, "in", p.anchor));
        }
        return known(g.has_edge(p.object, p.relation, p.anchor));
    case K::relation_absent:
        if (p.relation == "on_or_in") {
            return known(!g.has_edge(p.object, "on", p.anchor) &&
                         !g.has_edge(p.object, "in", p.anchor));
        }
        return known(!g.has_edge(p.object, p.relation, p.anchor));
    case K::object_in_room: {
        if (!g.ever_observed(p.object)) return unknown(p.object);
        const SceneNode* n = g.node(p.object);
        return known(n && n->room == p.room);
    }
    case K::robot_in_room:
        return known(g.robot_room() == p.room);
    case K::photo_taken:
        return known(photo_logged(g, p.object));
    case K::no_object_of_class: {
        for (const auto& [id, n] : g.nodes()) {
            if (n.cls == p.cls && n.room == p.room) return known(false);
        }
        return known(true);
    }
    case K::object_of_class_present: {
        for (const auto& [id, n] : g.nodes()) {
            if (n.cls == p.cls && n.room == p.room) return known(true);
        }
        return known(false);
    }
    case K::all_of: {
        PredicateResult out = known(true);
        for (const auto& c : p.children) {
            PredicateResult r = eval_predicate(c, g);
            if (r.verdict == PredicateVerdict::unknown_object) return r;
            if (r.verdict == PredicateVerdict::fails) out = r;
        }
        return out;
    }
    case K::any_of: {
        PredicateResult out = known(false);
        for (const auto& c : p.children) {
            PredicateResult r = eval_predicate(c, g);
            if (r.holds()) return r;
            if (r.verdict == PredicateVerdict::unknown_object) out = r;
        }
        return out;
    }
    case K::negation: {
        PredicateResult r = eval_predicate(p.children.at(0), g);
        if (r.verdict == PredicateVerdict::unknown_object) return r;
        return known(!r.holds());
    }
    }
    return known(false);
}

namespace {

const std::map<std::string, Predicate::Kind> kKindNames = {
    {"device_state", Predicate::Kind::device_state},
    {"relation_holds", Predicate::Kind::relation_holds},
    {"relation_absent", Predicate::Kind::relation_absent},
    {"object_in_room", Predicate::Kind::object_in_room},
    {"robot_in_room", Predicate::Kind::robot_in_room},
    {"photo_taken", Predicate::Kind::photo_taken},
    {"no_object_of_class", Predicate::Kind::no_object_of_class},
    {"object_of_class_present", Predicate::Kind::object_of_class_present},
    {"all", Predicate::Kind::all_of},
    {"any", Predicate::Kind::any_of},
    {"not", Predicate::Kind::negation},
};

std::string kind_name(Predicate::Kind k) {
    for (const auto& [name, kind] : kKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

std::string need_string(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_string()) {
        throw ValidationError(std::string("predicate: missing string field '") + field + "'");
    }
    return doc[field].get<std::string>();
}

} // namespace

Predicate parse_predicate(const json& doc) {
    if (!doc.is_object() || !doc.contains("pred") || !doc["pred"].is_string()) {
        throw ValidationError("predicate: expected object with string field 'pred'");
    }
    std::string name = doc["pred"].get<std::string>();
    auto it = kKindNames.find(name);
    if (it == kKindNames.end()) throw ValidationError("predicate: unknown kind '" + name + "'");

    Predicate p;
    p.kind = it->second;
    using K = Predicate::Kind;
    switch (p.kind) {
    case K::device_state:
        p.object = need_string(doc, "device");
        p.attr = need_string(doc, "attr");
        p.value = need_string(doc, "value");
        break;
    case K::relation_holds:
    case K::relation_absent:
        p.object = need_string(doc, "subject");
        p.relation = need_string(doc, "relation");
        p.anchor = need_string(doc, "object");
        break;
    case K::object_in_room:
        p.object = need_string(doc, "object");
        p.room = need_string(doc, "room");
        break;
    case K::robot_in_room:
        p.room = need_string(doc, "room");
        break;
    case K::photo_taken:
        p.object = need_string(doc, "object");
        break;
    case K::no_object_of_class:
    case K::object_of_class_present:
        p.cls = need_string(doc, "class");
        p.room = need_string(doc, "room");
        break;
    case K::all_of:
    case K::any_of:
    case K::negation: {
        if (!doc.contains("of") || !doc["of"].is_array() || doc["of"].empty()) {
            throw ValidationError("predicate: '" + name + "' needs non-empty array 'of'");
        }
        for (const auto& child : doc["of"]) p.children.push_back(parse_predicate(child));
        if (p.kind == K::negation && p.children.size() != 1) {
            throw ValidationError("predicate: 'not' takes exactly one child");
        }
        break;
    }
    }
    return p;
}

json Predicate::to_json() const {
    json out;
    out["pred"] = kind_name(kind);
    using K = Predicate::Kind;
    switch (kind) {
    case K::device_state:
        out["device"] = object;
        out["attr"] = attr;
        out["value"] = value;
        break;
    case K::relation_holds:
    case K::relation_absent:
        out["subject"] = object;
        out["relation"] = relation;
        out["object"] = anchor;
        break;
    case K::object_in_room:
        out["object"] = object;
        out["room"] = room;
        break;
    case K::robot_in_room:
        out["room"] = room;
        break;
    case K::photo_taken:
        out["object"] = object;
        break;
    case K::no_object_of_class:
    case K::object_of_class_present:
        out["class"] = cls;
        out["room"] = room;
        break;
    case K::all_of:
    case K::any_of:
    case K::negation: {
        json arr = json::array();
        for (const auto& c : children) arr.push_back(c.to_json());
        out["of"] = arr;
        break;
    }
    }
    return out;
}

} // namespace hestia
