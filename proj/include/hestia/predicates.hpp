#pragma once

#include <string>
#include <vector>

#include "hestia/types.hpp"

namespace hestia {

class SceneGraph;

// Goal conditions for tasks and guards for steps, evaluated against the
// scene graph (the agent's view, never ground truth). Kept to a small
// closed vocabulary so completion checking stays decidable.
struct Predicate {
    enum class Kind {
        device_state,     // device attr == value
        relation_holds,   // edge (subject, relation, object) present
        relation_absent,  // edge not present
        object_in_room,   // node's room field
        robot_in_room,
        photo_taken,          // object id in the robot's photo log
        no_object_of_class,   // no node of cls in room
        object_of_class_present,
        all_of,
        any_of,
        negation,
    };

    Kind kind = Kind::relation_holds;
    std::string object;
    std::string relation;
    std::string anchor;
    std::string room;
    std::string cls;
    std::string attr;
    std::string value;
    std::vector<Predicate> children;

    json to_json() const;
};

enum class PredicateVerdict { holds, fails, unknown_object };

struct PredicateResult {
    PredicateVerdict verdict = PredicateVerdict::fails;
    std::string diagnostic;

    bool holds() const { return verdict == PredicateVerdict::holds; }
};

// Positive predicates over an id the agent has never observed come back as
// unknown_object: the agent cannot confirm the state of something it has
// never seen. Absence predicates evaluate structurally.
PredicateResult eval_predicate(const Predicate& p, const SceneGraph& graph);

Predicate parse_predicate(const json& doc); // throws ValidationError

} // namespace hestia
