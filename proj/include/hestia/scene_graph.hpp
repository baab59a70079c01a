#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hestia/frame.hpp"
#include "hestia/types.hpp"

namespace hestia {

inline const char* kRobotId = "robot";

struct SceneEdge {
    std::string subject;
    std::string relation; // on | in | near | held_by
    std::string object;

    auto operator<=>(const SceneEdge&) const = default;
    std::string str() const { return relation + "(" + subject + "," + object + ")"; }
};

struct SceneNode {
    std::string id;
    std::string cls;
    std::string room;
    std::map<std::string, std::string> attrs;

    bool operator==(const SceneNode&) const = default;
};

struct SceneDelta {
    std::vector<std::string> added_nodes;
    std::vector<std::string> removed_nodes;
    std::vector<std::string> changed_nodes;
    std::vector<SceneEdge> added_edges;
    std::vector<SceneEdge> removed_edges;

    bool empty() const {
        return added_nodes.empty() && removed_nodes.empty() && changed_nodes.empty() &&
               added_edges.empty() && removed_edges.empty();
    }
    json to_json() const;
};

// Spatial memory: what the agent currently believes about object relations.
// Updated only from frames, one observed room at a time; unobserved rooms
// keep their last-known contents.
class SceneGraph {
public:
    // Replaces the observed room's contents with the frame's and returns the
    // resulting delta. Objects previously believed in that room but absent
    // from the frame are dropped (whereabouts unknown).
    SceneDelta apply_frame(const Frame& frame);

    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }
    const SceneNode* node(const std::string& id) const;
    bool has_edge(const SceneEdge& e) const { return edges_.count(e) > 0; }
    bool has_edge(const std::string& subject, const std::string& relation,
                  const std::string& object) const {
        return has_edge(SceneEdge{subject, relation, object});
    }
    const std::set<SceneEdge>& edges() const { return edges_; }
    const std::map<std::string, SceneNode>& nodes() const { return nodes_; }

    std::string robot_room() const;
    // True once an id has appeared in any frame; postcondition evaluation
    // distinguishes "currently absent" from "never observed".
    bool ever_observed(const std::string& id) const { return ever_observed_.count(id) > 0; }

    // Deterministic node-sorted, edge-sorted line records.
    std::vector<std::string> dump_lines() const;

private:
    std::map<std::string, SceneNode> nodes_;
    std::set<SceneEdge> edges_;
    std::set<std::string> ever_observed_;
};

} // namespace hestia
