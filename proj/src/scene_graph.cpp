#include "hestia/scene_graph.hpp"

#include <algorithm>

namespace hestia {

json SceneDelta::to_json() const {
    auto edge_names = [](const std::vector<SceneEdge>& edges) {
        json arr = json::array();
        for (const auto& e : edges) arr.push_back(e.str());
        return arr;
    };
    json out;
    out["added"] = added_nodes;
    out["removed"] = removed_nodes;
    out["changed"] = changed_nodes;
    out["added_edges"] = edge_names(added_edges);
    out["removed_edges"] = edge_names(removed_edges);
    return out;
}

const SceneNode* SceneGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

std::string SceneGraph::robot_room() const {
    const SceneNode* r = node(kRobotId);
    return r ? r->room : std::string{};
}

SceneDelta SceneGraph::apply_frame(const Frame& frame) {
    SceneDelta delta;
    const std::string& room = frame.room;

    std::set<std::string> observed_ids;
    for (const auto& obs : frame.observations) observed_ids.insert(obs.object_id);

    // Nodes believed in this room but no longer seen there.
    std::vector<std::string> to_remove;
    for (const auto& [id, n] : nodes_) {
        if (n.room == room && !observed_ids.count(id)) to_remove.push_back(id);
    }
    for (const auto& id : to_remove) {
        nodes_.erase(id);
        delta.removed_nodes.push_back(id);
    }

    for (const auto& obs : frame.observations) {
        SceneNode next{obs.object_id, obs.cls, obs.room, obs.attrs};
        auto it = nodes_.find(obs.object_id);
        if (it == nodes_.end()) {
            nodes_.emplace(obs.object_id, std::move(next));
            delta.added_nodes.push_back(obs.object_id);
        } else if (!(it->second == next)) {
            it->second = std::move(next);
            delta.changed_nodes.push_back(obs.object_id);
        }
        ever_observed_.insert(obs.object_id);
    }

    // Placement edges are replaced for every subject touched by this frame:
    // anything observed now, plus anything just removed.
    std::set<std::string> touched = observed_ids;
    for (const auto& id : to_remove) touched.insert(id);

    std::set<SceneEdge> next_edges;
    for (const auto& e : edges_) {
        if (!touched.count(e.subject)) next_edges.insert(e);
    }
    for (const auto& obs : frame.observations) {
        if (obs.rel.empty()) continue;
        next_edges.insert(SceneEdge{obs.object_id, obs.rel, obs.anchor});
    }

    for (const auto& e : edges_) {
        if (!next_edges.count(e)) delta.removed_edges.push_back(e);
    }
    for (const auto& e : next_edges) {
        if (!edges_.count(e)) delta.added_edges.push_back(e);
    }
    edges_ = std::move(next_edges);

    std::sort(delta.added_nodes.begin(), delta.added_nodes.end());
    std::sort(delta.removed_nodes.begin(), delta.removed_nodes.end());
    std::sort(delta.changed_nodes.begin(), delta.changed_nodes.end());
    return delta;
}

std::vector<std::string> SceneGraph::dump_lines() const {
    std::vector<std::string> lines;
    for (const auto& [id, n] : nodes_) {
        std::string attrs;
        for (const auto& [k, v] : n.attrs) {
            if (!attrs.empty()) attrs += ',';
            attrs += k + "=" + v;
        }
        lines.push_back("node|" + id + "|" + n.cls + "|" + n.room + "|" + attrs);
    }
    for (const auto& e : edges_) {
        lines.push_back("edge|" + e.subject + "|" + e.relation + "|" + e.object);
    }
    return lines;
}

} // namespace hestia
