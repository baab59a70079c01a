#include "hestia/world.hpp"

#include <algorithm>
#include <deque>

namespace hestia {

Disturbance Disturbance::parse(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw ValidationError("disturbance: expected object with string 'kind'");
    }
    Disturbance d;
    d.kind = doc["kind"].get<std::string>();
    static const std::set<std::string> kinds = {"move_object", "add_object", "remove_object",
                                                "set_attribute", "set_device"};
    if (!kinds.count(d.kind)) throw ValidationError("disturbance: unknown kind '" + d.kind + "'");
    d.detail = doc;
    d.detail.erase("kind");
    return d;
}

json Disturbance::to_json() const {
    json out;
    out["kind"] = kind;
    out["detail"] = detail;
    return out;
}

World::World(const WorldDef& def, const std::map<std::string, std::string>& knowledge)
    : rooms_(def.rooms), robot_room_(def.robot_room), knowledge_(knowledge) {
    for (const auto& [a, b] : def.adjacency) {
        adjacency_[a].insert(b);
        adjacency_[b].insert(a);
    }
    for (const auto& obj : def.objects) {
        objects_.emplace(obj.id, obj);
    }
    for (const auto& id : def.robot_holding) {
        auto it = objects_.find(id);
        if (it == objects_.end()) throw ValidationError("world: held object '" + id + "' unknown");
        it->second.room = robot_room_;
        it->second.rel = "held_by";
        it->second.anchor = kRobotId;
        holding_.push_back(id);
    }
    hold_capacity_ = std::max<std::size_t>(1, holding_.size());
    expected_objects_ = static_cast<long long>(objects_.size());
}

const WorldObject* World::object(const std::string& id) const {
    auto it = objects_.find(id);
    return it == objects_.end() ? nullptr : &it->second;
}

bool World::has_room(const std::string& room) const {
    return std::find(rooms_.begin(), rooms_.end(), room) != rooms_.end();
}

std::string World::device_state(const std::string& id, const std::string& attr) const {
    const WorldObject* obj = object(id);
    if (!obj) return {};
    auto it = obj->attrs.find(attr);
    return it == obj->attrs.end() ? std::string{} : it->second;
}

std::set<std::string> World::relation_set() const {
    std::set<std::string> out;
    for (const auto& [id, obj] : objects_) {
        out.insert(obj.rel + "(" + id + "," + obj.anchor + ")");
    }
    return out;
}

std::vector<std::string> World::shortest_path(const std::string& from,
                                              const std::string& to) const {
    if (from == to) return {};
    // Default topology: every pair of rooms adjacent.
    if (adjacency_.empty()) return {to};
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = adjacency_.find(cur);
        if (it == adjacency_.end()) continue;
        for (const auto& next : it->second) {
            if (parent.count(next)) continue;
            parent[next] = cur;
            if (next == to) {
                std::vector<std::string> path;
                for (std::string hop = to; hop != from; hop = parent[hop]) path.push_back(hop);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(next);
        }
    }
    return {}; // unreachable; caller treats same as 0-hop
}

CommandStart World::start_command(const Command& cmd, Tick now) {
    auto reject = [](std::string reason) {
        CommandStart out;
        out.rejected = true;
        out.reason = std::move(reason);
        return out;
    };

    Motion m;
    m.id = next_motion_++;
    m.task = cmd.task;
    CommandStart out;
    out.motion = m.id;

    if (cmd.tool == kNavigationTool && cmd.op == "navigate") {
        std::string room = cmd.args["room"].get<std::string>();
        if (!has_room(room)) return reject("unknown room '" + room + "'");
        m.kind = "navigate";
        m.path = shortest_path(robot_room_, room);
        m.hop_finish = now + timings_.nav_per_hop;
        m.finish = m.path.empty() ? now + 1
                                  : now + timings_.nav_per_hop * static_cast<Tick>(m.path.size());
    } else if (cmd.tool == kManipulationTool && cmd.op == "grasp") {
        std::string id = cmd.args["object"].get<std::string>();
        const WorldObject* obj = object(id);
        if (!obj) return reject("no such object '" + id + "'");
        if (obj->rel == "held_by") return reject("'" + id + "' is already held");
        if (holding_.size() >= hold_capacity_) return reject("hands full");
        m.kind = "grasp";
        m.object = id;
        // The grasp targets where the object was when the hand started
        // moving; if a disturbance relocates it mid-motion the hand closes
        // on air and the step retries.
        m.placement_room = obj->room;
        m.placement_rel = obj->rel;
        m.placement_anchor = obj->anchor;
        m.finish = now + timings_.grasp;
    } else if (cmd.tool == kManipulationTool && cmd.op == "place") {
        std::string id = cmd.args["object"].get<std::string>();
        std::string target = cmd.args["target"].get<std::string>();
        if (std::find(holding_.begin(), holding_.end(), id) == holding_.end()) {
            return reject("'" + id + "' is not held");
        }
        if (!has_object(target)) return reject("no such target '" + target + "'");
        m.kind = "place";
        m.object = id;
        m.target = target;
        m.finish = now + timings_.place;
    } else if (cmd.tool == kManipulationTool && cmd.op == "photo") {
        std::string target = cmd.args["target"].get<std::string>();
        if (!has_object(target)) return reject("no such target '" + target + "'");
        m.kind = "photo";
        m.target = target;
        m.finish = now + timings_.photo;
    } else if (cmd.tool == kIotTool && cmd.op == "set_device") {
        std::string id = cmd.args["device"].get<std::string>();
        const WorldObject* dev = object(id);
        if (!dev || !dev->is_device) return reject("no such device '" + id + "'");
        std::string attr = cmd.args["attr"].get<std::string>();
        std::string value = cmd.args["value"].get<std::string>();
        auto range = dev->level_ranges.find(attr);
        if (range != dev->level_ranges.end() &&
            std::find(range->second.begin(), range->second.end(), value) == range->second.end()) {
            return reject("value '" + value + "' out of range for " + id + "." + attr);
        }
        m.kind = "device";
        m.object = id;
        m.attr = attr;
        m.value = value;
        m.finish = now + timings_.device;
    } else if (cmd.tool == kWebTool && cmd.op == "fetch") {
        std::string topic = cmd.args["topic"].get<std::string>();
        auto it = knowledge_.find(topic);
        out.output = it == knowledge_.end() ? "no data for '" + topic + "'" : it->second;
        m.kind = "open_loop";
        m.finish = now + timings_.open_loop;
    } else if (cmd.tool == kSpeakerTool && cmd.op == "speak") {
        std::string text = cmd.args["text"].get<std::string>();
        // Speech templates may reference the knowledge table: "{weather}".
        std::string resolved;
        for (std::size_t i = 0; i < text.size();) {
            if (text[i] == '{') {
                auto close = text.find('}', i);
                if (close != std::string::npos) {
                    std::string key = text.substr(i + 1, close - i - 1);
                    auto it = knowledge_.find(key);
                    resolved += it == knowledge_.end() ? "" : it->second;
                    i = close + 1;
                    continue;
                }
            }
            resolved += text[i++];
        }
        out.output = resolved;
        m.kind = "open_loop";
        m.finish = now + timings_.open_loop;
    } else {
        // Custom tools run open-loop; an integer "ticks" arg sets duration.
        m.kind = "open_loop";
        Tick duration = timings_.open_loop;
        if (cmd.args.contains("ticks") && cmd.args["ticks"].is_number_integer()) {
            duration = std::max<Tick>(1, cmd.args["ticks"].get<Tick>());
        }
        m.finish = now + duration;
    }

    motions_.push_back(std::move(m));
    return out;
}

void World::finish_motion(Motion& m) {
    if (m.kind == "grasp") {
        auto it = objects_.find(m.object);
        if (it == objects_.end()) return;
        WorldObject& obj = it->second;
        bool unchanged = obj.room == m.placement_room && obj.rel == m.placement_rel &&
                         obj.anchor == m.placement_anchor;
        if (unchanged && obj.room == robot_room_ && holding_.size() < hold_capacity_) {
            obj.rel = "held_by";
            obj.anchor = kRobotId;
            holding_.push_back(m.object);
        }
    } else if (m.kind == "place") {
        auto held = std::find(holding_.begin(), holding_.end(), m.object);
        auto target = objects_.find(m.target);
        if (held == holding_.end() || target == objects_.end()) return;
        if (target->second.room != robot_room_) return; // target wandered off; step retries
        WorldObject& obj = objects_.at(m.object);
        obj.room = robot_room_;
        auto container = target->second.attrs.find("container");
        obj.rel = container != target->second.attrs.end() && container->second == "true" ? "in"
                                                                                         : "on";
        obj.anchor = m.target;
        holding_.erase(held);
    } else if (m.kind == "photo") {
        auto it = objects_.find(m.target);
        if (it != objects_.end() && it->second.room == robot_room_) {
            photos_.insert(m.target);
        }
    } else if (m.kind == "device") {
        auto it = objects_.find(m.object);
        if (it != objects_.end()) it->second.attrs[m.attr] = m.value;
    }
    // open_loop: nothing to apply
}

void World::step(Tick now) {
    // Navigation advances hop by hop so interruption leaves the robot in the
    // last room it reached.
    for (auto& m : motions_) {
        if (m.kind != "navigate") continue;
        while (!m.path.empty() && m.hop_finish <= now) {
            robot_room_ = m.path.front();
            // Held objects travel with the robot.
            for (const auto& id : holding_) objects_.at(id).room = robot_room_;
            m.path.erase(m.path.begin());
            m.hop_finish += timings_.nav_per_hop;
        }
    }
    std::vector<Motion> done;
    for (auto it = motions_.begin(); it != motions_.end();) {
        bool finished = it->kind == "navigate" ? it->path.empty() && it->finish <= now
                                               : it->finish <= now;
        if (finished) {
            done.push_back(*it);
            it = motions_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& m : done) finish_motion(m);
    check_conservation();
}

void World::check_conservation() const {
    if (static_cast<long long>(objects_.size()) != expected_objects_) {
        throw StateError("world: object conservation violated");
    }
}

bool World::has_motion(std::uint64_t id) const {
    for (const auto& m : motions_) {
        if (m.id == id) return true;
    }
    return false;
}

void World::cancel_motions(TaskId task) {
    motions_.erase(std::remove_if(motions_.begin(), motions_.end(),
                                  [&](const Motion& m) { return m.task == task; }),
                   motions_.end());
}

Frame World::render_frame(std::uint64_t frame_index, Tick now) const {
    Frame frame;
    frame.frame_index = frame_index;
    frame.time = now;
    frame.room = robot_room_;

    for (const auto& [id, obj] : objects_) {
        if (obj.room != robot_room_) continue;
        Observation obs;
        obs.object_id = id;
        obs.cls = obj.cls;
        obs.room = obj.room;
        obs.attrs = obj.attrs;
        obs.rel = obj.rel;
        obs.anchor = obj.anchor;
        frame.observations.push_back(std::move(obs));
    }

    Observation self;
    self.object_id = kRobotId;
    self.cls = "robot";
    self.room = robot_room_;
    std::string held;
    for (const auto& id : holding_) {
        if (!held.empty()) held += ",";
        held += id;
    }
    std::string shots;
    for (const auto& id : photos_) {
        if (!shots.empty()) shots += ",";
        shots += id;
    }
    self.attrs["holding"] = held;
    self.attrs["photos"] = shots;
    frame.observations.push_back(std::move(self));

    std::sort(frame.observations.begin(), frame.observations.end(),
              [](const Observation& a, const Observation& b) { return a.object_id < b.object_id; });
    return frame;
}

void World::apply_disturbance(const Disturbance& d) {
    const json& det = d.detail;
    auto need = [&](const char* field) -> std::string {
        if (!det.contains(field) || !det[field].is_string()) {
            throw ValidationError(std::string("disturbance ") + d.kind + ": missing '" + field + "'");
        }
        return det[field].get<std::string>();
    };

    if (d.kind == "move_object") {
        std::string id = need("object");
        auto it = objects_.find(id);
        if (it == objects_.end()) throw ValidationError("disturbance: unknown object '" + id + "'");
        std::string room = need("room");
        if (!has_room(room)) throw ValidationError("disturbance: unknown room '" + room + "'");
        if (it->second.rel == "held_by") {
            holding_.erase(std::remove(holding_.begin(), holding_.end(), id), holding_.end());
        }
        it->second.room = room;
        it->second.rel = det.contains("rel") ? det["rel"].get<std::string>() : "near";
        it->second.anchor = det.contains("anchor") ? det["anchor"].get<std::string>() : "floor";
    } else if (d.kind == "add_object") {
        WorldObject obj;
        obj.id = need("object");
        if (objects_.count(obj.id)) {
            throw ValidationError("disturbance: object '" + obj.id + "' already exists");
        }
        obj.cls = need("class");
        obj.room = need("room");
        if (!has_room(obj.room)) throw ValidationError("disturbance: unknown room '" + obj.room + "'");
        obj.rel = det.contains("rel") ? det["rel"].get<std::string>() : "near";
        obj.anchor = det.contains("anchor") ? det["anchor"].get<std::string>() : "floor";
        if (det.contains("attrs")) {
            for (auto it = det["attrs"].begin(); it != det["attrs"].end(); ++it) {
                obj.attrs[it.key()] = it.value().get<std::string>();
            }
        }
        objects_.emplace(obj.id, obj);
        ++expected_objects_;
    } else if (d.kind == "remove_object") {
        std::string id = need("object");
        auto it = objects_.find(id);
        if (it == objects_.end()) throw ValidationError("disturbance: unknown object '" + id + "'");
        holding_.erase(std::remove(holding_.begin(), holding_.end(), id), holding_.end());
        objects_.erase(it);
        --expected_objects_;
    } else if (d.kind == "set_attribute" || d.kind == "set_device") {
        std::string id = need(d.kind == "set_device" ? "device" : "object");
        auto it = objects_.find(id);
        if (it == objects_.end()) throw ValidationError("disturbance: unknown entity '" + id + "'");
        it->second.attrs[need("attr")] = need("value");
    } else {
        throw ValidationError("disturbance: unknown kind '" + d.kind + "'");
    }
}

} // namespace hestia
