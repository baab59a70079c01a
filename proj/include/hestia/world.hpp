#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hestia/frame.hpp"
#include "hestia/tools.hpp"
#include "hestia/types.hpp"

namespace hestia {

// Ground-truth placement. held objects use rel=held_by, anchor=robot.
struct WorldObject {
    std::string id;
    std::string cls;
    std::string room;
    std::string rel = "near";
    std::string anchor = "floor";
    std::map<std::string, std::string> attrs;
    bool is_device = false;
    std::map<std::string, std::vector<std::string>> level_ranges; // attr -> allowed values
};

struct Disturbance {
    Tick at = 0;
    std::string kind; // move_object | add_object | remove_object | set_attribute | set_device
    json detail;

    static Disturbance parse(const json& doc); // throws ValidationError
    json to_json() const;
};

struct WorldDef {
    std::vector<std::string> rooms;
    std::vector<std::pair<std::string, std::string>> adjacency; // empty => complete graph
    std::string robot_room;
    std::vector<std::string> robot_holding;
    std::vector<WorldObject> objects; // devices included, is_device set
};

// Result of starting a command: either a rejection reason, or an in-flight
// motion handle plus any immediate output text (web answers, speech).
struct CommandStart {
    bool rejected = false;
    std::string reason;
    std::uint64_t motion = 0;
    std::string output;
};

// Ground truth the agent never reads directly: the runtime renders frames
// from it, and tools mutate it. Fixed motion timings keep traces exact:
// one room-hop per 10 ticks, grasp/place 5 ticks, photo 2, device changes
// land on the next tick.
class World {
public:
    World() = default;
    World(const WorldDef& def, const std::map<std::string, std::string>& knowledge);

    void step(Tick now); // applies motions finishing at or before now
    Frame render_frame(std::uint64_t frame_index, Tick now) const;

    CommandStart start_command(const Command& cmd, Tick now);
    bool has_motion(std::uint64_t id) const;
    void cancel_motions(TaskId task);
    bool any_motion() const { return !motions_.empty(); }

    void apply_disturbance(const Disturbance& d); // throws ValidationError on bad refs

    // Ground-truth accessors for convergence checks and tests.
    const std::string& robot_room() const { return robot_room_; }
    const std::vector<std::string>& holding() const { return holding_; }
    const std::set<std::string>& photos() const { return photos_; }
    bool has_object(const std::string& id) const { return objects_.count(id) > 0; }
    const WorldObject* object(const std::string& id) const;
    std::set<std::string> relation_set() const; // "rel(subject,anchor)" strings
    std::size_t object_count() const { return objects_.size(); }
    bool has_room(const std::string& room) const;
    std::string device_state(const std::string& id, const std::string& attr) const;

    struct Timings {
        Tick nav_per_hop = 10;
        Tick grasp = 5;
        Tick place = 5;
        Tick photo = 2;
        Tick device = 1;
        Tick open_loop = 1;
    };
    Timings& timings() { return timings_; }

private:
    struct Motion {
        std::uint64_t id = 0;
        TaskId task = 0;
        std::string kind; // navigate | grasp | place | photo | device | open_loop
        Tick finish = 0;
        std::vector<std::string> path; // navigate: remaining rooms
        Tick hop_finish = 0;
        std::string object, target, attr, value;
        std::string placement_room, placement_rel, placement_anchor; // grasp snapshot
    };

    std::vector<std::string> shortest_path(const std::string& from, const std::string& to) const;
    void finish_motion(Motion& m);
    void check_conservation() const;

    std::map<std::string, WorldObject> objects_;
    std::vector<std::string> rooms_;
    std::map<std::string, std::set<std::string>> adjacency_;
    std::string robot_room_;
    std::vector<std::string> holding_;
    std::size_t hold_capacity_ = 1;
    std::set<std::string> photos_;
    std::map<std::string, std::string> knowledge_;
    std::vector<Motion> motions_;
    std::uint64_t next_motion_ = 1;
    long long expected_objects_ = 0;
    Timings timings_;
};

} // namespace hestia
