#pragma once

#include <map>
#include <string>
#include <vector>

#include "hestia/types.hpp"

namespace hestia {

// One observed entity in a frame. Coarse position = (rel, anchor), where
// rel is one of the closed relation vocabulary {on, in, near, held_by} and
// anchor is another object id, "floor", or "robot". The robot's own
// self-observation uses an empty rel.
struct Observation {
    std::string object_id;
    std::string cls;
    std::string room;
    std::map<std::string, std::string> attrs;
    std::string rel;
    std::string anchor;
};

// Symbolic per-tick observation; stands in for a camera image. Frames are
// rendered from the robot's current room only.
struct Frame {
    std::uint64_t frame_index = 0; // strictly increasing per camera
    Tick time = 0;
    std::string camera_id = "robot_cam";
    std::string room;
    std::vector<Observation> observations; // sorted by object_id
};

} // namespace hestia
