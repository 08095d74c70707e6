#pragma once

// Line-delimited JSON frame protocol between a frontend and the core.
//
// client -> core, one frame per line:
//   {"t":<s>,"head":{"p":[x,y,z],"q":[x,y,z,w]},
//    "devices":[{"id":..,"kind":"ray"|"hand","p":[..],"q":[..],"pinch":..,"trigger":..}]}
// core -> client, per frame: zero or more event records
//   {"ev":"Pressed","node":<id>,"t":<s>[,"dev":"<id>"][,"v":<value>]}
// followed by one snapshot record
//   {"frame":<n>,"t":<s>,"nodes":[{"id":..,"kind":..,"name":..,"p":[..],"q":[..],
//                                  "opacity":..,"visible":..,<scalars>}]}

#include <string>
#include <string_view>
#include <vector>

#include "spatialui/runtime/world.hpp"

namespace spatialui {

/// Parses one client frame line. Throws Protocol on any malformed field.
InputFrame parse_frame(std::string_view line);
std::string format_frame(const InputFrame& frame);

std::string format_event(const Event& event);
Event parse_event(std::string_view line);
std::string format_snapshot(const SceneSnapshot& snapshot);

/// One protocol session over an already-built world.
class FrameSession {
public:
    explicit FrameSession(World world) : world_(std::move(world)) {}

    /// Handles one incoming line and returns the outgoing records. Blank
    /// lines produce nothing. Throws Protocol on bad or stale frames.
    std::vector<std::string> handle_line(std::string_view line);

    /// Snapshot record of the current state, e.g. to greet a new client.
    std::string current_snapshot() const;

    const World& world() const { return world_; }

private:
    World world_;
};

}  // namespace spatialui
