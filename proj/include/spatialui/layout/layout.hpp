#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spatialui/core/geometry.hpp"
#include "spatialui/core/scene.hpp"
#include "spatialui/events.hpp"

namespace spatialui {

// ---------------------------------------------------------------------------
// Grabbing

/// A live rigid attachment between a grabber (hand or controller) and a node.
/// `offset` is the node's world pose expressed in the grabber frame at the
/// moment the grab began; it stays fixed for the whole session.
struct GrabSession {
    NodeId grabbed = 0;  // the node the user took hold of
    NodeId target = 0;   // the node that moves (a handle moves its panel)
    Pose offset;
    Pose current;  // latest world pose of the target
    bool active = false;
};

struct SnapPolicy {
    bool position = false;
    double cell = 0.05;
    bool yaw = false;
    double yaw_step_degrees = 15.0;
};

struct GrabEnd {
    Pose pose;
    Event event;
};

/// Throws NotFound for unknown or hidden nodes, Permission when the node is
/// not grabbable.
GrabSession begin_grab(const Scene& scene, NodeId node, const Pose& grabber);

/// New world pose for the target: grabber ∘ offset. Throws InvalidState on an
/// ended session.
Pose update_grab(GrabSession& session, const Pose& grabber);

/// Finishes the session, applying the snap policy to the last pose.
GrabEnd end_grab(GrabSession& session, const SnapPolicy& snap, double timestamp = 0.0,
                 const std::string& device = {});

Pose snap_pose(const Pose& pose, const SnapPolicy& snap);

// ---------------------------------------------------------------------------
// Contextual visibility

struct ContextRule {
    std::string tag;
    std::set<std::string> visible;
};

struct ContextRules {
    std::vector<ContextRule> rules;

    bool has_tag(std::string_view tag) const;
    std::set<std::string> ruled_components() const;
    std::set<std::string> visible_under(std::string_view tag) const;
};

inline constexpr std::string_view kDefaultContext = "default";

struct ContextOutcome {
    std::string active;
    std::vector<std::string> warnings;
};

/// Shows every ruled component listed under `tag` and hides the other ruled
/// components. Components no rule mentions keep their visibility, and poses
/// are never touched. An unknown tag falls back to "default" with a warning.
ContextOutcome set_context(Scene& scene, const ContextRules& rules, std::string_view tag);

ContextRules parse_context_rules(std::string_view json_text);
std::string serialize_context_rules(const ContextRules& rules);

// ---------------------------------------------------------------------------
// Layout persistence

inline constexpr int kLayoutVersion = 1;

struct LayoutDocument {
    int version = kLayoutVersion;
    std::map<std::string, Pose> entries;  // component name -> world pose
    std::string saved_at;                 // ISO-8601

    bool operator==(const LayoutDocument&) const = default;
};

LayoutDocument save_layout(const Scene& scene, const std::vector<std::string>& components,
                           std::string saved_at);

/// Restores every entry whose component exists; returns one warning per
/// missing component.
std::vector<std::string> load_layout(Scene& scene, const LayoutDocument& doc);

/// Canonical compact JSON, every number printed with 9 significant digits.
std::string serialize_layout(const LayoutDocument& doc);
LayoutDocument parse_layout(std::string_view json_text);

/// Seconds since the Unix epoch as "YYYY-MM-DDThh:mm:ss.sssZ".
std::string iso8601_utc(double seconds_since_epoch);

}  // namespace spatialui
