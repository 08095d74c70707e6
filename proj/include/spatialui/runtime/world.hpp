#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spatialui/core/scene.hpp"
#include "spatialui/events.hpp"
#include "spatialui/geo/geo.hpp"
#include "spatialui/input/input.hpp"
#include "spatialui/layout/layout.hpp"
#include "spatialui/runtime/config.hpp"
#include "spatialui/widgets/widgets.hpp"

namespace spatialui {

/// What a demo filter button toggles when pressed.
struct FilterBinding {
    std::optional<ChargerType> type;  // empty: toggles available-only
};

struct MapBinding {
    NodeId map_node = 0;
    std::map<NodeId, std::size_t> markers;  // marker node -> index into World::chargers
    std::map<NodeId, NodeId> scans;         // marker node -> point-cloud node
    double marker_height = 0.02;
};

/// Complete session state. Only tick() and the directive helpers mutate it.
struct World {
    Config config;
    Scene scene;
    std::map<NodeId, Button3D> buttons;
    std::map<NodeId, Slider3D> sliders;
    std::map<NodeId, Panel> panels;

    InteractionState interaction;
    std::map<std::string, GrabSession> grabs;       // by device
    std::map<std::string, double> slider_anchors;  // by device, axis coordinate at engage

    ContextRules rules;
    std::string active_context;

    std::vector<ChargerRecord> chargers;
    ChargerQuery query;
    std::optional<MapBinding> map;
    std::map<NodeId, FilterBinding> filter_buttons;
    std::optional<NodeId> scale_slider;
    std::map<NodeId, PointCloud> point_clouds;

    std::vector<std::string> layout_components;
    std::map<std::string, LayoutDocument> saved_layouts;

    std::vector<Event> event_log;
    std::vector<std::string> warnings;
    std::uint64_t frame_counter = 0;
    std::optional<double> last_time;
};

struct SnapshotNode {
    NodeId id = 0;
    NodeKind kind = NodeKind::Panel;
    std::string name;
    Pose world;
    double opacity = 1.0;
    bool visible = true;
    std::vector<std::pair<std::string, double>> scalars;

    bool operator==(const SnapshotNode&) const = default;
};

/// Immutable view of the world after a tick; one entry per scene node.
struct SceneSnapshot {
    std::uint64_t frame = 0;
    double time = 0.0;
    std::vector<SnapshotNode> nodes;

    bool operator==(const SceneSnapshot&) const = default;
};

struct TickResult {
    std::vector<Event> events;
    SceneSnapshot snapshot;
};

/// Advances the world to the frame's timestamp in substeps of at most
/// config.substep. Each substep runs, in order: input processing, contact
/// driven widget updates, spring integration of free widgets, grab and
/// binding application, context visibility. The snapshot is taken last.
///
/// Engagement start events precede the widget events they cause in the same
/// substep; SelectEnd follows them. Throws Protocol for a stale frame and
/// leaves the world untouched in that case.
TickResult tick(World& world, const InputFrame& frame);

SceneSnapshot snapshot(const World& world);

// Directives, applied between ticks.
void apply_context(World& world, const std::string& tag);
void apply_query(World& world, const ChargerQuery& query);
void set_map_scale(World& world, double scale);
LayoutDocument save_world_layout(const World& world, const std::string& saved_at);
void load_world_layout(World& world, const LayoutDocument& doc);

/// Recomputes marker positions and visibility from the map spec and query.
void refresh_markers(World& world);

}  // namespace spatialui
