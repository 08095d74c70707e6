#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spatialui/core/geometry.hpp"
#include "spatialui/core/scene.hpp"
#include "spatialui/events.hpp"
#include "spatialui/physics/spring.hpp"

namespace spatialui {

/// Momentary push button with a sprung cap.
///
/// `depth` is how far the cap is pushed along `press_axis`, in [0, travel].
/// A press latches when depth/travel reaches `press_threshold` and unlatches
/// once it falls below `release_threshold`.
struct Button3D {
    NodeId node = 0;
    Vec3 press_axis = Vec3(0, 0, -1);
    double travel = 0.01;
    double press_threshold = 0.7;
    double release_threshold = 0.4;
    double depth = 0.0;
    SpringParams spring = default_button_spring();
    SpringState spring_state;
    bool latched = false;

    void validate() const;
};

/// Center-anchored rate slider: deflecting the handle moves the bound value
/// at gain * (offset / half_range) units per second. Released handles spring
/// back to the center without touching the value.
struct Slider3D {
    NodeId node = 0;
    double half_range = 0.1;
    double handle_offset = 0.0;
    double gain = 1.0;
    double bound_value = 1.0;
    double min_value = 0.0;
    double max_value = 1.0;
    SpringParams spring = default_slider_spring();
    SpringState spring_state;
    bool engaged = false;

    void validate() const;
};

struct Panel {
    NodeId node = 0;
    int columns = 1;
    int rows = 1;
    double cell_size = 0.1;
    double opacity = 1.0;
    std::optional<NodeId> handle;
    std::map<std::pair<int, int>, NodeId> occupied;  // (column, row) -> child

    void validate() const;
};

template <typename Widget>
struct WidgetUpdate {
    Widget widget;
    std::vector<Event> events;
};

/// Advances a button by one step. With contact the cap follows it (clamped to
/// travel); without contact the spring pulls it back toward 0.
WidgetUpdate<Button3D> button_update(const Button3D& button, std::optional<double> contact_depth, double dt,
                                     double timestamp = 0.0);

/// Advances a slider by one step. A present target means the handle is held.
WidgetUpdate<Slider3D> slider_update(const Slider3D& slider, std::optional<double> handle_target, double dt,
                                     double timestamp = 0.0);

/// Local pose of a grid cell's center, row 0 on top.
Pose panel_slot_pose(const Panel& panel, int column, int row);

/// Records `child` in a free cell and returns the cell's local pose.
Pose assign_slot(Panel& panel, int column, int row, NodeId child);

Panel set_opacity(Panel panel, double value);

}  // namespace spatialui
