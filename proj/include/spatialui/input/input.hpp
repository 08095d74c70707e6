#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spatialui/core/geometry.hpp"
#include "spatialui/core/scene.hpp"
#include "spatialui/events.hpp"

namespace spatialui {

enum class DeviceKind { ControllerRay, TrackedHand };

struct DeviceSample {
    std::string id;
    DeviceKind kind = DeviceKind::ControllerRay;
    Pose pose;  // grip for controllers, wrist/pinch point for hands
    double pinch_strength = 0.0;
    double trigger = 0.0;
};

/// Clamps pinch and trigger into [0, 1] and validates the pose.
DeviceSample make_device(std::string id, DeviceKind kind, const Pose& pose, double pinch, double trigger);

struct InputFrame {
    double timestamp = 0.0;
    Pose head;
    std::vector<DeviceSample> devices;
};

enum class EngageKind { Select, Grab };

struct Engagement {
    NodeId node = 0;
    EngageKind kind = EngageKind::Select;
};

struct DeviceInteraction {
    std::optional<NodeId> hovered;
    std::optional<Engagement> engaged;
    Pose grab_offset;
    double activation = 0.0;
};

struct InteractionState {
    std::map<std::string, DeviceInteraction> devices;
    std::optional<double> last_timestamp;
};

struct InputConfig {
    double engage_threshold = 0.8;
    double release_threshold = 0.6;
    double near_radius = 0.05;
};

struct EngagementChange {
    std::string device;
    Engagement engagement;
};

struct InputResult {
    InteractionState state;
    std::vector<Event> events;
    std::vector<EngagementChange> started;
    std::vector<EngagementChange> ended;
};

/// Laser from the controller grip along its -z axis.
Ray pointer_ray(const DeviceSample& device);

/// Wrist-forward ray used when a hand is not near any collider.
Ray hand_pointer_ray(const DeviceSample& device);

/// Activation signal: trigger for controllers, pinch strength for hands.
double activation(const DeviceSample& device);

/// Coordinate along `axis` (through `origin`) that the device points at: the
/// closest point to the pointer ray for controllers, the projected pinch
/// point for hands.
double axis_coordinate(const DeviceSample& device, const Vec3& origin, const Vec3& axis);

/// Updates hover and engagement for every device in the frame. Devices that
/// vanish from the frame lose hover and release any engagement.
///
/// Engagement uses hysteresis: engage at activation >= engage_threshold while
/// hovering, release at activation <= release_threshold. Grabbable nodes are
/// grabbed, everything else is selected. Grab releases are reported in
/// `ended` only; the layout stage emits GrabEnded.
InputResult process_frame(const InputFrame& frame, const Scene& scene, const InteractionState& state,
                          const InputConfig& config = {});

}  // namespace spatialui
