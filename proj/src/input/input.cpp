#include "spatialui/input/input.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace spatialui {

namespace {

double clamp_unit(double v) { return std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0; }

const Vec3 kForward(0, 0, -1);

std::optional<NodeId> hover_target(const DeviceSample& device, const Scene& scene, const InputConfig& config) {
    if (device.kind == DeviceKind::ControllerRay) {
        if (auto hit = pick(scene, pointer_ray(device))) return hit->node;
        return std::nullopt;
    }
    if (auto near = nearest_within(scene, device.pose.position, config.near_radius)) return near->node;
    if (auto hit = pick(scene, hand_pointer_ray(device))) return hit->node;
    return std::nullopt;
}

}  // namespace

DeviceSample make_device(std::string id, DeviceKind kind, const Pose& pose, double pinch, double trigger) {
    if (!pose.valid()) throw Error(ErrorCode::InvalidArgument, "device pose must be finite with a unit rotation");
    return {std::move(id), kind, pose, clamp_unit(pinch), clamp_unit(trigger)};
}

Ray pointer_ray(const DeviceSample& device) {
    if (device.kind != DeviceKind::ControllerRay) {
        throw Error(ErrorCode::InvalidArgument, "pointer_ray needs a controller; hands use hand_pointer_ray");
    }
    return make_ray(device.pose.position, device.pose.rotate(kForward));
}

Ray hand_pointer_ray(const DeviceSample& device) {
    return make_ray(device.pose.position, device.pose.rotate(kForward));
}

double activation(const DeviceSample& device) {
    return clamp_unit(device.kind == DeviceKind::ControllerRay ? device.trigger : device.pinch_strength);
}

double axis_coordinate(const DeviceSample& device, const Vec3& origin, const Vec3& axis) {
    const Vec3 a = axis.normalized();
    if (device.kind == DeviceKind::TrackedHand) return a.dot(device.pose.position - origin);

    // Closest points between the axis line and the pointer line.
    const Ray r = pointer_ray(device);
    const Vec3 w = origin - r.origin;
    const double b = a.dot(r.direction);
    const double denom = 1.0 - b * b;
    if (denom < 1e-12) return a.dot(r.origin - origin);  // pointing along the axis
    const double d = a.dot(w);
    const double e = r.direction.dot(w);
    return (b * e - d) / denom;
}

InputResult process_frame(const InputFrame& frame, const Scene& scene, const InteractionState& state,
                          const InputConfig& config) {
    if (!std::isfinite(frame.timestamp)) {
        throw Error(ErrorCode::Protocol, "frame timestamp must be finite");
    }
    if (state.last_timestamp && !(frame.timestamp > *state.last_timestamp)) {
        throw Error(ErrorCode::Protocol, "frame timestamp " + std::to_string(frame.timestamp) +
                                             " is not after " + std::to_string(*state.last_timestamp));
    }

    InputResult out{state, {}, {}, {}};
    out.state.last_timestamp = frame.timestamp;
    const double t = frame.timestamp;

    std::set<std::string> seen;
    for (const DeviceSample& device : frame.devices) {
        if (!seen.insert(device.id).second) {
            throw Error(ErrorCode::Protocol, "device '" + device.id + "' appears twice in one frame");
        }
        DeviceInteraction& di = out.state.devices[device.id];
        const double a = activation(device);
        di.activation = a;

        const std::optional<NodeId> hovered = hover_target(device, scene, config);
        if (hovered != di.hovered) {
            if (di.hovered) out.events.push_back({EventKind::HoverExited, *di.hovered, 0.0, t, device.id});
            if (hovered) out.events.push_back({EventKind::HoverEntered, *hovered, 0.0, t, device.id});
            di.hovered = hovered;
        }

        if (!di.engaged && hovered && a >= config.engage_threshold) {
            const bool grab = scene.node(*hovered).grabbable;
            Engagement e{*hovered, grab ? EngageKind::Grab : EngageKind::Select};
            di.engaged = e;
            out.events.push_back({grab ? EventKind::GrabStarted : EventKind::SelectStart, e.node, a, t, device.id});
            out.started.push_back({device.id, e});
        } else if (di.engaged && a <= config.release_threshold) {
            const Engagement e = *di.engaged;
            di.engaged.reset();
            if (e.kind == EngageKind::Select) {
                out.events.push_back({EventKind::SelectEnd, e.node, a, t, device.id});
            }
            out.ended.push_back({device.id, e});
        }
    }

    // Devices missing from this frame are treated as withdrawn.
    for (auto it = out.state.devices.begin(); it != out.state.devices.end();) {
        if (seen.count(it->first)) {
            ++it;
            continue;
        }
        DeviceInteraction& di = it->second;
        if (di.hovered) out.events.push_back({EventKind::HoverExited, *di.hovered, 0.0, t, it->first});
        if (di.engaged) {
            if (di.engaged->kind == EngageKind::Select) {
                out.events.push_back({EventKind::SelectEnd, di.engaged->node, 0.0, t, it->first});
            }
            out.ended.push_back({it->first, *di.engaged});
        }
        it = out.state.devices.erase(it);
    }
    return out;
}

}  // namespace spatialui
