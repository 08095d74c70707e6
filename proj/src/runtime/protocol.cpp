#include "spatialui/runtime/protocol.hpp"

#include "json_util.hpp"
#include "text_util.hpp"

namespace spatialui {

using detail::json;

namespace {

Pose read_pose(const json& obj, ErrorCode code) {
    Pose p;
    if (obj.contains("p")) p.position = detail::read_vec3(obj["p"], "p", code);
    if (obj.contains("q")) p.rotation = detail::read_quat(obj["q"], "q", code);
    return p;
}

double read_unit(const json& obj, const char* key) {
    if (!obj.contains(key) || obj[key].is_null()) return 0.0;
    return detail::read_number(obj[key], key, ErrorCode::Protocol);
}

}  // namespace

InputFrame parse_frame(std::string_view line) {
    const json j = detail::parse_json(line, ErrorCode::Protocol, "frame");
    if (!j.is_object() || !j.contains("t")) throw Error(ErrorCode::Protocol, "frame needs a timestamp 't'");

    InputFrame frame;
    frame.timestamp = detail::read_number(j["t"], "t", ErrorCode::Protocol);
    if (j.contains("head")) {
        if (!j["head"].is_object()) throw Error(ErrorCode::Protocol, "'head' must be an object");
        frame.head = read_pose(j["head"], ErrorCode::Protocol);
    }
    if (j.contains("devices")) {
        if (!j["devices"].is_array()) throw Error(ErrorCode::Protocol, "'devices' must be an array");
        for (const json& d : j["devices"]) {
            if (!d.is_object() || !d.contains("id") || !d.contains("kind") || !d["kind"].is_string()) {
                throw Error(ErrorCode::Protocol, "each device needs 'id' and 'kind'");
            }
            std::string id;
            if (d["id"].is_string()) {
                id = d["id"].get<std::string>();
            } else if (d["id"].is_number_integer()) {
                id = d["id"].dump();
            } else {
                throw Error(ErrorCode::Protocol, "device id must be a string or integer");
            }
            const std::string kind = d["kind"].get<std::string>();
            DeviceKind dk;
            if (kind == "ray") {
                dk = DeviceKind::ControllerRay;
            } else if (kind == "hand") {
                dk = DeviceKind::TrackedHand;
            } else {
                throw Error(ErrorCode::Protocol, "device kind must be 'ray' or 'hand', got '" + kind + "'");
            }
            frame.devices.push_back(
                make_device(id, dk, read_pose(d, ErrorCode::Protocol), read_unit(d, "pinch"), read_unit(d, "trigger")));
        }
    }
    return frame;
}

std::string format_frame(const InputFrame& frame) {
    std::string out = "{\"t\":" + detail::format_number(frame.timestamp) +
                      ",\"head\":{\"p\":" + detail::format_vec3(frame.head.position) +
                      ",\"q\":" + detail::format_quat(frame.head.rotation) + "},\"devices\":[";
    for (std::size_t i = 0; i < frame.devices.size(); ++i) {
        const DeviceSample& d = frame.devices[i];
        if (i) out += ",";
        out += "{\"id\":" + detail::quote(d.id) + ",\"kind\":\"" +
               (d.kind == DeviceKind::ControllerRay ? "ray" : "hand") + "\",\"p\":" +
               detail::format_vec3(d.pose.position) + ",\"q\":" + detail::format_quat(d.pose.rotation) +
               ",\"pinch\":" + detail::format_number(d.pinch_strength) +
               ",\"trigger\":" + detail::format_number(d.trigger) + "}";
    }
    out += "]}";
    return out;
}

std::string format_event(const Event& event) {
    std::string out = std::string("{\"ev\":\"") + to_string(event.kind) + "\",\"node\":" +
                      std::to_string(event.node) + ",\"t\":" + detail::format_number(event.timestamp);
    if (!event.device.empty()) out += ",\"dev\":" + detail::quote(event.device);
    if (event.kind == EventKind::ValueChanged) out += ",\"v\":" + detail::format_number(event.payload);
    out += "}";
    return out;
}

Event parse_event(std::string_view line) {
    const json j = detail::parse_json(line, ErrorCode::Parse, "event");
    if (!j.is_object() || !j.contains("ev") || !j["ev"].is_string() || !j.contains("node") ||
        !j["node"].is_number_integer()) {
        throw Error(ErrorCode::Parse, "event record needs 'ev' and 'node'");
    }
    const auto kind = event_kind_from_string(j["ev"].get<std::string>());
    if (!kind) throw Error(ErrorCode::Parse, "unknown event kind " + j["ev"].dump());
    Event e;
    e.kind = *kind;
    e.node = j["node"].get<NodeId>();
    if (j.contains("t")) e.timestamp = detail::read_number(j["t"], "t", ErrorCode::Parse);
    if (j.contains("dev") && j["dev"].is_string()) e.device = j["dev"].get<std::string>();
    if (j.contains("v")) e.payload = detail::read_number(j["v"], "v", ErrorCode::Parse);
    return e;
}

std::string format_snapshot(const SceneSnapshot& snapshot) {
    std::string out = "{\"frame\":" + std::to_string(snapshot.frame) +
                      ",\"t\":" + detail::format_number(snapshot.time) + ",\"nodes\":[";
    for (std::size_t i = 0; i < snapshot.nodes.size(); ++i) {
        const SnapshotNode& n = snapshot.nodes[i];
        if (i) out += ",";
        out += "{\"id\":" + std::to_string(n.id) + ",\"kind\":\"" + to_string(n.kind) + "\"";
        if (!n.name.empty()) out += ",\"name\":" + detail::quote(n.name);
        out += ",\"p\":" + detail::format_vec3(n.world.position) + ",\"q\":" + detail::format_quat(n.world.rotation) +
               ",\"opacity\":" + detail::format_number(n.opacity) +
               ",\"visible\":" + (n.visible ? "true" : "false");
        for (const auto& [key, value] : n.scalars) out += ",\"" + key + "\":" + detail::format_number(value);
        out += "}";
    }
    out += "]}";
    return out;
}

std::vector<std::string> FrameSession::handle_line(std::string_view line) {
    if (detail::trim(line).empty()) return {};
    const InputFrame frame = parse_frame(line);
    const TickResult result = tick(world_, frame);
    std::vector<std::string> out;
    out.reserve(result.events.size() + 1);
    for (const Event& e : result.events) out.push_back(format_event(e));
    out.push_back(format_snapshot(result.snapshot));
    return out;
}

std::string FrameSession::current_snapshot() const { return format_snapshot(snapshot(world_)); }

}  // namespace spatialui
