#include "spatialui/layout/layout.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>

#include "json_util.hpp"

namespace spatialui {

using detail::json;

// ---------------------------------------------------------------------------
// Grabbing

GrabSession begin_grab(const Scene& scene, NodeId node, const Pose& grabber) {
    if (!scene.contains(node) || !scene.effectively_visible(node)) {
        throw Error(ErrorCode::NotFound, "node " + std::to_string(node) + " is not present or hidden");
    }
    const SceneNode& n = scene.node(node);
    if (!n.grabbable) {
        throw Error(ErrorCode::Permission, "node " + std::to_string(node) + " is not grabbable");
    }
    if (!grabber.valid()) throw Error(ErrorCode::InvalidArgument, "grabber pose is invalid");

    GrabSession s;
    s.grabbed = node;
    s.target = (n.kind == NodeKind::Handle && n.parent) ? *n.parent : node;
    s.current = scene.world_pose(s.target);
    s.offset = compose(grabber.inverse(), s.current);
    s.active = true;
    return s;
}

Pose update_grab(GrabSession& session, const Pose& grabber) {
    if (!session.active) throw Error(ErrorCode::InvalidState, "grab session has already ended");
    if (!grabber.valid()) throw Error(ErrorCode::InvalidArgument, "grabber pose is invalid");
    session.current = compose(grabber, session.offset);
    return session.current;
}

GrabEnd end_grab(GrabSession& session, const SnapPolicy& snap, double timestamp, const std::string& device) {
    session.active = false;
    const Pose final_pose = snap_pose(session.current, snap);
    session.current = final_pose;
    return {final_pose, Event{EventKind::GrabEnded, session.grabbed, 0.0, timestamp, device}};
}

Pose snap_pose(const Pose& pose, const SnapPolicy& snap) {
    Pose out = pose;
    if (snap.position) {
        if (!(snap.cell > 0)) throw Error(ErrorCode::InvalidArgument, "snap cell must be positive");
        for (int i = 0; i < 3; ++i) out.position[i] = std::round(pose.position[i] / snap.cell) * snap.cell;
    }
    if (snap.yaw) {
        if (!(snap.yaw_step_degrees > 0)) throw Error(ErrorCode::InvalidArgument, "yaw step must be positive");
        const double step = snap.yaw_step_degrees * std::numbers::pi / 180.0;
        const auto [swing, twist] = swing_twist_y(pose.rotation);
        const double yaw = std::round(yaw_of(twist) / step) * step;
        out.rotation = (swing * Quat(Eigen::AngleAxisd(yaw, Vec3::UnitY()))).normalized();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contextual visibility

bool ContextRules::has_tag(std::string_view tag) const {
    for (const ContextRule& r : rules) {
        if (r.tag == tag) return true;
    }
    return false;
}

std::set<std::string> ContextRules::ruled_components() const {
    std::set<std::string> out;
    for (const ContextRule& r : rules) out.insert(r.visible.begin(), r.visible.end());
    return out;
}

std::set<std::string> ContextRules::visible_under(std::string_view tag) const {
    std::set<std::string> out;
    for (const ContextRule& r : rules) {
        if (r.tag == tag) out.insert(r.visible.begin(), r.visible.end());
    }
    return out;
}

ContextOutcome set_context(Scene& scene, const ContextRules& rules, std::string_view tag) {
    ContextOutcome out{std::string(tag), {}};
    if (rules.rules.empty()) return out;

    if (!rules.has_tag(tag)) {
        out.warnings.push_back("unknown context '" + std::string(tag) + "', using 'default'");
        out.active = std::string(kDefaultContext);
        if (!rules.has_tag(kDefaultContext)) {
            out.warnings.push_back("no 'default' context defined; visibility unchanged");
            return out;
        }
    }

    const std::set<std::string> shown = rules.visible_under(out.active);
    for (const std::string& name : rules.ruled_components()) {
        const std::optional<NodeId> id = scene.find(name);
        if (!id) {
            out.warnings.push_back("context rule names missing component '" + name + "'");
            continue;
        }
        scene.set_visible(*id, shown.count(name) != 0);
    }
    return out;
}

ContextRules parse_context_rules(std::string_view json_text) {
    const json j = detail::parse_json(json_text, ErrorCode::Format, "context rules");
    if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
        throw Error(ErrorCode::Format, "context rules need an integer 'version'");
    }
    if (j["version"].get<int>() != 1) {
        throw Error(ErrorCode::UnsupportedVersion, "unsupported context rules version " + j["version"].dump());
    }
    if (!j.contains("rules") || !j["rules"].is_array()) {
        throw Error(ErrorCode::Format, "context rules need a 'rules' array");
    }
    ContextRules out;
    for (const json& r : j["rules"]) {
        if (!r.is_object() || !r.contains("tag") || !r["tag"].is_string() || !r.contains("visible") ||
            !r["visible"].is_array()) {
            throw Error(ErrorCode::Format, "each rule needs a string 'tag' and a 'visible' array");
        }
        ContextRule rule;
        rule.tag = r["tag"].get<std::string>();
        if (rule.tag.empty()) throw Error(ErrorCode::Format, "context tags must be non-empty");
        for (const json& name : r["visible"]) {
            if (!name.is_string() || name.get<std::string>().empty()) {
                throw Error(ErrorCode::Format, "visible entries must be non-empty strings");
            }
            rule.visible.insert(name.get<std::string>());
        }
        out.rules.push_back(std::move(rule));
    }
    return out;
}

std::string serialize_context_rules(const ContextRules& rules) {
    json j;
    j["version"] = 1;
    j["rules"] = json::array();
    for (const ContextRule& r : rules.rules) {
        j["rules"].push_back({{"tag", r.tag}, {"visible", r.visible}});
    }
    return j.dump() + "\n";
}

// ---------------------------------------------------------------------------
// Layout persistence

LayoutDocument save_layout(const Scene& scene, const std::vector<std::string>& components,
                           std::string saved_at) {
    LayoutDocument doc;
    doc.saved_at = std::move(saved_at);
    for (const std::string& name : components) {
        if (name.empty()) throw Error(ErrorCode::InvalidArgument, "component names must be non-empty");
        doc.entries[name] = scene.world_pose(scene.require(name));
    }
    return doc;
}

std::vector<std::string> load_layout(Scene& scene, const LayoutDocument& doc) {
    if (doc.version != kLayoutVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "unsupported layout version " + std::to_string(doc.version));
    }
    std::vector<std::string> warnings;
    for (const auto& [name, pose] : doc.entries) {
        const std::optional<NodeId> id = scene.find(name);
        if (!id) {
            warnings.push_back("layout component '" + name + "' not found; skipped");
            continue;
        }
        scene.set_world(*id, pose);
    }
    return warnings;
}

std::string serialize_layout(const LayoutDocument& doc) {
    std::string out = "{\"version\":" + std::to_string(doc.version) + ",\"saved_at\":" +
                      detail::quote(doc.saved_at) + ",\"entries\":{";
    bool first = true;
    for (const auto& [name, pose] : doc.entries) {
        if (!first) out += ",";
        first = false;
        out += detail::quote(name) + ":{\"p\":" + detail::format_vec3(pose.position) +
               ",\"q\":" + detail::format_quat(pose.rotation) + "}";
    }
    out += "}}\n";
    return out;
}

LayoutDocument parse_layout(std::string_view json_text) {
    const json j = detail::parse_json(json_text, ErrorCode::Format, "layout");
    if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
        throw Error(ErrorCode::Format, "layout needs an integer 'version'");
    }
    LayoutDocument doc;
    doc.version = j["version"].get<int>();
    if (doc.version != kLayoutVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "unsupported layout version " + std::to_string(doc.version));
    }
    if (j.contains("saved_at")) {
        if (!j["saved_at"].is_string()) throw Error(ErrorCode::Format, "'saved_at' must be a string");
        doc.saved_at = j["saved_at"].get<std::string>();
    }
    if (!j.contains("entries") || !j["entries"].is_object()) {
        throw Error(ErrorCode::Format, "layout needs an 'entries' object");
    }
    for (const auto& [name, entry] : j["entries"].items()) {
        if (name.empty()) throw Error(ErrorCode::Format, "layout component names must be non-empty");
        if (!entry.is_object() || !entry.contains("p") || !entry.contains("q")) {
            throw Error(ErrorCode::Format, "layout entry '" + name + "' needs 'p' and 'q'");
        }
        doc.entries[name] = Pose(detail::read_vec3(entry["p"], "entry position", ErrorCode::Format),
                                 detail::read_quat(entry["q"], "entry rotation", ErrorCode::Format));
    }
    return doc;
}

std::string iso8601_utc(double seconds_since_epoch) {
    const double whole = std::floor(seconds_since_epoch);
    long long millis = std::llround((seconds_since_epoch - whole) * 1000.0);
    std::time_t secs = static_cast<std::time_t>(whole);
    if (millis == 1000) {
        millis = 0;
        ++secs;
    }
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03lldZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, millis);
    return buf;
}

}  // namespace spatialui
