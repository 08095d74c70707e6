#include "spatialui/runtime/replay.hpp"

#include "json_util.hpp"
#include "spatialui/runtime/protocol.hpp"
#include "text_util.hpp"

namespace spatialui {

using detail::json;

namespace {

std::string required_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
        throw Error(ErrorCode::Parse, std::string("directive needs a non-empty '") + key + "'");
    }
    return j[key].get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) throw Error(ErrorCode::Parse, std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
}

Directive parse_directive(const json& j) {
    const std::string kind = required_string(j, "directive");
    if (kind == "set_context") return SetContextDirective{required_string(j, "tag")};
    if (kind == "save_layout" || kind == "load_layout") {
        std::optional<std::string> path = optional_string(j, "path");
        std::string slot = j.contains("slot") ? required_string(j, "slot") : std::string();
        if (slot.empty() && !path) throw Error(ErrorCode::Parse, kind + " needs a 'slot' or 'path'");
        if (kind == "save_layout") return SaveLayoutDirective{slot, path};
        return LoadLayoutDirective{slot, path};
    }
    if (kind == "query") {
        QueryDirective q;
        if (j.contains("types")) {
            if (!j["types"].is_array()) throw Error(ErrorCode::Parse, "'types' must be an array");
            for (const json& t : j["types"]) {
                const auto type = t.is_string() ? charger_type_from_string(t.get<std::string>()) : std::nullopt;
                if (!type) throw Error(ErrorCode::Parse, "unknown charger type " + t.dump());
                q.query.types.insert(*type);
            }
        }
        if (j.contains("available_only")) {
            if (!j["available_only"].is_boolean()) throw Error(ErrorCode::Parse, "'available_only' must be a boolean");
            q.query.available_only = j["available_only"].get<bool>();
        }
        return q;
    }
    throw Error(ErrorCode::Parse, "unknown directive '" + kind + "'");
}

void execute(World& world, const Directive& directive, double t) {
    if (const auto* c = std::get_if<SetContextDirective>(&directive)) {
        apply_context(world, c->tag);
    } else if (const auto* s = std::get_if<SaveLayoutDirective>(&directive)) {
        LayoutDocument doc = save_world_layout(world, iso8601_utc(t));
        if (s->path) detail::write_file(*s->path, serialize_layout(doc));
        if (!s->slot.empty()) world.saved_layouts[s->slot] = std::move(doc);
    } else if (const auto* l = std::get_if<LoadLayoutDirective>(&directive)) {
        if (l->path) {
            load_world_layout(world, parse_layout(detail::read_file(*l->path)));
        } else if (auto it = world.saved_layouts.find(l->slot); it != world.saved_layouts.end()) {
            load_world_layout(world, it->second);
        } else {
            world.warnings.push_back("no saved layout in slot '" + l->slot + "'");
        }
    } else if (const auto* q = std::get_if<QueryDirective>(&directive)) {
        apply_query(world, q->query);
    }
}

}  // namespace

ReplayScript parse_replay_script(std::string_view text) {
    ReplayScript script;
    std::optional<double> last_frame;
    std::optional<double> last_any;
    const std::vector<std::string_view> lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (detail::trim(lines[i]).empty()) continue;
        try {
            const json j = detail::parse_json(lines[i], ErrorCode::Parse, "script record");
            if (!j.is_object() || !j.contains("t")) throw Error(ErrorCode::Parse, "record needs a timestamp 't'");
            ScriptRecord rec;
            rec.line = line_no;
            rec.timestamp = detail::read_number(j["t"], "t", ErrorCode::Parse);
            if (j.contains("directive")) {
                if (last_any && rec.timestamp < *last_any) throw Error(ErrorCode::Parse, "timestamp goes backwards");
                rec.item = parse_directive(j);
            } else {
                if (last_frame && !(rec.timestamp > *last_frame)) {
                    throw Error(ErrorCode::Parse, "frame timestamps must strictly increase");
                }
                if (last_any && rec.timestamp < *last_any) throw Error(ErrorCode::Parse, "timestamp goes backwards");
                rec.item = parse_frame(lines[i]);
                last_frame = rec.timestamp;
            }
            last_any = rec.timestamp;
            script.records.push_back(std::move(rec));
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, "script line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return script;
}

std::string format_directive(double timestamp, const Directive& directive) {
    json j = json::object();
    if (const auto* c = std::get_if<SetContextDirective>(&directive)) {
        j["directive"] = "set_context";
        j["tag"] = c->tag;
    } else if (const auto* s = std::get_if<SaveLayoutDirective>(&directive)) {
        j["directive"] = "save_layout";
        if (!s->slot.empty()) j["slot"] = s->slot;
        if (s->path) j["path"] = *s->path;
    } else if (const auto* l = std::get_if<LoadLayoutDirective>(&directive)) {
        j["directive"] = "load_layout";
        if (!l->slot.empty()) j["slot"] = l->slot;
        if (l->path) j["path"] = *l->path;
    } else if (const auto* q = std::get_if<QueryDirective>(&directive)) {
        j["directive"] = "query";
        j["types"] = json::array();
        for (ChargerType t : q->query.types) j["types"].push_back(to_string(t));
        j["available_only"] = q->query.available_only;
    }
    // Same number formatting as frame records so a script reads back exactly.
    return "{\"t\":" + detail::format_number(timestamp) + "," + j.dump().substr(1);
}

std::string run_replay(World& world, const ReplayScript& script) {
    std::string trace;
    for (const ScriptRecord& rec : script.records) {
        if (const auto* frame = std::get_if<InputFrame>(&rec.item)) {
            for (const Event& e : tick(world, *frame).events) trace += format_event(e) + "\n";
        } else {
            const std::size_t before = world.warnings.size();
            execute(world, std::get<Directive>(rec.item), rec.timestamp);
            for (std::size_t i = before; i < world.warnings.size(); ++i) {
                trace += "{\"warn\":" + detail::quote(world.warnings[i]) +
                         ",\"t\":" + detail::format_number(rec.timestamp) + "}\n";
            }
        }
    }
    return trace;
}

}  // namespace spatialui
