#pragma once

// Replay scripts are line-delimited JSON. A line is either an input frame
// (see protocol.hpp) or a directive:
//   {"t":..,"directive":"set_context","tag":"<tag>"}
//   {"t":..,"directive":"save_layout","slot":"<name>"[,"path":"<file>"]}
//   {"t":..,"directive":"load_layout","slot":"<name>"}  or  {...,"path":"<file>"}
//   {"t":..,"directive":"query","types":["rapid",..],"available_only":true}
// Records run in file order; frame timestamps must strictly increase and a
// directive may not precede the frame before it.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spatialui/runtime/world.hpp"

namespace spatialui {

struct SetContextDirective {
    std::string tag;
};

struct SaveLayoutDirective {
    std::string slot;
    std::optional<std::string> path;
};

struct LoadLayoutDirective {
    std::string slot;
    std::optional<std::string> path;
};

struct QueryDirective {
    ChargerQuery query;
};

using Directive = std::variant<SetContextDirective, SaveLayoutDirective, LoadLayoutDirective, QueryDirective>;

struct ScriptRecord {
    int line = 0;
    double timestamp = 0.0;
    std::variant<InputFrame, Directive> item;
};

struct ReplayScript {
    std::vector<ScriptRecord> records;
};

/// Throws Parse citing the 1-based line number of the first bad record.
ReplayScript parse_replay_script(std::string_view text);
std::string format_directive(double timestamp, const Directive& directive);

/// Feeds every record through the world and returns the trace: one event
/// record per line, plus {"warn":..} lines for directive warnings.
std::string run_replay(World& world, const ReplayScript& script);

}  // namespace spatialui
