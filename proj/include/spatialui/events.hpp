#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "spatialui/core/scene.hpp"

namespace spatialui {

enum class EventKind {
    HoverEntered,
    HoverExited,
    SelectStart,
    SelectEnd,
    GrabStarted,
    GrabEnded,
    Pressed,
    Released,
    ValueChanged,
};

const char* to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept;

/// One interaction event. `payload` is the press depth for button events and
/// the bound value for ValueChanged; `device` is set for input-originated events.
struct Event {
    EventKind kind = EventKind::Pressed;
    NodeId node = 0;
    double payload = 0.0;
    double timestamp = 0.0;
    std::string device;

    bool operator==(const Event&) const = default;
};

}  // namespace spatialui
