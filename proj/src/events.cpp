#include "spatialui/events.hpp"

#include <array>
#include <utility>

namespace spatialui {

namespace {

constexpr std::array<std::pair<EventKind, const char*>, 9> kEventNames{{
    {EventKind::HoverEntered, "HoverEntered"},
    {EventKind::HoverExited, "HoverExited"},
    {EventKind::SelectStart, "SelectStart"},
    {EventKind::SelectEnd, "SelectEnd"},
    {EventKind::GrabStarted, "GrabStarted"},
    {EventKind::GrabEnded, "GrabEnded"},
    {EventKind::Pressed, "Pressed"},
    {EventKind::Released, "Released"},
    {EventKind::ValueChanged, "ValueChanged"},
}};

}  // namespace

const char* to_string(EventKind kind) noexcept {
    for (const auto& [k, name] : kEventNames) {
        if (k == kind) return name;
    }
    return "Unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept {
    for (const auto& [k, name] : kEventNames) {
        if (text == name) return k;
    }
    return std::nullopt;
}

}  // namespace spatialui
