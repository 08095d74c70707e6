#include "spatialui/widgets/widgets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spatialui {

void Button3D::validate() const {
    if (!(travel > 0) || !std::isfinite(travel)) {
        throw Error(ErrorCode::InvalidArgument, "button travel must be positive");
    }
    if (!(press_threshold > 0 && press_threshold < 1)) {
        throw Error(ErrorCode::InvalidArgument, "press threshold must lie in (0, 1)");
    }
    if (!(release_threshold > 0 && release_threshold < press_threshold)) {
        throw Error(ErrorCode::InvalidArgument, "release threshold must lie in (0, press threshold)");
    }
    if (!(std::abs(press_axis.norm() - 1.0) <= 1e-6)) {
        throw Error(ErrorCode::InvalidArgument, "press axis must be unit length");
    }
    if (!spring.valid()) throw Error(ErrorCode::InvalidArgument, "invalid button spring");
}

void Slider3D::validate() const {
    if (!(half_range > 0) || !std::isfinite(half_range)) {
        throw Error(ErrorCode::InvalidArgument, "slider half range must be positive");
    }
    if (!(min_value <= max_value) || !(bound_value >= min_value && bound_value <= max_value)) {
        throw Error(ErrorCode::InvalidArgument, "slider value must lie in [min, max]");
    }
    if (!std::isfinite(gain)) throw Error(ErrorCode::InvalidArgument, "slider gain must be finite");
    if (!spring.valid()) throw Error(ErrorCode::InvalidArgument, "invalid slider spring");
}

void Panel::validate() const {
    if (columns < 1 || rows < 1) throw Error(ErrorCode::InvalidArgument, "panel grid must be at least 1x1");
    if (!(cell_size > 0)) throw Error(ErrorCode::InvalidArgument, "panel cell size must be positive");
}

namespace {

// Integrates in slices no longer than the stepper accepts.
SpringState integrate(SpringState state, const SpringParams& params, double dt) {
    const int slices = std::max(1, static_cast<int>(std::ceil(dt / kMaxSpringStep)));
    const double h = dt / slices;
    for (int i = 0; i < slices; ++i) state = spring_step(state, params, 0.0, h);
    return state;
}

}  // namespace

WidgetUpdate<Button3D> button_update(const Button3D& button, std::optional<double> contact_depth, double dt,
                                     double timestamp) {
    WidgetUpdate<Button3D> out{button, {}};
    Button3D& b = out.widget;

    if (contact_depth) {
        if (!(*contact_depth >= 0)) {
            throw Error(ErrorCode::InvalidArgument, "contact depth must be non-negative");
        }
        b.depth = std::min(*contact_depth, b.travel);
        b.spring_state = {b.depth, 0.0};
    } else {
        if (!(dt > 0)) throw Error(ErrorCode::InvalidArgument, "button update needs dt > 0");
        SpringState s = integrate({b.depth, b.spring_state.velocity}, b.spring, dt);
        // The cap rests against its stops at both ends of travel.
        if (s.displacement <= 0.0) {
            s = {0.0, 0.0};
        } else if (s.displacement >= b.travel) {
            s = {b.travel, 0.0};
        }
        b.spring_state = s;
        b.depth = s.displacement;
    }

    const double fraction = b.depth / b.travel;
    if (!b.latched && fraction >= b.press_threshold) {
        b.latched = true;
        out.events.push_back({EventKind::Pressed, b.node, b.depth, timestamp, {}});
    } else if (b.latched && fraction < b.release_threshold) {
        b.latched = false;
        out.events.push_back({EventKind::Released, b.node, b.depth, timestamp, {}});
    }
    return out;
}

WidgetUpdate<Slider3D> slider_update(const Slider3D& slider, std::optional<double> handle_target, double dt,
                                     double timestamp) {
    if (!(dt > 0)) throw Error(ErrorCode::InvalidArgument, "slider update needs dt > 0");
    WidgetUpdate<Slider3D> out{slider, {}};
    Slider3D& s = out.widget;

    if (handle_target && std::isfinite(*handle_target)) {
        s.engaged = true;
        s.handle_offset = std::clamp(*handle_target, -s.half_range, s.half_range);
        s.spring_state = {s.handle_offset, 0.0};
        const double before = s.bound_value;
        s.bound_value =
            std::clamp(before + s.gain * (s.handle_offset / s.half_range) * dt, s.min_value, s.max_value);
        if (s.bound_value != before) {
            out.events.push_back({EventKind::ValueChanged, s.node, s.bound_value, timestamp, {}});
        }
        return out;
    }

    s.engaged = false;
    SpringState st = integrate({s.handle_offset, s.spring_state.velocity}, s.spring, dt);
    if (std::abs(st.displacement) > s.half_range) {
        st = {std::copysign(s.half_range, st.displacement), 0.0};
    }
    s.spring_state = st;
    s.handle_offset = st.displacement;
    return out;
}

Pose panel_slot_pose(const Panel& panel, int column, int row) {
    if (column < 0 || column >= panel.columns || row < 0 || row >= panel.rows) {
        throw Error(ErrorCode::InvalidArgument, "slot (" + std::to_string(column) + ", " + std::to_string(row) +
                                                    ") outside a " + std::to_string(panel.columns) + "x" +
                                                    std::to_string(panel.rows) + " grid");
    }
    const double x = (column - (panel.columns - 1) / 2.0) * panel.cell_size;
    const double y = ((panel.rows - 1) / 2.0 - row) * panel.cell_size;
    return Pose::translation(x, y, 0.0);
}

Pose assign_slot(Panel& panel, int column, int row, NodeId child) {
    Pose pose = panel_slot_pose(panel, column, row);
    if (!panel.occupied.emplace(std::make_pair(column, row), child).second) {
        throw Error(ErrorCode::InvalidArgument, "panel cell already occupied");
    }
    return pose;
}

Panel set_opacity(Panel panel, double value) {
    panel.opacity = std::isnan(value) ? 0.0 : std::clamp(value, 0.0, 1.0);
    return panel;
}

}  // namespace spatialui
