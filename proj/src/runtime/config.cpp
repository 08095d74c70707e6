#include "spatialui/runtime/config.hpp"

#include "json_util.hpp"
#include "spatialui/widgets/widgets.hpp"

namespace spatialui {

using detail::json;

void Config::validate() const {
    if (!(substep > 0 && substep <= kMaxSpringStep)) {
        throw Error(ErrorCode::Format, "substep must lie in (0, 0.1]");
    }
    Button3D probe;
    probe.travel = button_travel;
    probe.press_threshold = button_press_threshold;
    probe.release_threshold = button_release_threshold;
    probe.spring = button_spring;
    Slider3D slider;
    slider.half_range = slider_half_range;
    slider.gain = slider_gain;
    slider.min_value = slider_min;
    slider.max_value = slider_max;
    slider.bound_value = map.scale;
    slider.spring = slider_spring;
    try {
        probe.validate();
        slider.validate();
        map.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::Format, std::string("config: ") + e.what());
    }
    if (!(slider_min > 0)) throw Error(ErrorCode::Format, "config: slider min must be > 0 (it drives map scale)");
    if (!(input.release_threshold < input.engage_threshold)) {
        throw Error(ErrorCode::Format, "config: input release threshold must be below engage threshold");
    }
    if (!(input.near_radius > 0)) throw Error(ErrorCode::Format, "config: near radius must be > 0");
    if (!(panel_opacity >= 0 && panel_opacity <= 1)) throw Error(ErrorCode::Format, "config: opacity in [0,1]");
}

namespace {

void read(const json& obj, const char* key, double& out) {
    if (obj.contains(key)) out = detail::read_number(obj[key], key, ErrorCode::Format);
}

void read(const json& obj, const char* key, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_boolean()) throw Error(ErrorCode::Format, std::string(key) + " must be a boolean");
    out = obj[key].get<bool>();
}

const json& section(const json& root, const char* key) {
    static const json empty = json::object();
    if (!root.contains(key)) return empty;
    if (!root[key].is_object()) throw Error(ErrorCode::Format, std::string(key) + " must be an object");
    return root[key];
}

// Without an explicit damping the default damping ratio is kept when k or m change.
void read_spring(const json& obj, SpringParams& spring) {
    if (!obj.contains("stiffness") && !obj.contains("mass") && !obj.contains("damping_ratio")) {
        read(obj, "damping", spring.damping);
        return;
    }
    double ratio = spring.damping / spring.critical_damping();
    read(obj, "damping_ratio", ratio);
    read(obj, "stiffness", spring.stiffness);
    read(obj, "mass", spring.mass);
    if (!(spring.stiffness > 0) || !(spring.mass > 0)) {
        throw Error(ErrorCode::Format, "spring stiffness and mass must be > 0");
    }
    spring.damping = ratio * spring.critical_damping();
    read(obj, "damping", spring.damping);
}

}  // namespace

Config parse_config(std::string_view json_text) {
    const json root = detail::parse_json(json_text, ErrorCode::Format, "config");
    if (!root.is_object()) throw Error(ErrorCode::Format, "config must be a JSON object");
    Config c;
    read(root, "substep", c.substep);
    read(root, "panel_opacity", c.panel_opacity);

    const json& b = section(root, "button");
    read(b, "travel", c.button_travel);
    read(b, "press_threshold", c.button_press_threshold);
    read(b, "release_threshold", c.button_release_threshold);
    read_spring(b, c.button_spring);

    const json& s = section(root, "slider");
    read(s, "half_range", c.slider_half_range);
    read(s, "gain", c.slider_gain);
    read(s, "min", c.slider_min);
    read(s, "max", c.slider_max);
    read_spring(s, c.slider_spring);

    const json& in = section(root, "input");
    read(in, "engage", c.input.engage_threshold);
    read(in, "release", c.input.release_threshold);
    read(in, "near_radius", c.input.near_radius);

    const json& snap = section(root, "snap");
    read(snap, "position", c.snap.position);
    read(snap, "cell", c.snap.cell);
    read(snap, "yaw", c.snap.yaw);
    read(snap, "yaw_step_degrees", c.snap.yaw_step_degrees);

    const json& map = section(root, "map");
    read(map, "extent", c.map.extent);
    read(map, "scale", c.map.scale);

    c.validate();
    return c;
}

}  // namespace spatialui
