#pragma once

#include <string_view>

#include "spatialui/geo/geo.hpp"
#include "spatialui/input/input.hpp"
#include "spatialui/layout/layout.hpp"
#include "spatialui/physics/spring.hpp"

namespace spatialui {

/// Tunables for a session. Every field has a default; a config file only
/// overrides what it names.
struct Config {
    double substep = 1.0 / 90.0;

    double button_travel = 0.01;
    double button_press_threshold = 0.7;
    double button_release_threshold = 0.4;
    SpringParams button_spring = default_button_spring();

    double slider_half_range = 0.1;
    double slider_gain = 1.0;
    double slider_min = 0.25;
    double slider_max = 4.0;
    SpringParams slider_spring = default_slider_spring();

    InputConfig input;
    SnapPolicy snap;
    MapPlaneSpec map{1.2, 1.0};  // map.scale is also the slider's starting value
    double panel_opacity = 0.85;

    void validate() const;
};

/// Reads the JSON config file format:
///   {"substep":..,
///    "button":{"travel","press_threshold","release_threshold","stiffness","mass","damping"|"damping_ratio"},
///    "slider":{"half_range","gain","min","max","stiffness","mass","damping"|"damping_ratio"},
///    "input":{"engage","release","near_radius"},
///    "snap":{"position","cell","yaw","yaw_step_degrees"},
///    "map":{"extent","scale"}, "panel_opacity":..}
Config parse_config(std::string_view json_text);

}  // namespace spatialui
