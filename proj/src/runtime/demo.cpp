#include "spatialui/runtime/demo.hpp"

#include <array>
#include <numbers>

#include "text_util.hpp"

namespace spatialui {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Pose yawed(double x, double y, double z, double yaw_degrees) {
    return {Vec3(x, y, z), Quat(Eigen::AngleAxisd(yaw_degrees * kDeg, Vec3::UnitY()))};
}

Obb box(double hx, double hy, double hz, double z_offset = 0.0) {
    return make_obb(Pose::translation(0, 0, z_offset), Vec3(hx, hy, hz));
}

NodeId add_node(Scene& scene, std::string name, NodeKind kind, std::optional<NodeId> parent, const Pose& local,
                std::optional<Obb> collider, bool grabbable = false, double opacity = 1.0) {
    SceneNode n;
    n.name = std::move(name);
    n.kind = kind;
    n.parent = parent;
    n.local = local;
    n.collider = collider;
    n.grabbable = grabbable;
    n.opacity = opacity;
    return scene.add_auto(std::move(n));
}

NodeId add_handle(Scene& scene, const std::string& owner, NodeId parent, double y) {
    return add_node(scene, owner + ".handle", NodeKind::Handle, parent, Pose::translation(0, y, 0),
                    box(0.08, 0.015, 0.015), true);
}

}  // namespace

ContextRules default_demo_rules() {
    ContextRules r;
    r.rules.push_back({"default", {"filter-panel", "scale-panel"}});
    r.rules.push_back({"map-query", {"filter-panel"}});
    r.rules.push_back({"map-scale", {"scale-panel"}});
    return r;
}

DemoBuild build_demo_world(const Config& config, std::string_view chargers_csv, const DemoOptions& options) {
    config.validate();
    ChargerLoad load = load_chargers(chargers_csv);

    DemoBuild out;
    World& w = out.world;
    w.config = config;
    w.chargers = std::move(load.records);
    out.row_errors = std::move(load.errors);
    Scene& scene = w.scene;

    // Map table in front of the user, lying flat: local +y points north (-z world).
    const Pose map_pose{Vec3(0, 0.8, -1.0), Quat(Eigen::AngleAxisd(-90 * kDeg, Vec3::UnitX()))};
    const double half_map = config.map.extent / 2.0 * config.map.scale;
    const NodeId map = add_node(scene, "map", NodeKind::MapPlane, std::nullopt, map_pose,
                                box(half_map, half_map, 0.005));
    add_node(scene, "map.handle", NodeKind::Handle, map,
             Pose::translation(0, -(config.map.extent / 2.0 + 0.06), 0.01), box(0.1, 0.02, 0.02), true);

    MapBinding binding;
    binding.map_node = map;
    for (std::size_t i = 0; i < w.chargers.size(); ++i) {
        const ChargerRecord& r = w.chargers[i];
        const NodeId marker = add_node(scene, "marker:" + r.id, NodeKind::Marker, map, Pose::identity(),
                                       box(0.012, 0.012, 0.02));
        binding.markers.emplace(marker, i);
        if (!r.scan_path) continue;
        try {
            std::filesystem::path path(*r.scan_path);
            if (path.is_relative() && options.scan_root) path = *options.scan_root / path;
            PointCloud cloud = load_point_cloud(detail::read_file(path.string()));
            SceneNode scan;
            scan.name = "scan:" + r.id;
            scan.kind = NodeKind::PointCloud;
            scan.parent = marker;
            scan.local = Pose::translation(0, 0, 0.12);
            scan.visible = false;
            const NodeId id = scene.add_auto(std::move(scan));
            binding.scans.emplace(marker, id);
            w.point_clouds.emplace(id, std::move(cloud));
        } catch (const Error& e) {
            w.warnings.push_back("scan for charger '" + r.id + "' not loaded: " + e.what());
        }
    }
    w.map = std::move(binding);

    // Filter panel: 2x2 grid of toggle buttons.
    Panel filter;
    filter.columns = 2;
    filter.rows = 2;
    filter.cell_size = 0.1;
    filter.opacity = config.panel_opacity;
    filter.node = add_node(scene, "filter-panel", NodeKind::Panel, std::nullopt, yawed(-0.45, 1.35, -0.9, 25),
                           box(0.1, 0.1, 0.005, -0.015), false, filter.opacity);
    filter.handle = add_handle(scene, "filter-panel", filter.node, 0.1 + 0.035);

    const std::array<std::pair<const char*, std::optional<ChargerType>>, 4> filters{{
        {"filter.slow", ChargerType::Slow},
        {"filter.fast", ChargerType::Fast},
        {"filter.rapid", ChargerType::Rapid},
        {"filter.available", std::nullopt},
    }};
    for (std::size_t i = 0; i < filters.size(); ++i) {
        const int col = static_cast<int>(i % 2);
        const int row = static_cast<int>(i / 2);
        const NodeId id = add_node(scene, filters[i].first, NodeKind::Button, filter.node,
                                   panel_slot_pose(filter, col, row), box(0.04, 0.04, 0.01));
        assign_slot(filter, col, row, id);
        Button3D b;
        b.node = id;
        b.travel = config.button_travel;
        b.press_threshold = config.button_press_threshold;
        b.release_threshold = config.button_release_threshold;
        b.spring = config.button_spring;
        b.validate();
        w.buttons.emplace(id, b);
        w.filter_buttons.emplace(id, FilterBinding{filters[i].second});
    }
    w.panels.emplace(filter.node, filter);

    // Scale panel: one center-anchored slider bound to the map scale.
    Panel scale;
    scale.cell_size = 0.3;
    scale.opacity = config.panel_opacity;
    scale.node = add_node(scene, "scale-panel", NodeKind::Panel, std::nullopt, yawed(0.45, 1.35, -0.9, -25),
                          box(0.15, 0.06, 0.005, -0.015), false, scale.opacity);
    scale.handle = add_handle(scene, "scale-panel", scale.node, 0.06 + 0.035);
    const NodeId slider_id = add_node(scene, "scale.slider", NodeKind::Slider, scale.node,
                                      panel_slot_pose(scale, 0, 0),
                                      box(config.slider_half_range + 0.02, 0.025, 0.015));
    assign_slot(scale, 0, 0, slider_id);
    Slider3D slider;
    slider.node = slider_id;
    slider.half_range = config.slider_half_range;
    slider.gain = config.slider_gain;
    slider.min_value = config.slider_min;
    slider.max_value = config.slider_max;
    slider.bound_value = config.map.scale;
    slider.spring = config.slider_spring;
    slider.validate();
    w.sliders.emplace(slider_id, slider);
    w.scale_slider = slider_id;
    w.panels.emplace(scale.node, scale);

    w.layout_components = {"filter-panel", "map", "scale-panel"};
    w.rules = options.rules.value_or(default_demo_rules());

    refresh_markers(w);
    if (options.layout) load_world_layout(w, *options.layout);
    apply_context(w, std::string(kDefaultContext));
    return out;
}

}  // namespace spatialui
