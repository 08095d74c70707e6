#include "spatialui/runtime/world.hpp"

#include <algorithm>
#include <cmath>

namespace spatialui {

namespace {

const DeviceSample* find_device(const InputFrame& frame, const std::string& id) {
    for (const DeviceSample& d : frame.devices) {
        if (d.id == id) return &d;
    }
    return nullptr;
}

/// Slider axis: the slider node's local +x through its origin.
std::pair<Vec3, Vec3> slider_axis(const World& world, NodeId slider) {
    const Pose p = world.scene.world_pose(slider);
    return {p.position, p.rotate(Vec3::UnitX())};
}

void toggle_filter(World& world, const FilterBinding& binding) {
    ChargerQuery q = world.query;
    if (binding.type) {
        if (!q.types.erase(*binding.type)) q.types.insert(*binding.type);
    } else {
        q.available_only = !q.available_only;
    }
    apply_query(world, q);
}

void apply_bindings(World& world, const std::vector<Event>& events) {
    for (const Event& e : events) {
        if (e.kind == EventKind::Pressed) {
            auto it = world.filter_buttons.find(e.node);
            if (it != world.filter_buttons.end()) toggle_filter(world, it->second);
        } else if (e.kind == EventKind::ValueChanged && world.scale_slider == e.node) {
            set_map_scale(world, e.payload);
        } else if (e.kind == EventKind::SelectStart && world.map) {
            auto it = world.map->scans.find(e.node);
            if (it != world.map->scans.end()) {
                world.scene.set_visible(it->second, !world.scene.node(it->second).visible);
            }
        }
    }
}

void run_substep(World& world, const InputFrame& frame, bool first, double h, double ts,
                 std::vector<Event>& out) {
    std::vector<Event> leading;
    std::vector<Event> trailing;
    std::vector<EngagementChange> ended;
    std::map<NodeId, double> contacts;

    // (1) input
    if (first) {
        InputResult r = process_frame(frame, world.scene, world.interaction, world.config.input);
        world.interaction = std::move(r.state);
        for (Event e : r.events) {
            e.timestamp = ts;
            (e.kind == EventKind::SelectEnd ? trailing : leading).push_back(std::move(e));
        }
        for (const EngagementChange& s : r.started) {
            const DeviceSample* d = find_device(frame, s.device);
            if (!d) continue;
            if (s.engagement.kind == EngageKind::Grab) {
                GrabSession session = begin_grab(world.scene, s.engagement.node, d->pose);
                world.interaction.devices[s.device].grab_offset = session.offset;
                world.grabs[s.device] = session;
            } else if (world.sliders.count(s.engagement.node)) {
                const auto [origin, axis] = slider_axis(world, s.engagement.node);
                world.slider_anchors[s.device] = axis_coordinate(*d, origin, axis);
            }
        }
        for (const EngagementChange& e : r.ended) {
            if (e.engagement.kind == EngageKind::Select) {
                world.slider_anchors.erase(e.device);
                // A select that ends this frame still presses with its final activation.
                auto b = world.buttons.find(e.engagement.node);
                if (b != world.buttons.end()) {
                    const DeviceSample* d = find_device(frame, e.device);
                    const double depth = b->second.travel * (d ? activation(*d) : 0.0);
                    contacts[b->first] = std::max(contacts[b->first], depth);
                }
            }
            ended.push_back(e);
        }
    }

    // (2) contact-driven widget updates
    std::map<NodeId, double> targets;
    for (const auto& [dev, di] : world.interaction.devices) {
        if (!di.engaged || di.engaged->kind != EngageKind::Select) continue;
        const NodeId node = di.engaged->node;
        if (auto b = world.buttons.find(node); b != world.buttons.end()) {
            contacts[node] = std::max(contacts[node], b->second.travel * di.activation);
        } else if (world.sliders.count(node) && world.slider_anchors.count(dev)) {
            const DeviceSample* d = find_device(frame, dev);
            if (!d) continue;
            const auto [origin, axis] = slider_axis(world, node);
            targets.emplace(node, axis_coordinate(*d, origin, axis) - world.slider_anchors.at(dev));
        }
    }

    std::vector<Event> widget_events;
    auto take = [&](auto& widget, auto update) {
        widget = std::move(update.widget);
        widget_events.insert(widget_events.end(), update.events.begin(), update.events.end());
    };
    for (auto& [id, button] : world.buttons) {
        if (auto c = contacts.find(id); c != contacts.end()) take(button, button_update(button, c->second, h, ts));
    }
    if (h > 0) {
        for (auto& [id, slider] : world.sliders) {
            if (auto t = targets.find(id); t != targets.end()) take(slider, slider_update(slider, t->second, h, ts));
        }
    }

    // (3) springs of widgets nobody is touching
    if (h > 0) {
        for (auto& [id, button] : world.buttons) {
            if (!contacts.count(id)) take(button, button_update(button, std::nullopt, h, ts));
        }
        for (auto& [id, slider] : world.sliders) {
            if (!targets.count(id)) take(slider, slider_update(slider, std::nullopt, h, ts));
        }
    }

    // (4) grabs and bindings
    std::vector<Event> grab_events;
    for (auto& [dev, session] : world.grabs) {
        if (const DeviceSample* d = find_device(frame, dev)) {
            world.scene.set_world(session.target, update_grab(session, d->pose));
        }
    }
    for (const EngagementChange& e : ended) {
        if (e.engagement.kind != EngageKind::Grab) continue;
        auto it = world.grabs.find(e.device);
        if (it == world.grabs.end()) continue;
        const GrabEnd end = end_grab(it->second, world.config.snap, ts, e.device);
        world.scene.set_world(it->second.target, end.pose);
        grab_events.push_back(end.event);
        world.grabs.erase(it);
    }
    apply_bindings(world, leading);
    apply_bindings(world, widget_events);

    // (5) context visibility
    if (!world.rules.rules.empty()) set_context(world.scene, world.rules, world.active_context);

    for (auto* group : {&leading, &widget_events, &grab_events, &trailing}) {
        out.insert(out.end(), group->begin(), group->end());
    }
}

}  // namespace

TickResult tick(World& world, const InputFrame& frame) {
    if (!std::isfinite(frame.timestamp)) throw Error(ErrorCode::Protocol, "frame timestamp must be finite");
    if (world.last_time && !(frame.timestamp > *world.last_time)) {
        throw Error(ErrorCode::Protocol, "stale frame: t=" + std::to_string(frame.timestamp) +
                                             " is not after " + std::to_string(*world.last_time));
    }
    const double start = world.last_time.value_or(frame.timestamp);
    const double span = frame.timestamp - start;
    const int steps = span > 0 ? std::max(1, static_cast<int>(std::ceil(span / world.config.substep - 1e-9))) : 1;
    const double h = span / steps;

    TickResult out;
    for (int i = 0; i < steps; ++i) {
        const double ts = (i + 1 == steps) ? frame.timestamp : start + h * (i + 1);
        run_substep(world, frame, i == 0, h, ts, out.events);
    }
    world.last_time = frame.timestamp;
    ++world.frame_counter;
    world.event_log.insert(world.event_log.end(), out.events.begin(), out.events.end());
    out.snapshot = snapshot(world);
    return out;
}

SceneSnapshot snapshot(const World& world) {
    SceneSnapshot snap;
    snap.frame = world.frame_counter;
    snap.time = world.last_time.value_or(0.0);
    snap.nodes.reserve(world.scene.size());
    for (const auto& [id, n] : world.scene.nodes()) {
        SnapshotNode s{id, n.kind, n.name, world.scene.world_pose(id), n.opacity, world.scene.effectively_visible(id), {}};
        if (auto b = world.buttons.find(id); b != world.buttons.end()) {
            s.scalars = {{"depth", b->second.depth}, {"travel", b->second.travel},
                         {"latched", b->second.latched ? 1.0 : 0.0}};
            if (auto f = world.filter_buttons.find(id); f != world.filter_buttons.end()) {
                const bool on = f->second.type ? world.query.types.count(*f->second.type) != 0
                                               : world.query.available_only;
                s.scalars.emplace_back("on", on ? 1.0 : 0.0);
            }
        } else if (auto sl = world.sliders.find(id); sl != world.sliders.end()) {
            s.scalars = {{"offset", sl->second.handle_offset},
                         {"half_range", sl->second.half_range},
                         {"value", sl->second.bound_value}};
        } else if (auto pc = world.point_clouds.find(id); pc != world.point_clouds.end()) {
            s.scalars = {{"points", static_cast<double>(pc->second.points.size())}};
        }
        snap.nodes.push_back(std::move(s));
    }
    return snap;
}

void apply_context(World& world, const std::string& tag) {
    const ContextOutcome outcome = set_context(world.scene, world.rules, tag);
    world.active_context = outcome.active;
    world.warnings.insert(world.warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
}

void apply_query(World& world, const ChargerQuery& query) {
    world.query = query;
    refresh_markers(world);
}

void set_map_scale(World& world, double scale) {
    MapPlaneSpec spec = world.config.map;
    spec.scale = scale;
    spec.validate();
    world.config.map = spec;
    refresh_markers(world);
}

void refresh_markers(World& world) {
    if (!world.map) return;
    const MapPlaneSpec& spec = world.config.map;
    const double half = spec.extent / 2.0 * spec.scale;
    world.scene.set_collider(world.map->map_node,
                             Obb{Pose::identity(), Vec3(half, half, 0.005)});
    for (const auto& [node, index] : world.map->markers) {
        const ChargerRecord& r = world.chargers.at(index);
        const MapPoint p = mercator_project(r.latitude, r.longitude, spec);
        world.scene.set_local(node, Pose::translation(p.x, p.y, world.map->marker_height));
        world.scene.set_visible(node, world.query.matches(r));
    }
}

LayoutDocument save_world_layout(const World& world, const std::string& saved_at) {
    return save_layout(world.scene, world.layout_components, saved_at);
}

void load_world_layout(World& world, const LayoutDocument& doc) {
    const std::vector<std::string> warnings = load_layout(world.scene, doc);
    world.warnings.insert(world.warnings.end(), warnings.begin(), warnings.end());
}

}  // namespace spatialui
