#include "spatialui/core/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace spatialui {

namespace {

constexpr std::array<std::pair<NodeKind, const char*>, 8> kKindNames{{
    {NodeKind::Panel, "panel"},
    {NodeKind::Button, "button"},
    {NodeKind::Slider, "slider"},
    {NodeKind::Marker, "marker"},
    {NodeKind::PointCloud, "point_cloud"},
    {NodeKind::MapPlane, "map_plane"},
    {NodeKind::Handle, "handle"},
    {NodeKind::Video, "video"},
}};

}  // namespace

const char* to_string(NodeKind kind) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (text == name) return k;
    }
    return std::nullopt;
}

NodeId Scene::add(SceneNode node) {
    if (nodes_.count(node.id)) {
        throw Error(ErrorCode::InvalidArgument, "duplicate node id " + std::to_string(node.id));
    }
    if (node.parent && !nodes_.count(*node.parent)) {
        throw Error(ErrorCode::NotFound, "parent " + std::to_string(*node.parent) + " does not exist");
    }
    if (!node.local.valid()) {
        throw Error(ErrorCode::InvalidArgument, "node pose must be finite with a unit rotation");
    }
    if (node.collider && !node.collider->valid()) {
        throw Error(ErrorCode::InvalidArgument, "invalid collider on node " + std::to_string(node.id));
    }
    if (!node.name.empty()) {
        if (names_.count(node.name)) {
            throw Error(ErrorCode::InvalidArgument, "duplicate component name '" + node.name + "'");
        }
        names_.emplace(node.name, node.id);
    }
    node.opacity = std::isnan(node.opacity) ? 0.0 : std::clamp(node.opacity, 0.0, 1.0);
    const NodeId id = node.id;
    nodes_.emplace(id, std::move(node));
    return id;
}

NodeId Scene::add_auto(SceneNode node) {
    node.id = nodes_.empty() ? 1 : nodes_.rbegin()->first + 1;
    return add(std::move(node));
}

SceneNode& Scene::mutable_node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw Error(ErrorCode::NotFound, "unknown node " + std::to_string(id));
    }
    return it->second;
}

const SceneNode& Scene::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw Error(ErrorCode::NotFound, "unknown node " + std::to_string(id));
    }
    return it->second;
}

std::optional<NodeId> Scene::find(std::string_view name) const {
    auto it = names_.find(name);
    if (it == names_.end()) return std::nullopt;
    return it->second;
}

NodeId Scene::require(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw Error(ErrorCode::NotFound, "unknown component '" + std::string(name) + "'");
}

void Scene::set_parent(NodeId id, std::optional<NodeId> parent) {
    SceneNode& n = mutable_node(id);
    if (parent) {
        // Walking up from the new parent must not reach the node itself.
        for (std::optional<NodeId> cur = parent; cur; cur = node(*cur).parent) {
            if (*cur == id) {
                throw Error(ErrorCode::InvalidArgument, "reparenting would create a cycle");
            }
        }
    }
    n.parent = parent;
}

void Scene::set_local(NodeId id, const Pose& local) {
    if (!local.valid()) {
        throw Error(ErrorCode::InvalidArgument, "node pose must be finite with a unit rotation");
    }
    mutable_node(id).local = local;
}

void Scene::set_world(NodeId id, const Pose& world) {
    const SceneNode& n = node(id);
    if (!n.parent) {
        set_local(id, world);
        return;
    }
    set_local(id, compose(world_pose(*n.parent).inverse(), world));
}

void Scene::set_visible(NodeId id, bool visible) { mutable_node(id).visible = visible; }

void Scene::set_opacity(NodeId id, double opacity) {
    mutable_node(id).opacity = std::isnan(opacity) ? 0.0 : std::clamp(opacity, 0.0, 1.0);
}

void Scene::set_collider(NodeId id, std::optional<Obb> collider) {
    if (collider && !collider->valid()) {
        throw Error(ErrorCode::InvalidArgument, "invalid collider on node " + std::to_string(id));
    }
    mutable_node(id).collider = collider;
}

Pose Scene::world_pose(NodeId id) const {
    const SceneNode& n = node(id);
    if (!n.parent) return n.local;
    return compose(world_pose(*n.parent), n.local);
}

bool Scene::effectively_visible(NodeId id) const {
    for (std::optional<NodeId> cur = id; cur;) {
        const SceneNode& n = node(*cur);
        if (!n.visible) return false;
        cur = n.parent;
    }
    return true;
}

std::optional<Obb> Scene::world_collider(NodeId id) const {
    const SceneNode& n = node(id);
    if (!n.collider) return std::nullopt;
    return Obb{compose(world_pose(id), n.collider->center), n.collider->half_extents};
}

std::vector<NodeId> Scene::children(NodeId id) const {
    std::vector<NodeId> out;
    for (const auto& [cid, n] : nodes_) {
        if (n.parent == id) out.push_back(cid);
    }
    return out;
}

namespace {

// Ids are visited in ascending order, so a later node only wins when it is
// strictly nearer by more than the tie epsilon.
template <typename Measure>
std::optional<PickHit> nearest(const Scene& scene, Measure&& measure) {
    std::optional<PickHit> best;
    for (const auto& [id, n] : scene.nodes()) {
        if (!n.collider || !scene.effectively_visible(id)) continue;
        const std::optional<double> d = measure(*scene.world_collider(id));
        if (!d) continue;
        if (!best || *d < best->distance - kPickTieEpsilon) best = PickHit{id, *d};
    }
    return best;
}

}  // namespace

std::optional<PickHit> pick(const Scene& scene, const Ray& ray) {
    return nearest(scene, [&](const Obb& box) { return ray_intersect_obb(ray, box); });
}

std::optional<PickHit> nearest_within(const Scene& scene, const Vec3& point, double radius) {
    return nearest(scene, [&](const Obb& box) -> std::optional<double> {
        const double d = point_obb_distance(point, box);
        if (d > radius) return std::nullopt;
        return d;
    });
}

}  // namespace spatialui
