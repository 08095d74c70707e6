#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spatialui/core/geometry.hpp"

namespace spatialui {

using NodeId = std::int64_t;

enum class NodeKind { Panel, Button, Slider, Marker, PointCloud, MapPlane, Handle, Video };

const char* to_string(NodeKind kind) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view text) noexcept;

struct SceneNode {
    NodeId id = 0;
    std::optional<NodeId> parent;
    Pose local;
    NodeKind kind = NodeKind::Panel;
    std::optional<Obb> collider;  // in the node's local frame
    bool grabbable = false;
    std::set<std::string> context_tags;
    bool visible = true;
    double opacity = 1.0;
    std::string name;  // component name; empty for anonymous nodes
};

struct PickHit {
    NodeId node = 0;
    double distance = 0.0;
};

/// Transform forest of UI nodes. Nodes are kept ordered by id so every
/// traversal is deterministic.
class Scene {
public:
    /// Inserts a node. The parent, if any, must already exist, which keeps
    /// the hierarchy acyclic. Throws InvalidArgument on duplicate id or name.
    NodeId add(SceneNode node);

    /// Allocates the next free id and inserts.
    NodeId add_auto(SceneNode node);

    void set_parent(NodeId id, std::optional<NodeId> parent);
    void set_local(NodeId id, const Pose& local);
    void set_world(NodeId id, const Pose& world);
    void set_visible(NodeId id, bool visible);
    void set_opacity(NodeId id, double opacity);
    void set_collider(NodeId id, std::optional<Obb> collider);

    bool contains(NodeId id) const { return nodes_.count(id) != 0; }
    const SceneNode& node(NodeId id) const;
    std::optional<NodeId> find(std::string_view name) const;
    NodeId require(std::string_view name) const;

    Pose world_pose(NodeId id) const;

    /// False if the node or any ancestor is hidden.
    bool effectively_visible(NodeId id) const;

    /// World-space collider, if the node has one.
    std::optional<Obb> world_collider(NodeId id) const;

    const std::map<NodeId, SceneNode>& nodes() const { return nodes_; }
    std::vector<NodeId> children(NodeId id) const;
    std::size_t size() const { return nodes_.size(); }

private:
    SceneNode& mutable_node(NodeId id);

    std::map<NodeId, SceneNode> nodes_;
    std::map<std::string, NodeId, std::less<>> names_;
};

/// Distance ties closer than this are broken by the lower node id.
inline constexpr double kPickTieEpsilon = 1e-9;

/// Nearest effectively-visible, collider-bearing node hit by the ray.
std::optional<PickHit> pick(const Scene& scene, const Ray& ray);

/// Nearest effectively-visible collider within radius of a point (0 inside).
std::optional<PickHit> nearest_within(const Scene& scene, const Vec3& point, double radius);

}  // namespace spatialui
