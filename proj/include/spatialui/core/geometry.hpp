#pragma once

// Rigid-body geometry on top of Eigen. Coordinates are right-handed, +y up,
// -z forward, in meters.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "spatialui/error.hpp"

namespace spatialui {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using QuatT = Eigen::Quaternion<Scalar>;

template <typename Scalar>
using Mat4T = Eigen::Matrix<Scalar, 4, 4>;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}

template <typename Scalar>
bool all_finite(const QuatT<Scalar>& q) {
    return q.coeffs().allFinite();
}

template <typename Scalar>
struct PoseT {
    Vec3T<Scalar> position = Vec3T<Scalar>::Zero();
    QuatT<Scalar> rotation = QuatT<Scalar>::Identity();

    PoseT() = default;
    PoseT(const Vec3T<Scalar>& p, const QuatT<Scalar>& q) : position(p), rotation(q) {}

    static PoseT identity() { return {}; }
    static PoseT translation(Scalar x, Scalar y, Scalar z) {
        return {Vec3T<Scalar>(x, y, z), QuatT<Scalar>::Identity()};
    }
    static PoseT rotation_about(const Vec3T<Scalar>& axis, Scalar radians) {
        return {Vec3T<Scalar>::Zero(),
                QuatT<Scalar>(Eigen::AngleAxis<Scalar>(radians, axis.normalized()))};
    }

    Vec3T<Scalar> transform_point(const Vec3T<Scalar>& p) const { return position + rotation * p; }
    Vec3T<Scalar> rotate(const Vec3T<Scalar>& v) const { return rotation * v; }

    PoseT inverse() const {
        const QuatT<Scalar> inv = rotation.conjugate();
        return {-(inv * position), inv};
    }

    Mat4T<Scalar> matrix() const {
        Mat4T<Scalar> m = Mat4T<Scalar>::Identity();
        m.template topLeftCorner<3, 3>() = rotation.toRotationMatrix();
        m.template topRightCorner<3, 1>() = position;
        return m;
    }

    bool valid(Scalar tol = Scalar(1e-6)) const {
        return all_finite(position) && all_finite(rotation) &&
               std::abs(rotation.norm() - Scalar(1)) <= tol;
    }

    bool operator==(const PoseT& o) const {
        return position == o.position && rotation.coeffs() == o.rotation.coeffs();
    }
};

/// parent ∘ child: the child expressed in the parent's frame, mapped out.
template <typename Scalar>
PoseT<Scalar> compose(const PoseT<Scalar>& parent, const PoseT<Scalar>& child) {
    return {parent.position + parent.rotation * child.position,
            (parent.rotation * child.rotation).normalized()};
}

template <typename Scalar>
PoseT<Scalar> inverse(const PoseT<Scalar>& p) {
    return p.inverse();
}

template <typename Scalar>
struct RayT {
    Vec3T<Scalar> origin = Vec3T<Scalar>::Zero();
    Vec3T<Scalar> direction = Vec3T<Scalar>(0, 0, -1);

    Vec3T<Scalar> at(Scalar t) const { return origin + t * direction; }
};

/// Builds a ray, normalizing the direction. Throws on zero or non-finite input.
template <typename Scalar>
RayT<Scalar> make_ray(const Vec3T<Scalar>& origin, const Vec3T<Scalar>& direction) {
    const Scalar n = direction.norm();
    if (!all_finite(origin) || !all_finite(direction) || !(n > Scalar(0))) {
        throw Error(ErrorCode::InvalidArgument, "ray needs a finite origin and non-zero direction");
    }
    return {origin, direction / n};
}

template <typename Scalar>
struct ObbT {
    PoseT<Scalar> center;
    Vec3T<Scalar> half_extents = Vec3T<Scalar>::Constant(Scalar(0.5));

    bool valid() const {
        return center.valid() && all_finite(half_extents) && (half_extents.array() > Scalar(0)).all();
    }

    bool contains(const Vec3T<Scalar>& world_point) const {
        const Vec3T<Scalar> local = center.rotation.conjugate() * (world_point - center.position);
        return (local.cwiseAbs().array() <= half_extents.array()).all();
    }
};

template <typename Scalar>
ObbT<Scalar> make_obb(const PoseT<Scalar>& center, const Vec3T<Scalar>& half_extents) {
    ObbT<Scalar> box{center, half_extents};
    if (!box.valid()) {
        throw Error(ErrorCode::InvalidArgument, "obb half extents must be positive and finite");
    }
    return box;
}

/// Entry distance of a ray into an oriented box (slab test in the box frame).
/// A ray starting inside the box hits at t = 0.
template <typename Scalar>
std::optional<Scalar> ray_intersect_obb(const RayT<Scalar>& ray, const ObbT<Scalar>& box) {
    const QuatT<Scalar> to_local = box.center.rotation.conjugate();
    const Vec3T<Scalar> o = to_local * (ray.origin - box.center.position);
    const Vec3T<Scalar> d = to_local * ray.direction;

    Scalar t_near = -std::numeric_limits<Scalar>::infinity();
    Scalar t_far = std::numeric_limits<Scalar>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const Scalar h = box.half_extents[axis];
        if (d[axis] == Scalar(0)) {
            if (o[axis] < -h || o[axis] > h) return std::nullopt;
            continue;
        }
        const Scalar inv = Scalar(1) / d[axis];
        Scalar t0 = (-h - o[axis]) * inv;
        Scalar t1 = (h - o[axis]) * inv;
        if (t0 > t1) std::swap(t0, t1);
        t_near = std::max(t_near, t0);
        t_far = std::min(t_far, t1);
        if (t_near > t_far) return std::nullopt;
    }
    if (t_far < Scalar(0)) return std::nullopt;
    return std::max(t_near, Scalar(0));
}

/// Euclidean distance from a point to the solid box (0 inside).
template <typename Scalar>
Scalar point_obb_distance(const Vec3T<Scalar>& point, const ObbT<Scalar>& box) {
    const Vec3T<Scalar> local = box.center.rotation.conjugate() * (point - box.center.position);
    const Vec3T<Scalar> outside = (local.cwiseAbs() - box.half_extents).cwiseMax(Scalar(0));
    return outside.norm();
}

/// Rotation angle about +y of the twist component of q, in radians.
template <typename Scalar>
Scalar yaw_of(const QuatT<Scalar>& q) {
    return Scalar(2) * std::atan2(q.y(), q.w());
}

/// Splits q = swing * twist with twist about +y.
template <typename Scalar>
std::pair<QuatT<Scalar>, QuatT<Scalar>> swing_twist_y(const QuatT<Scalar>& q) {
    QuatT<Scalar> twist(q.w(), 0, q.y(), 0);
    const Scalar n = twist.norm();
    if (n < Scalar(1e-12)) {
        twist = QuatT<Scalar>::Identity();
    } else {
        twist.coeffs() /= n;
    }
    const QuatT<Scalar> swing = (q * twist.conjugate()).normalized();
    return {swing, twist};
}

using Vec3 = Vec3T<double>;
using Quat = QuatT<double>;
using Mat4 = Mat4T<double>;
using Pose = PoseT<double>;
using Ray = RayT<double>;
using Obb = ObbT<double>;

}  // namespace spatialui
