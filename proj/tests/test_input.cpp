#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "spatialui/input/input.hpp"

using namespace spatialui;

namespace {

// Button at z = -1 in front of the origin, a grabbable handle off to the side.
Scene test_scene() {
    Scene s;
    SceneNode button;
    button.id = 1;
    button.kind = NodeKind::Button;
    button.local = Pose::translation(0, 0, -1);
    button.collider = make_obb(Pose::identity(), Vec3(0.05, 0.05, 0.01));
    s.add(button);
    SceneNode handle;
    handle.id = 2;
    handle.kind = NodeKind::Handle;
    handle.grabbable = true;
    handle.local = Pose::translation(1, 0, -1);
    handle.collider = make_obb(Pose::identity(), Vec3(0.05, 0.02, 0.02));
    s.add(handle);
    return s;
}

InputFrame frame(double t, std::vector<DeviceSample> devices) { return {t, Pose::identity(), std::move(devices)}; }

DeviceSample ray(double trigger, const Pose& pose = Pose::identity()) {
    return make_device("ctl", DeviceKind::ControllerRay, pose, 0, trigger);
}

DeviceSample hand(const Vec3& at, double pinch) {
    return make_device("hand", DeviceKind::TrackedHand, Pose(at, Quat::Identity()), pinch, 0);
}

std::vector<EventKind> kinds(const std::vector<Event>& events) {
    std::vector<EventKind> out;
    for (const Event& e : events) out.push_back(e.kind);
    return out;
}

}  // namespace

TEST_CASE("pointer_ray examples") {
    const Ray r = pointer_ray(ray(0));
    CHECK(r.origin == Vec3::Zero());
    CHECK(r.direction.isApprox(Vec3(0, 0, -1)));

    const Pose yawed = Pose::rotation_about(Vec3::UnitY(), std::numbers::pi / 2);
    CHECK((pointer_ray(ray(0, yawed)).direction - Vec3(-1, 0, 0)).norm() < 1e-15);

    CHECK_THROWS_AS(pointer_ray(hand(Vec3::Zero(), 0)), Error);
}

TEST_CASE("pointer_ray matches the rotation-matrix oracle") {
    oracle::Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        const Pose p = rng.pose(1);
        const Vec3 expected = oracle::matrix_of(p).topLeftCorner<3, 3>() * Vec3(0, 0, -1);
        CHECK((pointer_ray(ray(0, p)).direction - expected).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("make_device clamps activation and rejects bad poses") {
    CHECK(make_device("a", DeviceKind::ControllerRay, Pose::identity(), 3, -2).trigger == 0);
    CHECK(make_device("a", DeviceKind::TrackedHand, Pose::identity(), 3, -2).pinch_strength == 1);
    CHECK(make_device("a", DeviceKind::TrackedHand, Pose::identity(), NAN, 0).pinch_strength == 0);
    Pose bad;
    bad.rotation.coeffs() *= 3;
    CHECK_THROWS_AS(make_device("a", DeviceKind::TrackedHand, bad, 0, 0), Error);
}

TEST_CASE("empty frame changes nothing") {
    const Scene s = test_scene();
    const InputResult r = process_frame(frame(1, {}), s, {});
    CHECK(r.events.empty());
    CHECK(r.state.devices.empty());
}

TEST_CASE("trigger ramp hovers then selects once at the first frame at 0.8") {
    const Scene s = test_scene();
    InteractionState st;
    std::vector<Event> all;
    const double ramp[] = {0.0, 0.5, 1.0};
    for (int i = 0; i < 3; ++i) {
        InputResult r = process_frame(frame(i + 1, {ray(ramp[i])}), s, st);
        st = r.state;
        all.insert(all.end(), r.events.begin(), r.events.end());
    }
    CHECK(kinds(all) == std::vector{EventKind::HoverEntered, EventKind::SelectStart});
    CHECK(all[0].timestamp == 1);
    CHECK(all[1].timestamp == 3);
    CHECK(all[1].node == 1);
    CHECK(all[1].device == "ctl");
}

TEST_CASE("release needs activation at or below 0.6") {
    const Scene s = test_scene();
    InteractionState st = process_frame(frame(1, {hand(Vec3(0, 0, -0.97), 0.85)}), s, {}).state;
    REQUIRE(st.devices["hand"].engaged);
    InputResult r = process_frame(frame(2, {hand(Vec3(0, 0, -0.97), 0.65)}), s, st);
    CHECK(r.events.empty());
    CHECK(r.state.devices["hand"].engaged);
    r = process_frame(frame(3, {hand(Vec3(0, 0, -0.97), 0.6)}), s, r.state);
    CHECK(kinds(r.events) == std::vector{EventKind::SelectEnd});
    CHECK(r.ended.size() == 1);
}

TEST_CASE("grabbable nodes are grabbed, and grab release is reported without an event") {
    const Scene s = test_scene();
    const Pose aim(Vec3(1, 0, 0), Quat::Identity());
    InputResult r = process_frame(frame(1, {ray(1.0, aim)}), s, {});
    CHECK(kinds(r.events) == std::vector{EventKind::HoverEntered, EventKind::GrabStarted});
    REQUIRE(r.started.size() == 1);
    CHECK(r.started[0].engagement.kind == EngageKind::Grab);
    r = process_frame(frame(2, {ray(0.0, aim)}), s, r.state);
    CHECK(r.events.empty());
    REQUIRE(r.ended.size() == 1);
    CHECK(r.ended[0].engagement.kind == EngageKind::Grab);
}

TEST_CASE("hands prefer near colliders and fall back to the wrist ray") {
    const Scene s = test_scene();
    // Within 5 cm of the handle but pointing at nothing.
    const DeviceSample near = make_device("hand", DeviceKind::TrackedHand,
                                          Pose(Vec3(1, 0, -0.95), Quat::Identity()), 0, 0);
    InputResult r = process_frame(frame(1, {near}), s, {});
    CHECK(r.state.devices["hand"].hovered == 2);

    // Far from everything: the wrist ray along -z finds the button.
    r = process_frame(frame(1, {hand(Vec3(0, 0, 0), 0)}), s, {});
    CHECK(r.state.devices["hand"].hovered == 1);
}

TEST_CASE("a device never engages without hovering") {
    const Scene s = test_scene();
    const Pose away = Pose::rotation_about(Vec3::UnitY(), std::numbers::pi);
    const InputResult r = process_frame(frame(1, {ray(1.0, away)}), s, {});
    CHECK(r.events.empty());
    CHECK_FALSE(r.state.devices.at("ctl").engaged);
}

TEST_CASE("hidden nodes cannot be hovered") {
    Scene s = test_scene();
    s.set_visible(1, false);
    const InputResult r = process_frame(frame(1, {ray(0)}), s, {});
    CHECK_FALSE(r.state.devices.at("ctl").hovered);
}

TEST_CASE("vanished devices lose hover and engagement") {
    const Scene s = test_scene();
    InteractionState st = process_frame(frame(1, {ray(1.0)}), s, {}).state;
    const InputResult r = process_frame(frame(2, {}), s, st);
    CHECK(kinds(r.events) == std::vector{EventKind::HoverExited, EventKind::SelectEnd});
    CHECK(r.state.devices.empty());
}

TEST_CASE("protocol errors") {
    const Scene s = test_scene();
    InteractionState st = process_frame(frame(1, {}), s, {}).state;
    CHECK_THROWS_AS(process_frame(frame(1, {}), s, st), Error);
    CHECK_THROWS_AS(process_frame(frame(0.5, {}), s, st), Error);
    CHECK_THROWS_AS(process_frame(frame(NAN, {}), s, st), Error);
    try {
        process_frame(frame(2, {ray(0), ray(0)}), s, st);
        FAIL("expected a protocol error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Protocol);
    }
}

TEST_CASE("random activation traces alternate engage and release and are deterministic") {
    const Scene s = test_scene();
    oracle::Rng rng(62);
    for (int trace = 0; trace < 200; ++trace) {
        InteractionState a, b;
        bool engaged = false;
        for (int i = 1; i <= 60; ++i) {
            const Pose p(rng.vec(-0.05, 0.05), Quat(Eigen::AngleAxisd(rng.uniform(-0.2, 0.2), Vec3::UnitY())));
            const InputFrame f = frame(i, {ray(rng.uniform(0, 1), p)});
            const InputResult ra = process_frame(f, s, a);
            const InputResult rb = process_frame(f, s, b);
            CHECK(ra.events == rb.events);
            for (const Event& e : ra.events) {
                if (e.kind == EventKind::SelectStart || e.kind == EventKind::GrabStarted) {
                    CHECK_FALSE(engaged);
                    CHECK(e.payload >= 0.8);
                    engaged = true;
                } else if (e.kind == EventKind::SelectEnd) {
                    CHECK(engaged);
                    engaged = false;
                }
            }
            a = ra.state;
            b = rb.state;
        }
    }
}

TEST_CASE("axis_coordinate") {
    // Controller at (0.3, 0, 0) pointing down -z at an x axis line through (0, 0, -1).
    const DeviceSample c = ray(0, Pose::translation(0.3, 0, 0));
    CHECK(axis_coordinate(c, Vec3(0, 0, -1), Vec3::UnitX()) == doctest::Approx(0.3));
    const DeviceSample h = hand(Vec3(-0.2, 0.5, -1), 0);
    CHECK(axis_coordinate(h, Vec3(0, 0, -1), Vec3(2, 0, 0)) == doctest::Approx(-0.2));
    // Pointing along the axis falls back to the projected origin.
    const DeviceSample along = ray(0, Pose(Vec3(0.1, 0, -1), Quat::FromTwoVectors(Vec3(0, 0, -1), Vec3::UnitX())));
    CHECK(axis_coordinate(along, Vec3(0, 0, -1), Vec3::UnitX()) == doctest::Approx(0.1));
}
