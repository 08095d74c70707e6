// One line per acceptance criterion. Exits non-zero if any fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spatialui/layout/layout.hpp"
#include "spatialui/physics/spring.hpp"
#include "spatialui/runtime/demo.hpp"
#include "spatialui/runtime/replay.hpp"
#include "spatialui/widgets/widgets.hpp"

using namespace spatialui;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double cosine_error(double dt) {
    const SpringParams p{100.0, 0.0, 1.0};
    SpringState s{0.02, 0.0};
    double worst = 0;
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 1; i <= steps; ++i) {
        s = spring_step(s, p, 0.0, dt);
        worst = std::max(worst, std::abs(s.displacement - 0.02 * std::cos(10.0 * i * dt)));
    }
    return worst;
}

Outcome spring_oracle() {
    const double e1 = cosine_error(1.0 / 90), e2 = cosine_error(1.0 / 180);
    // First-order amplitude drift x0 w^2 T dt / 2 over T = 1 s.
    const double bound = 0.02 * 100 * 1.0 * (1.0 / 90) / 2;
    const double ratio = e1 / e2;

    oracle::Rng rng(1001);
    int increases = 0;
    for (int draw = 0; draw < 10000; ++draw) {
        const SpringParams p{rng.uniform(50, 500), rng.uniform(0, 30), rng.uniform(0.05, 1)};
        const double dt = rng.uniform(1e-4, 1.0 / 90);
        SpringState s{rng.uniform(-0.05, 0.05), rng.uniform(-1, 1)};
        double e = spring_energy(s, p);
        for (int i = 0; i < 50; ++i) {
            s = spring_step(s, p, 0.0, dt);
            const double next = spring_energy(s, p);
            if (next > e * (1 + 1e-12)) ++increases;
            e = next;
        }
    }
    return {e1 < bound && ratio >= 1.7 && ratio <= 2.3 && increases == 0,
            fmt("max error %.3g m (bound %.3g), halving ratio %.3f, energy increases %d/500000", e1, bound, ratio,
                increases)};
}

Outcome picking_oracle() {
    oracle::Rng rng(1002);
    int disagreements = 0, hits = 0;
    double worst = 0;
    for (int scene_no = 0; scene_no < 100; ++scene_no) {
        Scene s;
        std::vector<Eigen::Matrix4d> world;
        std::vector<bool> shown;
        std::vector<Obb> boxes;
        const int count = rng.integer(3, 8);
        for (int i = 0; i < count; ++i) {
            SceneNode n;
            n.id = i + 1;
            n.local = rng.pose(1.5);
            n.visible = rng.coin(0.85);
            n.collider = make_obb(rng.pose(0.2), rng.vec(0.02, 0.4));
            Eigen::Matrix4d m = oracle::matrix_of(n.local);
            bool vis = n.visible;
            if (i > 0 && rng.coin(0.3)) {
                const int parent = rng.integer(0, i - 1);
                n.parent = parent + 1;
                m = world[parent] * m;
                vis = vis && shown[parent];
            }
            const Eigen::Matrix4d c = m * oracle::matrix_of(n.collider->center);
            boxes.push_back(Obb{Pose(c.topRightCorner<3, 1>(), Quat(Eigen::Matrix3d(c.topLeftCorner<3, 3>()))),
                                n.collider->half_extents});
            world.push_back(m);
            shown.push_back(vis);
            s.add(n);
        }
        for (int r = 0; r < 100; ++r) {
            const Vec3 origin = rng.vec(-3, 3);
            const int aim = rng.integer(0, count - 1);
            const Vec3 dir = rng.coin() ? Vec3(boxes[aim].center.position + rng.vec(-0.3, 0.3) - origin)
                                        : rng.direction();
            const Ray ray = make_ray(origin, dir);
            std::optional<double> expected;
            for (int i = 0; i < count; ++i) {
                if (!shown[i]) continue;
                const auto t = oracle::march(ray, boxes[i], 20.0);
                if (t && (!expected || *t < *expected)) expected = t;
            }
            const auto got = pick(s, ray);
            if (got.has_value() != expected.has_value()) {
                ++disagreements;
            } else if (got) {
                ++hits;
                worst = std::max(worst, std::abs(got->distance - *expected));
                if (std::abs(got->distance - *expected) > 2e-4) ++disagreements;
            }
        }
    }
    return {disagreements == 0 && hits > 1000,
            fmt("10000 rays, %d hits, %d disagreements, worst distance gap %.2g m (tol 2e-4)", hits, disagreements,
                worst)};
}

Outcome button_machine() {
    oracle::Rng rng(1003);
    int mismatches = 0;
    long events_seen = 0;
    for (int trace = 0; trace < 1000; ++trace) {
        Button3D b;
        std::vector<double> fractions;
        std::vector<EventKind> got;
        const int length = rng.integer(10, 120);
        for (int i = 0; i < length; ++i) {
            std::optional<double> contact;
            if (rng.coin(0.8)) contact = rng.coin(0.1) ? rng.uniform(0, 10) * b.travel : rng.uniform(0, 1.2) * b.travel;
            const auto r = button_update(b, contact, rng.uniform(0.002, 0.05));
            b = r.widget;
            fractions.push_back(b.depth / b.travel);
            for (const Event& e : r.events) got.push_back(e.kind);
        }
        bool ok = got == oracle::hysteresis(fractions, b.press_threshold, b.release_threshold);
        for (std::size_t i = 0; i < got.size(); ++i) {
            ok = ok && got[i] == (i % 2 == 0 ? EventKind::Pressed : EventKind::Released);
        }
        if (!ok) ++mismatches;
        events_seen += static_cast<long>(got.size());
    }
    return {mismatches == 0, fmt("1000 traces, %ld events, %d mismatches", events_seen, mismatches)};
}

Outcome slider_integral() {
    oracle::Rng rng(1004);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Slider3D s;
        s.gain = rng.uniform(0.1, 5);
        s.min_value = -1e3;
        s.max_value = 1e3;
        s.bound_value = 0;
        const double dt = rng.uniform(0.001, 0.05);
        const int steps = rng.integer(1, 200);
        const double sign = rng.coin() ? 1 : -1;
        for (int i = 0; i < steps; ++i) s = slider_update(s, sign * s.half_range, dt).widget;
        worst = std::max(worst, std::abs(s.bound_value - sign * s.gain * steps * dt));
    }
    int drifts = 0;
    for (int trace = 0; trace < 200; ++trace) {
        Slider3D s;
        s.min_value = 0.25;
        s.max_value = 4;
        s.bound_value = rng.uniform(0.25, 4);
        s.gain = rng.uniform(0.1, 5);
        for (int i = 0; i < 100; ++i) {
            const double before = s.bound_value;
            std::optional<double> target;
            if (rng.coin(0.4)) target = rng.uniform(-0.5, 0.5);
            s = slider_update(s, target, rng.uniform(0.001, 0.05)).widget;
            if (!target && s.bound_value != before) ++drifts;
        }
    }
    return {worst < 1e-6 && drifts == 0,
            fmt("worst |dvalue - gain*T| %.2g (tol 1e-6), released-step drifts %d", worst, drifts)};
}

Outcome grab_rigidity() {
    oracle::Rng rng(1005);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Scene s;
        SceneNode n;
        n.id = 1;
        n.name = "a";
        n.grabbable = true;
        n.local = rng.pose(1);
        n.collider = make_obb(Pose::identity(), Vec3(0.1, 0.1, 0.01));
        s.add(n);
        Pose grabber = rng.pose(1);
        GrabSession g = begin_grab(s, 1, grabber);
        const Pose offset = g.offset;
        for (int step = 0; step < 1000; ++step) {
            grabber.position += rng.vec(-0.02, 0.02);
            grabber.rotation =
                (grabber.rotation * Quat(Eigen::AngleAxisd(rng.uniform(-0.05, 0.05), rng.direction()))).normalized();
            const Pose rel = compose(inverse(grabber), update_grab(g, grabber));
            worst = std::max(worst, (rel.position - offset.position).norm());
            worst = std::max(worst, rel.rotation.angularDistance(offset.rotation));
        }
    }
    return {worst < 1e-6, fmt("10 trajectories x 1000 steps, worst offset deviation %.2g (tol 1e-6)", worst)};
}

Outcome layout_round_trip() {
    oracle::Rng rng(1006);
    int differing = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Scene s;
        std::vector<std::string> names;
        const int count = rng.integer(1, 8);
        for (int i = 1; i <= count; ++i) {
            SceneNode n;
            n.id = i;
            n.name = "c" + std::to_string(i);
            n.local = rng.pose(5);
            names.push_back(n.name);
            s.add(n);
        }
        const std::string first = serialize_layout(save_layout(s, names, "2026-05-01T12:00:00.000Z"));
        load_layout(s, parse_layout(first));
        const std::string second = serialize_layout(save_layout(s, names, "2026-05-01T12:00:00.000Z"));
        load_layout(s, parse_layout(second));
        const std::string third = serialize_layout(save_layout(s, names, "2026-05-01T12:00:00.000Z"));
        if (first != second || second != third) ++differing;
    }
    return {differing == 0, fmt("100 layouts saved, loaded and saved again, %d not byte-identical", differing)};
}

Outcome mercator() {
    oracle::Rng rng(1007);
    const MapPlaneSpec spec{1.0, 1.3};
    double worst = 0;
    int non_monotone = 0;
    for (int i = 0; i < 10000; ++i) {
        const double lat = rng.uniform(-kMaxMercatorLatitude, kMaxMercatorLatitude);
        const double lon = rng.uniform(-180, 180);
        const MapPoint p = mercator_project(lat, lon, spec);
        const LatLon back = mercator_unproject(p.x, p.y, spec);
        worst = std::max({worst, std::abs(back.latitude - lat), std::abs(back.longitude - lon)});

        const double lat2 = rng.uniform(-kMaxMercatorLatitude, kMaxMercatorLatitude);
        const double lon2 = rng.uniform(-180, 180);
        const MapPoint q = mercator_project(lat2, lon2, spec);
        if ((lat < lat2) != (p.y < q.y) && lat != lat2) ++non_monotone;
        if ((lon < lon2) != (p.x < q.x) && lon != lon2) ++non_monotone;
    }
    int accepted = 0;
    for (double lat : {85.06, 89.9, 90.0, -85.06, -90.0, 120.0}) {
        try {
            mercator_project(lat, 0, spec);
            ++accepted;
        } catch (const Error&) {
        }
    }
    return {worst < 1e-9 && non_monotone == 0 && accepted == 0,
            fmt("10000 points, worst round trip %.2g deg (tol 1e-9), %d monotonicity violations, %d out-of-domain "
                "accepted",
                worst, non_monotone, accepted)};
}

Outcome query_oracle() {
    oracle::Rng rng(1008);
    const auto records = oracle::random_chargers(rng, 200);
    int mismatches = 0;
    for (const ChargerQuery& q : oracle::all_queries()) {
        if (query_chargers(records, q) != oracle::linear_scan(records, q)) ++mismatches;
    }
    return {mismatches == 0 && oracle::all_queries().size() == 16,
            fmt("200 records x %zu filters, %d mismatches", oracle::all_queries().size(), mismatches)};
}

Outcome replay_determinism() {
    const std::filesystem::path data = SPATIALUI_TEST_DATA;
    const std::string golden = read_text(data / "demo_trace.golden.jsonl");
    const std::string csv = read_text(data / "demo_chargers.csv");
    const ReplayScript script = parse_replay_script(read_text(data / "demo_script.jsonl"));
    int differing = 0;
    for (int run = 0; run < 5; ++run) {
        DemoOptions options;
        options.scan_root = data;
        DemoBuild d = build_demo_world(Config{}, csv, options);
        if (run_replay(d.world, script) != golden) ++differing;
    }
    const auto lines = std::count(golden.begin(), golden.end(), '\n');
    return {differing == 0 && lines > 0,
            fmt("5 runs, %d differ from the %ld-line golden trace", differing, static_cast<long>(lines))};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"spring oracle", spring_oracle},         {"picking oracle", picking_oracle},
        {"button state machine", button_machine}, {"slider integral", slider_integral},
        {"grab rigidity", grab_rigidity},         {"layout round trip", layout_round_trip},
        {"mercator", mercator},                   {"query oracle", query_oracle},
        {"replay determinism", replay_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s  %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
