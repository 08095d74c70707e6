// Writes the bundled demo replay script: hover and press a filter button,
// grab a panel by its handle and move it, switch context, then toggle the
// availability filter. The world is ticked alongside so that later aims
// follow the moved panel.
//
// usage: gen_demo_script <chargers.csv> <out.jsonl>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spatialui/runtime/demo.hpp"
#include "spatialui/runtime/protocol.hpp"
#include "spatialui/runtime/replay.hpp"

using namespace spatialui;

namespace {

constexpr double kFrame = 1.0 / 60.0;
const Pose kHead = Pose::translation(0, 1.6, 0);

class Recorder {
public:
    explicit Recorder(World world) : world_(std::move(world)) {}

    Vec3 center(const std::string& name) const { return world_.scene.world_pose(world_.scene.require(name)).position; }

    /// Controller at `origin` pointing at `target`.
    static Pose aim(const Vec3& origin, const Vec3& target) {
        return {origin, Quat::FromTwoVectors(-Vec3::UnitZ(), (target - origin).normalized())};
    }

    void frame(const std::optional<Pose>& controller, double trigger) {
        // Microsecond grid, so timestamps print exactly.
        t_ = std::round(++frames_ * kFrame * 1e6) / 1e6;
        InputFrame f;
        f.timestamp = t_;
        f.head = kHead;
        if (controller) f.devices.push_back(make_device("right", DeviceKind::ControllerRay, *controller, 0, trigger));
        tick(world_, f);
        out_ << format_frame(f) << "\n";
    }

    void directive(const Directive& d) {
        out_ << format_directive(t_, d) << "\n";
        if (const auto* c = std::get_if<SetContextDirective>(&d)) apply_context(world_, c->tag);
        if (const auto* q = std::get_if<QueryDirective>(&d)) apply_query(world_, q->query);
    }

    /// Aim, squeeze the trigger, hold, release.
    void press(const Vec3& origin, const std::string& target) {
        const Pose p = aim(origin, center(target));
        for (int i = 0; i < 6; ++i) frame(p, 0.0);
        for (double trig : {0.3, 0.6, 0.9, 1.0}) frame(p, trig);
        for (int i = 0; i < 12; ++i) frame(p, 1.0);
        for (double trig : {0.7, 0.3, 0.0}) frame(p, trig);
        for (int i = 0; i < 12; ++i) frame(p, 0.0);
    }

    std::string text() const { return out_.str(); }

private:
    World world_;
    int frames_ = 0;
    double t_ = 0.0;
    std::ostringstream out_;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: gen_demo_script <chargers.csv> <out.jsonl>\n";
        return 1;
    }
    try {
        std::ifstream csv(argv[1]);
        std::stringstream ss;
        ss << csv.rdbuf();
        Recorder rec(build_demo_world(Config{}, ss.str()).world);
        const Vec3 hand(0.15, 1.3, -0.3);

        rec.frame(std::nullopt, 0.0);
        rec.press(hand, "filter.rapid");

        // Drag the filter panel 20 cm right and 10 cm up by its handle.
        const Vec3 handle = rec.center("filter-panel.handle");
        const Pose grip = Recorder::aim(hand, handle);
        for (double trig : {0.0, 0.0, 0.5, 1.0}) rec.frame(grip, trig);
        const int steps = 30;
        for (int i = 1; i <= steps; ++i) {
            Pose moved = grip;
            moved.position += Vec3(0.2, 0.1, 0.0) * (static_cast<double>(i) / steps);
            rec.frame(moved, 1.0);
        }
        Pose released = grip;
        released.position += Vec3(0.2, 0.1, 0.0);
        for (double trig : {0.5, 0.0, 0.0}) rec.frame(released, trig);

        rec.directive(SetContextDirective{"map-query"});
        rec.press(hand, "filter.available");
        rec.frame(std::nullopt, 0.0);

        std::ofstream out(argv[2], std::ios::binary);
        out << rec.text();
        return out ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "gen_demo_script: " << e.what() << "\n";
        return 1;
    }
}
