// Command line front end: run a frame-protocol session, replay a script, or
// validate an input file.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spatialui/runtime/demo.hpp"
#include "spatialui/runtime/replay.hpp"
#include "spatialui/runtime/server.hpp"

namespace fs = std::filesystem;
using namespace spatialui;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct WorldArgs {
    std::string chargers;
    std::string layout;
    std::string rules;
    std::string config;
};

void add_world_options(CLI::App* cmd, WorldArgs& args) {
    cmd->add_option("--chargers", args.chargers, "charger CSV")->required();
    cmd->add_option("--layout", args.layout, "layout JSON to apply at start");
    cmd->add_option("--rules", args.rules, "context rules JSON");
    cmd->add_option("--config", args.config, "config JSON");
}

World load_world(const WorldArgs& args) {
    const Config config = args.config.empty() ? Config{} : parse_config(slurp(args.config));
    DemoOptions options;
    if (!args.layout.empty()) options.layout = parse_layout(slurp(args.layout));
    if (!args.rules.empty()) options.rules = parse_context_rules(slurp(args.rules));
    options.scan_root = fs::path(args.chargers).parent_path();
    DemoBuild build = build_demo_world(config, slurp(args.chargers), options);
    for (const RowError& e : build.row_errors) {
        std::cerr << args.chargers << ":" << e.line << ": " << e.message << "\n";
    }
    for (const std::string& w : build.world.warnings) std::cerr << "warning: " << w << "\n";
    build.world.warnings.clear();
    return std::move(build.world);
}

int validate_file(const std::string& path) {
    const std::string text = slurp(path);
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".csv") {
        const ChargerLoad load = load_chargers(text);
        for (const RowError& e : load.errors) std::cerr << path << ":" << e.line << ": " << e.message << "\n";
        std::cout << path << ": " << load.records.size() << " chargers, " << load.errors.size() << " bad rows\n";
        return load.errors.empty() ? kExitOk : kExitInputFormat;
    }
    if (ext == ".ply") {
        const PointCloud cloud = load_point_cloud(text);
        std::cout << path << ": " << cloud.points.size() << " points\n";
        return kExitOk;
    }
    // JSON: a layout has "entries", context rules have "rules".
    const nlohmann::json probe = nlohmann::json::parse(text, nullptr, false);
    if (probe.is_object() && probe.contains("rules")) {
        const ContextRules rules = parse_context_rules(text);
        std::cout << path << ": " << rules.rules.size() << " context rules\n";
        return kExitOk;
    }
    const LayoutDocument doc = parse_layout(text);
    std::cout << path << ": layout with " << doc.entries.size() << " components\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatialui: spatial UI core"};
    app.require_subcommand(1);

    WorldArgs run_args;
    int port = -1;
    CLI::App* run = app.add_subcommand("run", "serve the frame protocol over stdio or TCP");
    add_world_options(run, run_args);
    run->add_option("--serve", port, "TCP port on 127.0.0.1 (0 picks one)")->check(CLI::Range(0, 65535));

    WorldArgs replay_args;
    std::string script_path;
    std::string out_path;
    CLI::App* replay = app.add_subcommand("replay", "replay a script and write its event trace");
    add_world_options(replay, replay_args);
    replay->add_option("--script", script_path, "replay script (JSON lines)")->required();
    replay->add_option("--out", out_path, "trace output file")->required();

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a charger CSV, layout, rules or PLY file");
    validate->add_option("file", validate_path, "file to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputFormat;
    }

    try {
        if (*run) {
            FrameSession session(load_world(run_args));
            if (port < 0) return serve_stream(session, std::cin, std::cout);
            return serve_tcp(session, port, [](int bound) {
                std::cerr << "listening on 127.0.0.1:" << bound << std::endl;
            });
        }
        if (*replay) {
            World world = load_world(replay_args);
            const ReplayScript script = parse_replay_script(slurp(script_path));
            const std::string trace = run_replay(world, script);
            std::ofstream out(out_path, std::ios::binary);
            if (!(out << trace)) throw Error(ErrorCode::InvalidState, "cannot write '" + out_path + "'");
            return kExitOk;
        }
        return validate_file(validate_path);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
