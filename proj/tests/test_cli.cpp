#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kData = SPATIALUI_TEST_DATA;

fs::path scratch(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / ("spatialui_cli_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + SPATIALUI_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("validate") {
    CHECK(run("validate " + q(kData / "demo_chargers.csv")) == 0);
    CHECK(run("validate " + q(kData / "scans/lon-01.ply")) == 0);
    CHECK(run("validate " + q(scratch("bad.csv", "id,lat,lon,type,available,scan_path\na,95,0,slow,true,\n"))) == 2);
    CHECK(run("validate " + q(scratch("noheader.csv", "a,1,1,slow,true,\n"))) == 2);
    CHECK(run("validate " + q(scratch("bad.json", "{\"version\":1"))) == 2);
    CHECK(run("validate /nonexistent/file.csv") == 1);
}

TEST_CASE("usage errors") {
    CHECK(run("") == 2);
    CHECK(run("replay --script x") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("replay") {
    const fs::path out = fs::temp_directory_path() / "spatialui_cli_trace.jsonl";
    const std::string world = "--chargers " + q(kData / "demo_chargers.csv");
    CHECK(run("replay " + world + " --script " + q(kData / "demo_script.jsonl") + " --out " + q(out)) == 0);
    CHECK(read_text(out) == read_text(kData / "demo_trace.golden.jsonl"));
    CHECK(run("replay " + world + " --script " + q(scratch("bad.jsonl", "{\"t\":1}\n{nope\n")) + " --out " + q(out)) == 2);
}

TEST_CASE("run over stdio") {
    const std::string world = "run --chargers " + q(kData / "demo_chargers.csv");
    CHECK(run(world + " < " + q(scratch("good.jsonl", "{\"t\":0.1,\"devices\":[]}\n"))) == 0);
    CHECK(run(world + " < " + q(scratch("badframe.jsonl", "{\"t\":0.1,\"devices\":[]}\n{\"t\":0.05}\n"))) == 3);
    CHECK(run(world + " --config " + q(scratch("badconfig.json", "{\"substep\":-1}")) + " < /dev/null") == 2);
}
