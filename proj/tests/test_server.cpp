#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <future>
#include <sstream>
#include <thread>

#include "spatialui/runtime/server.hpp"

using namespace spatialui;

namespace {

World button_world() {
    World w;
    SceneNode n;
    n.id = 1;
    n.kind = NodeKind::Button;
    n.name = "b";
    n.local = Pose::translation(0, 0, -1);
    n.collider = make_obb(Pose::identity(), Vec3(0.05, 0.05, 0.01));
    w.scene.add(n);
    Button3D b;
    b.node = 1;
    w.buttons.emplace(1, b);
    return w;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

const char* kHover = R"({"t":0.1,"devices":[{"id":"r","kind":"ray","p":[0,0,0],"q":[0,0,0,1]}]})";

}  // namespace

TEST_CASE("stream session greets, answers and stops at a protocol error") {
    FrameSession session(button_world());
    std::istringstream in(std::string(kHover) + "\n\n" + kHover + "\n{\"t\":5}\n");
    std::ostringstream out;
    CHECK(serve_stream(session, in, out) == kExitProtocol);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("{\"frame\":0,", 0) == 0);
    CHECK(lines[1] == R"({"ev":"HoverEntered","node":1,"t":0.1,"dev":"r"})");
    CHECK(lines[2].rfind("{\"frame\":1,", 0) == 0);
    CHECK(lines[3].rfind("{\"error\":\"protocol\"", 0) == 0);
}

TEST_CASE("stream session ends cleanly at end of input") {
    FrameSession session(button_world());
    std::istringstream in(std::string(kHover) + "\n");
    std::ostringstream out;
    CHECK(serve_stream(session, in, out) == kExitOk);
    CHECK(lines_of(out.str()).size() == 3);
}

TEST_CASE("exit codes by error kind") {
    CHECK(exit_code_for(ErrorCode::Protocol) == kExitProtocol);
    CHECK(exit_code_for(ErrorCode::Format) == kExitInputFormat);
    CHECK(exit_code_for(ErrorCode::Parse) == kExitInputFormat);
    CHECK(exit_code_for(ErrorCode::NotFound) == kExitFailure);
}

TEST_CASE("tcp session on an ephemeral port") {
    FrameSession session(button_world());
    std::promise<int> bound;
    auto server = std::async(std::launch::async, [&] {
        return serve_tcp(session, 0, [&](int port) { bound.set_value(port); });
    });
    const int port = bound.get_future().get();
    REQUIRE(port > 0);

    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    const std::string request = std::string(kHover) + "\n";
    REQUIRE(::send(fd, request.data(), request.size(), 0) == static_cast<ssize_t>(request.size()));
    ::shutdown(fd, SHUT_WR);

    std::string received;
    char buf[4096];
    for (ssize_t n; (n = ::recv(fd, buf, sizeof buf, 0)) > 0;) received.append(buf, static_cast<std::size_t>(n));
    ::close(fd);

    CHECK(server.get() == kExitOk);
    const auto lines = lines_of(received);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("{\"frame\":0,", 0) == 0);
    CHECK(lines[1] == R"({"ev":"HoverEntered","node":1,"t":0.1,"dev":"r"})");
    CHECK(lines[2].rfind("{\"frame\":1,", 0) == 0);
}
