#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>

#include "spatialui/runtime/protocol.hpp"

namespace spatialui {

/// Blocking FIFO handing lines from a reader thread to the tick loop.
class LineQueue {
public:
    void push(std::string line);
    void close();

    /// Next line, or nullopt once closed and drained.
    std::optional<std::string> pop();

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<std::string> lines_;
    bool closed_ = false;
};

/// Process exit statuses shared by the CLI and the session loops.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInputFormat = 2, kExitProtocol = 3 };

int exit_code_for(ErrorCode code) noexcept;

/// Runs a session over streams: greets with the current snapshot, then
/// answers every frame line. A protocol error writes an
/// {"error":"protocol",...} record and returns kExitProtocol.
int serve_stream(FrameSession& session, std::istream& in, std::ostream& out);

/// Accepts one TCP client on 127.0.0.1:port (0 picks a free port) and runs
/// the same loop over the socket. `on_listening` receives the bound port.
int serve_tcp(FrameSession& session, int port, const std::function<void(int)>& on_listening = {});

}  // namespace spatialui
