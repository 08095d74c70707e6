#include "spatialui/runtime/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include "json_util.hpp"

namespace spatialui {

void LineQueue::push(std::string line) {
    {
        std::lock_guard lock(mutex_);
        lines_.push_back(std::move(line));
    }
    ready_.notify_one();
}

void LineQueue::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    ready_.notify_all();
}

std::optional<std::string> LineQueue::pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return closed_ || !lines_.empty(); });
    if (lines_.empty()) return std::nullopt;
    std::string line = std::move(lines_.front());
    lines_.pop_front();
    return line;
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Protocol: return kExitProtocol;
        case ErrorCode::Format:
        case ErrorCode::Parse:
        case ErrorCode::UnsupportedVersion:
        case ErrorCode::UnsupportedFormat:
        case ErrorCode::TruncatedFile:
        case ErrorCode::OutOfDomain: return kExitInputFormat;
        default: return kExitFailure;
    }
}

namespace {

// Drains the queue through the session. The writer is called once per
// outgoing record, without the trailing newline.
template <typename Write>
int pump(FrameSession& session, LineQueue& queue, Write&& write) {
    write(session.current_snapshot());
    while (std::optional<std::string> line = queue.pop()) {
        try {
            for (const std::string& record : session.handle_line(*line)) write(record);
        } catch (const Error& e) {
            write("{\"error\":" + detail::quote(to_string(e.code())) + ",\"message\":" + detail::quote(e.what()) + "}");
            return exit_code_for(e.code());
        }
    }
    return kExitOk;
}

class Socket {
public:
    explicit Socket(int fd = -1) : fd_(fd) {}
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket() {
        if (fd_ >= 0) ::close(fd_);
    }
    int get() const { return fd_; }

private:
    int fd_;
};

bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

int serve_stream(FrameSession& session, std::istream& in, std::ostream& out) {
    LineQueue queue;
    std::thread reader([&] {
        for (std::string line; std::getline(in, line);) queue.push(std::move(line));
        queue.close();
    });
    const int status = pump(session, queue, [&](const std::string& record) { out << record << '\n' << std::flush; });
    // The reader only finishes at end of input.
    reader.join();
    return status;
}

int serve_tcp(FrameSession& session, int port, const std::function<void(int)>& on_listening) {
    Socket listener(::socket(AF_INET, SOCK_STREAM, 0));
    if (listener.get() < 0) throw Error(ErrorCode::InvalidState, std::string("socket: ") + std::strerror(errno));
    const int yes = 1;
    ::setsockopt(listener.get(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::bind(listener.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
        ::listen(listener.get(), 1) < 0) {
        throw Error(ErrorCode::InvalidState, "cannot listen on port " + std::to_string(port) + ": " +
                                                 std::strerror(errno));
    }
    socklen_t len = sizeof addr;
    ::getsockname(listener.get(), reinterpret_cast<sockaddr*>(&addr), &len);
    if (on_listening) on_listening(ntohs(addr.sin_port));

    Socket client(::accept(listener.get(), nullptr, nullptr));
    if (client.get() < 0) throw Error(ErrorCode::InvalidState, std::string("accept: ") + std::strerror(errno));

    LineQueue queue;
    std::thread reader([&] {
        std::string pending;
        char buf[4096];
        for (;;) {
            const ssize_t n = ::recv(client.get(), buf, sizeof buf, 0);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) break;
            pending.append(buf, static_cast<std::size_t>(n));
            for (std::size_t nl; (nl = pending.find('\n')) != std::string::npos;) {
                std::string line = pending.substr(0, nl);
                if (!line.empty() && line.back() == '\r') line.pop_back();
                queue.push(std::move(line));
                pending.erase(0, nl + 1);
            }
        }
        if (!pending.empty()) queue.push(std::move(pending));
        queue.close();
    });
    const int status = pump(session, queue, [&](const std::string& record) { send_all(client.get(), record + "\n"); });
    ::shutdown(client.get(), SHUT_RDWR);
    reader.join();
    return status;
}

}  // namespace spatialui
