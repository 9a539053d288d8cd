#pragma once

#include "figedit/geometry.hpp"
#include "figedit/session.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace figedit {

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

struct Event {
    std::string type;  // "doc-changed" or "saved"
    std::uint64_t revision = 0;
    std::string to_json() const;
};

/// Request handling for the editor API, independent of any transport.
/// Mutating requests must be issued from a single thread (the server's
/// command queue); doc and svg reads are served from an immutable snapshot
/// and may be called from any thread.
class EditorService {
public:
    EditorService(Session session, double snap_px = kDefaultSnapPx);

    ApiResponse handle(std::string_view method, std::string_view target, std::string_view body);

    /// Called after every successful edit or save.
    std::function<void(const Event&)> on_event;

    const Session& session() const noexcept { return session_; }

private:
    struct Snapshot {
        std::uint64_t revision = 0;
        std::string doc_json;
        std::string svg_json;
    };

    ApiResponse get_doc() const;
    ApiResponse get_svg() const;
    ApiResponse post_edit(std::string_view body);
    ApiResponse post_drag(std::string_view body);
    ApiResponse post_save();
    void refresh_snapshot();
    void emit(const std::string& type);

    Session session_;
    double snap_px_;
    std::uint64_t revision_ = 0;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
};

/// HTTP + WebSocket front end bound to 127.0.0.1. All requests run on one
/// I/O thread, so mutations are processed strictly in arrival order.
class HttpServer {
public:
    HttpServer(EditorService& service, unsigned short port);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Actual bound port (useful when constructed with port 0).
    unsigned short port() const noexcept;

    /// Blocks until stop() or SIGINT/SIGTERM.
    void run();
    /// Runs on a background thread.
    void start();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace figedit
