#include "figedit/service.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <iostream>
#include <set>
#include <thread>

namespace figedit {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

class WsSession;

// Live event subscribers. Only touched from the I/O thread.
struct Hub {
    std::set<std::shared_ptr<WsSession>> sessions;
    void broadcast(const std::string& message);
};

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket socket, Hub& hub) : ws_(std::move(socket)), hub_(hub) {}

    void run(http::request<http::string_body> req)
    {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) return;
            self->hub_.sessions.insert(self);
            self->read();
        });
    }

    void send(std::string message)
    {
        queue_.push_back(std::move(message));
        if (queue_.size() == 1) write();
    }

private:
    void read()
    {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->hub_.sessions.erase(self);
                return;
            }
            self->buffer_.consume(self->buffer_.size());
            self->read();
        });
    }

    void write()
    {
        ws_.text(true);
        ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->hub_.sessions.erase(self);
                return;
            }
            self->queue_.pop_front();
            if (!self->queue_.empty()) self->write();
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
    Hub& hub_;
};

void Hub::broadcast(const std::string& message)
{
    for (const auto& s : sessions) s->send(message);
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket socket, EditorService& service, Hub& hub)
        : stream_(std::move(socket)), service_(service), hub_(hub)
    {
    }

    void run() { read(); }

private:
    void read()
    {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(60));
        http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return self->close();
            self->handle();
        });
    }

    void handle()
    {
        if (websocket::is_upgrade(req_)) {
            if (req_.target() == "/api/events") {
                std::make_shared<WsSession>(stream_.release_socket(), hub_)->run(std::move(req_));
                return;
            }
        }
        const ApiResponse r = service_.handle(std::string_view(req_.method_string().data(), req_.method_string().size()),
                                              std::string_view(req_.target().data(), req_.target().size()),
                                              req_.body());
        auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(r.status),
                                                                       req_.version());
        res->set(http::field::server, "figedit");
        res->set(http::field::content_type, r.content_type);
        res->keep_alive(req_.keep_alive());
        res->body() = r.body;
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec || !res->keep_alive()) return self->close();
            self->read();
        });
    }

    void close()
    {
        beast::error_code ec;
        stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
    EditorService& service_;
    Hub& hub_;
};

}  // namespace

struct HttpServer::Impl {
    net::io_context ioc{1};
    tcp::acceptor acceptor{ioc};
    EditorService& service;
    Hub hub;
    std::thread thread;

    explicit Impl(EditorService& s) : service(s) {}

    void accept()
    {
        acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (!ec) std::make_shared<HttpSession>(std::move(socket), service, hub)->run();
            if (acceptor.is_open()) accept();
        });
    }
};

HttpServer::HttpServer(EditorService& service, unsigned short port) : impl_(std::make_unique<Impl>(service))
{
    const tcp::endpoint endpoint(net::ip::make_address("127.0.0.1"), port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(net::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen(net::socket_base::max_listen_connections);
    service.on_event = [this](const Event& e) { impl_->hub.broadcast(e.to_json()); };
    impl_->accept();
}

HttpServer::~HttpServer()
{
    stop();
    impl_->service.on_event = nullptr;
}

unsigned short HttpServer::port() const noexcept
{
    return impl_->acceptor.local_endpoint().port();
}

void HttpServer::run()
{
    net::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
    signals.async_wait([this](beast::error_code, int) { impl_->ioc.stop(); });
    impl_->ioc.run();
}

void HttpServer::start()
{
    impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

void HttpServer::stop()
{
    impl_->ioc.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace figedit
