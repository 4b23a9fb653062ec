#include "avdiag/eval/http_backend.hpp"

#include <chrono>
#include <iostream>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "avdiag/errors.hpp"

namespace avdiag::eval {

namespace {

struct ParsedUrl {
    std::string host;
    int port = 80;
    std::string path = "/";
};

ParsedUrl parse_url(const std::string& url) {
    const std::string prefix = "http://";
    if (url.rfind(prefix, 0) != 0)
        throw Error("endpoint url must start with http:// (got " + url + ")");
    ParsedUrl out;
    std::string rest = url.substr(prefix.size());
    const auto slash = rest.find('/');
    std::string hostport = rest.substr(0, slash);
    if (slash != std::string::npos) out.path = rest.substr(slash);
    const auto colon = hostport.find(':');
    if (colon == std::string::npos) {
        out.host = hostport;
    } else {
        out.host = hostport.substr(0, colon);
        out.port = std::stoi(hostport.substr(colon + 1));
    }
    return out;
}

std::string base64_encode(const std::string& in) {
    static const char* tbl =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < in.size(); i += 3) {
        std::uint32_t v = static_cast<unsigned char>(in[i]) << 16;
        if (i + 1 < in.size()) v |= static_cast<unsigned char>(in[i + 1]) << 8;
        if (i + 2 < in.size()) v |= static_cast<unsigned char>(in[i + 2]);
        out.push_back(tbl[v >> 18 & 63]);
        out.push_back(tbl[v >> 12 & 63]);
        out.push_back(i + 1 < in.size() ? tbl[v >> 6 & 63] : '=');
        out.push_back(i + 2 < in.size() ? tbl[v & 63] : '=');
    }
    return out;
}

// Simple token bucket; acquire() blocks until the next slot.
class RateLimiter {
public:
    explicit RateLimiter(double rps) : interval_ms_(rps > 0 ? 1000.0 / rps : 0.0) {}

    void acquire() {
        if (interval_ms_ <= 0) return;
        std::chrono::steady_clock::time_point wait_until;
        {
            std::lock_guard lock(mu_);
            const auto now = std::chrono::steady_clock::now();
            if (next_ < now) next_ = now;
            wait_until = next_;
            next_ += std::chrono::milliseconds(static_cast<int>(interval_ms_));
        }
        std::this_thread::sleep_until(wait_until);
    }

private:
    double interval_ms_;
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_{};
};

std::string post_json(const EndpointConfig& config, const nlohmann::json& body) {
    const ParsedUrl url = parse_url(config.url);
    if (config.verbose) std::cerr << config.id << " >> " << body.dump() << "\n";
    httplib::Client client(url.host, url.port);
    client.set_connection_timeout(config.timeout_s);
    client.set_read_timeout(config.timeout_s);

    httplib::Headers headers;
    if (!config.auth_env.empty()) {
        const char* token = std::getenv(config.auth_env.c_str());
        if (!token)
            throw Error("auth env var " + config.auth_env + " is not set");
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
            err == httplib::Error::Write)
            throw Timeout("timeout talking to " + config.url);
        throw Error("http error talking to " + config.url + ": " + httplib::to_string(err));
    }
    if (config.verbose)
        std::cerr << config.id << " << " << res->status << " " << res->body << "\n";
    if (res->status == 413) throw PayloadTooLarge("endpoint rejected payload (413)");
    if (res->status != 200)
        throw HttpStatus(res->status,
                         "HTTP " + std::to_string(res->status) + " from " + config.url);

    const auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("text"))
        throw Error("endpoint reply is not a {\"text\": ...} object");
    return reply.at("text").get<std::string>();
}

class HttpBackend final : public ModelBackend {
public:
    explicit HttpBackend(EndpointConfig config)
        : config_(std::move(config)), limiter_(config_.rate_limit_rps) {}

    std::string id() const override { return config_.id; }
    bool accepts_video_audio() const override { return config_.accepts_video_audio; }

    std::string query(const ManifestEntry& entry, const std::string& prompt) override {
        nlohmann::json body;
        body["prompt"] = prompt;
        if (config_.transport == "inline") {
            body["media_b64"] = base64_encode(load_media(entry.output_ref));
        } else {
            body["media_ref"] = entry.output_ref;
        }
        if (!config_.decoding.is_null()) body["decoding"] = config_.decoding;
        limiter_.acquire();
        return post_json(config_, body);
    }

private:
    std::string load_media(const std::string& ref) const {
        std::filesystem::path path = ref;
        if (path.is_relative() && !config_.media_root.empty())
            path = std::filesystem::path(config_.media_root) / path;
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open media " + path.string());
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        if (bytes.size() > config_.max_upload_bytes)
            throw PayloadTooLarge("media " + path.string() + " exceeds inline upload limit");
        return bytes;
    }

    EndpointConfig config_;
    RateLimiter limiter_;
};

}  // namespace

EndpointConfig endpoint_from_json(const nlohmann::json& obj) {
    EndpointConfig c;
    c.id = obj.value("id", std::string("http"));
    c.url = obj.at("url").get<std::string>();
    c.auth_env = obj.value("auth_env", std::string{});
    c.rate_limit_rps = obj.value("rate_limit_rps", 1.0);
    c.transport = obj.value("transport", std::string("reference"));
    c.timeout_s = obj.value("timeout_s", 60);
    c.max_upload_bytes = obj.value("max_upload_bytes", std::size_t{32 * 1024 * 1024});
    c.accepts_video_audio = obj.value("accepts_video_audio", true);
    c.verbose = obj.value("verbose", false);
    c.media_root = obj.value("media_root", std::string{});
    if (obj.contains("decoding")) c.decoding = obj.at("decoding");
    return c;
}

std::unique_ptr<ModelBackend> make_http_backend(EndpointConfig config) {
    return std::make_unique<HttpBackend>(std::move(config));
}

std::string http_complete(const EndpointConfig& config, const std::string& system_prompt,
                          const std::string& user_text) {
    nlohmann::json body;
    body["system"] = system_prompt;
    body["prompt"] = user_text;
    if (!config.decoding.is_null()) body["decoding"] = config.decoding;
    return post_json(config, body);
}

}  // namespace avdiag::eval
