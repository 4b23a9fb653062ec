#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "avdiag/eval/backend.hpp"

namespace avdiag::eval {

// Remote completion endpoint. The wire schema is the toolkit's generic
// adapter: POST <url> with a JSON body and a {"text": "..."} reply.
//   eval query body:  {"prompt", "media_ref" | "media_b64", ...decoding}
//   judge query body: {"system", "prompt", ...decoding}
// Auth (when auth_env is set) is sent as "Authorization: Bearer $TOKEN" with
// the token read from that environment variable.
struct EndpointConfig {
    std::string id = "http";
    std::string url;             // http://host:port/path
    std::string auth_env;        // env var holding the token; empty = none
    double rate_limit_rps = 1.0; // token bucket; <= 0 disables limiting
    std::string transport = "reference";  // "reference" | "inline"
    int timeout_s = 60;
    std::size_t max_upload_bytes = 32 * 1024 * 1024;
    bool accepts_video_audio = true;
    bool verbose = false;        // log request/response bodies to stderr
    std::string media_root;      // resolves relative output_refs for inline mode
    nlohmann::json decoding;     // passed through opaquely
};

EndpointConfig endpoint_from_json(const nlohmann::json& obj);

std::unique_ptr<ModelBackend> make_http_backend(EndpointConfig config);

// One-shot (system, user) completion against the same endpoint contract;
// used by the llm judge.
std::string http_complete(const EndpointConfig& config, const std::string& system_prompt,
                          const std::string& user_text);

}  // namespace avdiag::eval
