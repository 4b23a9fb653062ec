#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "avdiag/intervene/types.hpp"
#include "avdiag/judge/prediction.hpp"

namespace avdiag::eval {

// One query target: an intervened-manifest row. Stub backends read the
// ground truth; remote backends only see output_ref and the prompt.
using ManifestEntry = intervene::InterventionRecord;

class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    virtual std::string id() const = 0;
    virtual bool accepts_video_audio() const = 0;

    // Returns the raw text completion; throws on transport failure. Must be
    // safe to call concurrently.
    virtual std::string query(const ManifestEntry& entry, const std::string& prompt) = 0;
};

struct ResponseRecord {
    std::string clip_id;  // manifest row id
    std::string model_id;
    judge::Task task = judge::Task::shift;
    std::string prompt_id;
    std::string raw_text;
    std::int64_t latency_ms = 0;
    int attempt_count = 1;
    std::optional<std::string> error;
    // backends that cannot ingest audio are still evaluated; the limitation
    // is recorded here instead of refusing the run
    bool no_audio_input = false;
};

nlohmann::json response_to_json(const ResponseRecord& r);
ResponseRecord response_from_json(const nlohmann::json& row);

}  // namespace avdiag::eval
