#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

namespace avdiag::intervene {

enum class Condition { synced, desynced, silent, mismatched };
enum class Direction { early, delayed };

const char* to_string(Condition c);
const char* to_string(Direction d);
Condition condition_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);

struct Original {};
struct Shift {
    double offset_s = 0.0;  // signed; nonzero
};
struct Mute {};
struct Swap {
    std::string source_clip_id;
};

using InterventionKind = std::variant<Original, Shift, Mute, Swap>;

// Validating constructors. Shift requires a nonzero offset within
// [-delta_max, delta_max]; Swap requires a donor distinct from the target.
InterventionKind make_shift_kind(double offset_s, double delta_max);
InterventionKind make_swap_kind(const std::string& donor_id, const std::string& target_id);

const char* kind_name(const InterventionKind& kind);

// Ground truth derived from an intervention, the reference every metric is
// scored against.
struct GroundTruth {
    Condition condition = Condition::synced;
    std::optional<Direction> direction;   // desynced only
    std::optional<double> offset_s;       // |delta|, desynced only (quantized)
    double visual_time_s = 0.0;
    std::optional<double> audio_time_s;   // absent when silent
    std::optional<std::string> band;      // shift only
};

struct InterventionRecord {
    std::string id;       // unique row id, e.g. "clip003__shift"
    std::string clip_id;  // base clip
    InterventionKind kind;
    GroundTruth ground_truth;
    std::string output_ref;
    std::uint64_t seed = 0;
};

// Checks the kind/ground-truth consistency invariant; throws avdiag::Error
// when the condition, direction, or timing fields disagree with the kind.
void validate_record(const InterventionRecord& record);

// Intervened-clip manifest rows (JSON-lines). Fields absent when
// inapplicable.
nlohmann::json record_to_json(const InterventionRecord& record);
InterventionRecord record_from_json(const nlohmann::json& row);

}  // namespace avdiag::intervene
