#include "avdiag/intervene/types.hpp"

#include <cmath>

#include "avdiag/errors.hpp"

namespace avdiag::intervene {

const char* to_string(Condition c) {
    switch (c) {
        case Condition::synced: return "synced";
        case Condition::desynced: return "desynced";
        case Condition::silent: return "silent";
        case Condition::mismatched: return "mismatched";
    }
    return "?";
}

const char* to_string(Direction d) {
    return d == Direction::early ? "early" : "delayed";
}

Condition condition_from_string(const std::string& s) {
    if (s == "synced") return Condition::synced;
    if (s == "desynced") return Condition::desynced;
    if (s == "silent") return Condition::silent;
    if (s == "mismatched") return Condition::mismatched;
    throw Error("unknown condition: " + s);
}

Direction direction_from_string(const std::string& s) {
    if (s == "early") return Direction::early;
    if (s == "delayed") return Direction::delayed;
    throw Error("unknown direction: " + s);
}

InterventionKind make_shift_kind(double offset_s, double delta_max) {
    if (offset_s == 0.0) throw InvalidOffset("shift offset must be nonzero");
    if (std::abs(offset_s) > delta_max)
        throw InvalidOffset("shift offset exceeds delta_max");
    return Shift{offset_s};
}

InterventionKind make_swap_kind(const std::string& donor_id, const std::string& target_id) {
    if (donor_id == target_id) throw SameClip("swap donor equals target: " + donor_id);
    return Swap{donor_id};
}

const char* kind_name(const InterventionKind& kind) {
    switch (kind.index()) {
        case 0: return "original";
        case 1: return "shift";
        case 2: return "mute";
        default: return "swap";
    }
}

void validate_record(const InterventionRecord& record) {
    const GroundTruth& gt = record.ground_truth;
    if (std::holds_alternative<Original>(record.kind)) {
        if (gt.condition != Condition::synced)
            throw Error(record.id + ": original record must be synced");
    } else if (const Shift* s = std::get_if<Shift>(&record.kind)) {
        if (gt.condition != Condition::desynced)
            throw Error(record.id + ": shift record must be desynced");
        if (!gt.direction || !gt.offset_s)
            throw Error(record.id + ": shift record missing direction/offset");
        const Direction expect = s->offset_s > 0 ? Direction::delayed : Direction::early;
        if (*gt.direction != expect)
            throw Error(record.id + ": direction inconsistent with offset sign");
        if (std::abs(*gt.offset_s - std::abs(s->offset_s)) > 1e-9)
            throw Error(record.id + ": |offset| mismatch");
        if (!gt.audio_time_s)
            throw Error(record.id + ": shift record missing audio time");
    } else if (std::holds_alternative<Mute>(record.kind)) {
        if (gt.condition != Condition::silent)
            throw Error(record.id + ": mute record must be silent");
        if (gt.audio_time_s)
            throw Error(record.id + ": muted record cannot carry an audio time");
    } else {
        if (gt.condition != Condition::mismatched)
            throw Error(record.id + ": swap record must be mismatched");
    }
}

nlohmann::json record_to_json(const InterventionRecord& record) {
    nlohmann::json row;
    row["id"] = record.id;
    row["base_id"] = record.clip_id;
    row["kind"] = kind_name(record.kind);
    if (const Shift* s = std::get_if<Shift>(&record.kind)) row["offset_s"] = s->offset_s;
    if (const Swap* w = std::get_if<Swap>(&record.kind)) row["donor_id"] = w->source_clip_id;
    const GroundTruth& gt = record.ground_truth;
    row["condition"] = to_string(gt.condition);
    if (gt.direction) row["direction"] = to_string(*gt.direction);
    row["visual_time_s"] = gt.visual_time_s;
    if (gt.audio_time_s) row["audio_time_s"] = *gt.audio_time_s;
    if (gt.band) row["band"] = *gt.band;
    row["output_ref"] = record.output_ref;
    row["seed"] = record.seed;
    return row;
}

InterventionRecord record_from_json(const nlohmann::json& row) {
    InterventionRecord rec;
    rec.id = row.at("id").get<std::string>();
    rec.clip_id = row.at("base_id").get<std::string>();
    const std::string kind = row.at("kind").get<std::string>();
    if (kind == "original") {
        rec.kind = Original{};
    } else if (kind == "shift") {
        rec.kind = Shift{row.at("offset_s").get<double>()};
    } else if (kind == "mute") {
        rec.kind = Mute{};
    } else if (kind == "swap") {
        rec.kind = Swap{row.at("donor_id").get<std::string>()};
    } else {
        throw Error("unknown intervention kind: " + kind);
    }
    GroundTruth gt;
    gt.condition = condition_from_string(row.at("condition").get<std::string>());
    if (row.contains("direction"))
        gt.direction = direction_from_string(row.at("direction").get<std::string>());
    gt.visual_time_s = row.at("visual_time_s").get<double>();
    if (row.contains("audio_time_s")) gt.audio_time_s = row.at("audio_time_s").get<double>();
    if (row.contains("band")) gt.band = row.at("band").get<std::string>();
    if (gt.condition == Condition::desynced && row.contains("offset_s"))
        gt.offset_s = std::abs(row.at("offset_s").get<double>());
    rec.ground_truth = gt;
    rec.output_ref = row.value("output_ref", std::string{});
    rec.seed = row.value("seed", std::uint64_t{0});
    return rec;
}

}  // namespace avdiag::intervene
