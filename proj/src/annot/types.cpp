#include "avdiag/annot/types.hpp"

#include <algorithm>
#include <stdexcept>

#include "avdiag/errors.hpp"

namespace avdiag::annot {

const char* to_string(Confidence c) {
    switch (c) {
        case Confidence::high: return "high";
        case Confidence::medium: return "medium";
        case Confidence::low: return "low";
    }
    return "?";
}

Confidence confidence_from_string(const std::string& s) {
    if (s == "high") return Confidence::high;
    if (s == "medium") return Confidence::medium;
    if (s == "low") return Confidence::low;
    throw Error("unknown confidence: " + s);
}

void validate_label(const EventTimeLabel& label) {
    const bool v = label.has_visual();
    const bool a = label.has_audio();
    if (!v && !a)
        throw Error("label for " + label.clip_id + "/" + label.annotator_id +
                    " carries neither a visual nor an audio pair");
    if (label.visual_event && !(label.visual_time_s || label.visual_uncertain))
        throw Error("visual event without a time for " + label.clip_id);
    if ((label.visual_time_s || label.visual_uncertain) && !label.visual_event)
        throw Error("visual time without an event for " + label.clip_id);
    if (label.audio_event && !(label.audio_time_s || label.audio_uncertain))
        throw Error("audio event without a time for " + label.clip_id);
    if ((label.audio_time_s || label.audio_uncertain) && !label.audio_event)
        throw Error("audio time without an event for " + label.clip_id);
    if ((label.visual_time_s && *label.visual_time_s < 0.0) ||
        (label.audio_time_s && *label.audio_time_s < 0.0))
        throw Error("negative timestamp for " + label.clip_id);
}

AnnotatorSets AnnotatorSets::make(std::vector<std::string> visual,
                                  std::vector<std::string> audio, std::string reference) {
    if (visual.size() < 2)
        throw std::invalid_argument("need at least two visual annotators");
    if (audio.empty()) throw std::invalid_argument("need at least one audio annotator");
    AnnotatorSets sets;
    sets.visual = std::move(visual);
    sets.audio = std::move(audio);
    sets.reference = reference.empty() ? sets.audio.front() : std::move(reference);
    if (std::find(sets.audio.begin(), sets.audio.end(), sets.reference) == sets.audio.end())
        throw std::invalid_argument("reference annotator must belong to the audio set");
    return sets;
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::retained: return "retained";
        case VerdictStatus::manual_review: return "manual_review";
        case VerdictStatus::discarded: return "discarded";
    }
    return "?";
}

VerdictStatus verdict_status_from_string(const std::string& s) {
    if (s == "retained") return VerdictStatus::retained;
    if (s == "manual_review") return VerdictStatus::manual_review;
    if (s == "discarded") return VerdictStatus::discarded;
    throw Error("unknown verdict status: " + s);
}

namespace {

void put_time(nlohmann::json& row, const char* key, const std::optional<double>& t,
              bool uncertain) {
    if (uncertain)
        row[key] = "uncertain";
    else if (t)
        row[key] = *t;
}

void get_time(const nlohmann::json& row, const char* key, std::optional<double>& t,
              bool& uncertain) {
    if (!row.contains(key)) return;
    const auto& v = row.at(key);
    if (v.is_string() && v.get<std::string>() == "uncertain")
        uncertain = true;
    else
        t = v.get<double>();
}

}  // namespace

nlohmann::json label_to_json(const EventTimeLabel& label) {
    nlohmann::json row;
    row["clip_id"] = label.clip_id;
    row["annotator_id"] = label.annotator_id;
    if (label.visual_event) row["visual_event"] = *label.visual_event;
    put_time(row, "visual_time_s", label.visual_time_s, label.visual_uncertain);
    if (label.audio_event) row["audio_event"] = *label.audio_event;
    put_time(row, "audio_time_s", label.audio_time_s, label.audio_uncertain);
    row["confidence"] = to_string(label.confidence);
    row["clarity_ok"] = label.clarity_ok;
    row["salience_ok"] = label.salience_ok;
    return row;
}

EventTimeLabel label_from_json(const nlohmann::json& row) {
    EventTimeLabel label;
    label.clip_id = row.at("clip_id").get<std::string>();
    label.annotator_id = row.at("annotator_id").get<std::string>();
    if (row.contains("visual_event")) label.visual_event = row.at("visual_event").get<std::string>();
    get_time(row, "visual_time_s", label.visual_time_s, label.visual_uncertain);
    if (row.contains("audio_event")) label.audio_event = row.at("audio_event").get<std::string>();
    get_time(row, "audio_time_s", label.audio_time_s, label.audio_uncertain);
    if (row.contains("confidence"))
        label.confidence = confidence_from_string(row.at("confidence").get<std::string>());
    label.clarity_ok = row.value("clarity_ok", true);
    label.salience_ok = row.value("salience_ok", true);
    return label;
}

nlohmann::json verdict_to_json(const VerificationVerdict& verdict) {
    nlohmann::json row;
    row["clip_id"] = verdict.clip_id;
    row["status"] = to_string(verdict.status);
    row["reasons"] = verdict.reasons;
    if (verdict.consensus) row["consensus"] = label_to_json(*verdict.consensus);
    return row;
}

VerificationVerdict verdict_from_json(const nlohmann::json& row) {
    VerificationVerdict v;
    v.clip_id = row.at("clip_id").get<std::string>();
    v.status = verdict_status_from_string(row.at("status").get<std::string>());
    if (row.contains("reasons")) v.reasons = row.at("reasons").get<std::vector<std::string>>();
    if (row.contains("consensus")) v.consensus = label_from_json(row.at("consensus"));
    return v;
}

}  // namespace avdiag::annot
