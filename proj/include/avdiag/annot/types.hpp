#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace avdiag::annot {

enum class Confidence { high, medium, low };

const char* to_string(Confidence c);
Confidence confidence_from_string(const std::string& s);

// One annotator's event-time label for one clip: the salient visible event,
// its corresponding sound, and their timestamps. Visual-only annotators carry
// only the visual pair, audio-only annotators only the audio pair. A time can
// also be "uncertain": the annotator saw/heard the event but could not
// localize it.
struct EventTimeLabel {
    std::string clip_id;
    std::string annotator_id;

    std::optional<std::string> visual_event;
    std::optional<double> visual_time_s;
    bool visual_uncertain = false;

    std::optional<std::string> audio_event;
    std::optional<double> audio_time_s;
    bool audio_uncertain = false;

    Confidence confidence = Confidence::high;

    // retention flags set by annotators/reviewers, never inferred from text
    bool clarity_ok = true;
    bool salience_ok = true;

    bool has_visual() const { return visual_event && (visual_time_s || visual_uncertain); }
    bool has_audio() const { return audio_event && (audio_time_s || audio_uncertain); }
};

// Throws avdiag::Error when neither pair is present or a pair is half-filled.
void validate_label(const EventTimeLabel& label);

// Which annotators verify which stream, plus the reference annotator whose
// event texts win in the consensus (it must belong to both sets in the
// canonical setup, but only membership in the audio set is required).
struct AnnotatorSets {
    std::vector<std::string> visual;  // >= 2 for agreement to be meaningful
    std::vector<std::string> audio;   // >= 1
    std::string reference;

    static AnnotatorSets make(std::vector<std::string> visual, std::vector<std::string> audio,
                              std::string reference = {});
};

// One of N equal windows partitioning [0, T].
struct FrameUnit {
    int index = 0;  // 1-based
    double start_s = 0.0;
    double end_s = 0.0;
};

enum class VerdictStatus { retained, manual_review, discarded };

const char* to_string(VerdictStatus s);
VerdictStatus verdict_status_from_string(const std::string& s);

struct VerificationVerdict {
    std::string clip_id;
    VerdictStatus status = VerdictStatus::manual_review;
    std::vector<std::string> reasons;
    std::optional<EventTimeLabel> consensus;  // present iff retained
};

// Annotation store rows (JSON-lines). Uncertain times serialize as the
// string "uncertain" in the *_time_s fields.
nlohmann::json label_to_json(const EventTimeLabel& label);
EventTimeLabel label_from_json(const nlohmann::json& row);

nlohmann::json verdict_to_json(const VerificationVerdict& verdict);
VerificationVerdict verdict_from_json(const nlohmann::json& row);

}  // namespace avdiag::annot
