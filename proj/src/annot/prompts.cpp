#include "avdiag/annot/prompts.hpp"

#include <cstdio>

namespace avdiag::annot {

namespace {

constexpr const char* kAnnotationPrompt =
    R"(You are given a video with audio. Identify the most salient visible event that has a corresponding acoustic consequence.
Return a JSON object with the following fields:

visual_event: a short description of the visible event.

visual_time: the timestamp in seconds when the visible event occurs.

audio_event: a short description of the corresponding sound.

audio_time: the timestamp in seconds when the sound occurs.

confidence: high / medium / low.

If the visual event or audio event cannot be localized reliably, return uncertain.
)";

constexpr const char* kFrameUnitPromptHead =
    R"(You are given temporally ordered frame units from a video. Each unit contains representative frames and a timestamp range.
Target visual event: )";

constexpr const char* kFrameUnitPromptTail = R"(.

Select the frame unit where this event occurs.

Return:
unit_id, timestamp_range, and a one-sentence justification.
If the event is not visible or cannot be localized, return uncertain.

Frame units:
)";

}  // namespace

std::string render_annotation_prompt(const media::SourceClip&) {
    return kAnnotationPrompt;
}

std::string render_frameunit_prompt(const std::vector<FrameUnit>& units,
                                    const std::string& candidate_event) {
    std::string out = kFrameUnitPromptHead;
    out += candidate_event;
    out += kFrameUnitPromptTail;
    char line[96];
    for (const auto& u : units) {
        std::snprintf(line, sizeof line, "unit %d: [%.2fs, %.2fs]\n", u.index, u.start_s,
                      u.end_s);
        out += line;
    }
    return out;
}

}  // namespace avdiag::annot
