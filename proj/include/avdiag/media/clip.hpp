#pragma once

#include <optional>
#include <string>

#include "avdiag/media/audio_track.hpp"

namespace avdiag::media {

// Timestamps are seconds from clip start throughout the toolkit (fields named
// *_time_s), non-negative and bounded by the clip duration where one is known.
// The shared discrete index the formal treatment puts on both streams is
// notational; real clips have distinct frame and sample rates.

// A source clip. The visual stream is an opaque reference (this toolkit never
// decodes frames); audio is decoded on demand.
struct SourceClip {
    std::string id;
    std::string media_ref;   // container or wav path
    std::string visual_ref;  // same container viewed as the visual stream
    double duration_s = 0.0;
    std::optional<AudioTrack> audio;
};

// Validating factory: rejects empty ids, nonpositive durations, and audio
// whose length disagrees with the declared clip duration by more than 0.1 s.
SourceClip make_source_clip(std::string id, std::string media_ref, double duration_s,
                            std::optional<AudioTrack> audio = std::nullopt,
                            std::string visual_ref = {});

}  // namespace avdiag::media
