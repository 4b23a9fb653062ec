#include "avdiag/media/clip.hpp"

#include <cmath>
#include <stdexcept>

namespace avdiag::media {

SourceClip make_source_clip(std::string id, std::string media_ref, double duration_s,
                            std::optional<AudioTrack> audio, std::string visual_ref) {
    if (id.empty()) throw std::invalid_argument("clip id must be non-empty");
    if (!(duration_s > 0.0)) throw std::invalid_argument("clip duration must be positive");
    if (audio && std::abs(audio->duration_s() - duration_s) > 0.1)
        throw std::invalid_argument("audio duration disagrees with clip duration for " + id);
    SourceClip clip;
    clip.id = std::move(id);
    clip.media_ref = std::move(media_ref);
    clip.visual_ref = visual_ref.empty() ? clip.media_ref : std::move(visual_ref);
    clip.duration_s = duration_s;
    clip.audio = std::move(audio);
    return clip;
}

}  // namespace avdiag::media
