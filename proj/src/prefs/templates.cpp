#include "avdiag/prefs/templates.hpp"

#include <cstdio>

namespace avdiag::prefs {

std::string fmt_time(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "~%.1fs", seconds);
    return buf;
}

std::string synced_description(const std::string& visual_event, double visual_time_s,
                               const std::string& audio_event, double audio_time_s) {
    return "The visible " + visual_event + " occurs at " + fmt_time(visual_time_s) +
           " and the " + audio_event + " is heard at " + fmt_time(audio_time_s) +
           "; the audio and video are synchronized.";
}

std::string shifted_description(const std::string& visual_event, double visual_time_s,
                                const std::string& audio_event, double shifted_audio_time_s,
                                intervene::Direction direction, double offset_magnitude_s) {
    char offset[32];
    std::snprintf(offset, sizeof offset, "~%.1fs", offset_magnitude_s);
    return "The visible " + visual_event + " occurs at " + fmt_time(visual_time_s) +
           ", while the " + audio_event + " is heard at " + fmt_time(shifted_audio_time_s) +
           ", indicating a synchronization mismatch; the audio is " +
           (direction == intervene::Direction::early ? "early" : "delayed") + " by " +
           offset + ".";
}

std::string mute_chosen() {
    return "The audio track is silent throughout the clip; nothing audible is present.";
}

std::string mute_rejected(const std::string& visual_event, const std::string& audio_event) {
    return "A " + audio_event + " is heard as the " + visual_event +
           " occurs, matching the scene.";
}

std::string swap_chosen(const std::string& visual_event,
                        const std::string& donor_audio_event) {
    return "The visuals show " + visual_event + ", but the audio contains " +
           donor_audio_event + ", indicating an audio-source mismatch.";
}

std::string swap_rejected(const std::string& visual_event,
                          const std::string& donor_audio_event) {
    return "A " + donor_audio_event + " accompanies the " + visual_event +
           ", fitting what is shown.";
}

}  // namespace avdiag::prefs
