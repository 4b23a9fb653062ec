#pragma once

#include <string>

#include "avdiag/intervene/types.hpp"

namespace avdiag::prefs {

// Fixed response templates with slots. Each chosen template carries a
// distinctive marker that classify_chosen() can map back to the video's
// ground-truth condition, which is what makes generated data checkable.

std::string synced_description(const std::string& visual_event, double visual_time_s,
                               const std::string& audio_event, double audio_time_s);

// "... indicating a synchronization mismatch; the audio is early by ~1.9s."
std::string shifted_description(const std::string& visual_event, double visual_time_s,
                                const std::string& audio_event, double shifted_audio_time_s,
                                intervene::Direction direction, double offset_magnitude_s);

std::string mute_chosen();
std::string mute_rejected(const std::string& visual_event, const std::string& audio_event);

std::string swap_chosen(const std::string& visual_event, const std::string& donor_audio_event);
std::string swap_rejected(const std::string& visual_event,
                          const std::string& donor_audio_event);

// "~5.0s" style timestamp used in all templates.
std::string fmt_time(double seconds);

}  // namespace avdiag::prefs
