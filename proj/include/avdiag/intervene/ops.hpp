#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avdiag/media/audio_track.hpp"
#include "avdiag/media/clip.hpp"

namespace avdiag::intervene {

// Offsets are quantized to integer frames at the track's rate so outputs are
// bit-reproducible. Returns the quantized offset actually applied.
double quantize_offset(double offset_s, int sample_rate);

// Temporal displacement. For offset > 0 the audio plays later: output[t] =
// input[t - offset], the vacated head is digital silence. For offset < 0 the
// audio plays earlier and the tail is silenced. Samples shifted past either
// boundary are discarded. Frame count is always preserved.
// Throws OffsetTooLarge when |offset| >= track duration.
media::AudioTrack apply_shift(const media::AudioTrack& track, double offset_s);

// Replaces the signal with digital silence of identical shape.
media::AudioTrack apply_mute(const media::AudioTrack& track);

// Replaces the target's audio with the donor's: donor audio is resampled to
// the target rate, channel-adapted (mono duplicated, multi averaged), then
// trimmed or zero-padded to the target duration.
// Throws SameClip when donor.id == target.id, DonorSilent when the donor has
// no audio.
media::AudioTrack apply_swap(const media::SourceClip& target, const media::SourceClip& donor);

// Uniform draw from [-delta_max, -delta_min] U [delta_min, delta_max],
// deterministic in the seed. Throws InvalidRange unless 0 < delta_min <
// delta_max.
double sample_shift_offset(std::uint64_t seed, double delta_max, double delta_min);

// Difficulty bands over |offset|. Edges define left-closed intervals; the top
// band is closed on both ends. Throws OutOfBandRange for offsets outside
// [edges.front(), edges.back()] and for a zero offset.
std::string band_of(double offset_s, const std::vector<double>& edges);

// Default edges 0.5/1.0/1.5/2.0 -> bands "0.5-1.0", "1.0-1.5", "1.5-2.0".
const std::vector<double>& default_band_edges();

}  // namespace avdiag::intervene
