#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace avdiag::media {

// Decoded PCM audio, planar layout, amplitudes normalized to [-1, 1].
// Immutable after construction; all intervention operators return new tracks.
class AudioTrack {
public:
    // Throws std::invalid_argument when rate/channel counts are invalid,
    // channel lengths differ, or any amplitude falls outside [-1, 1].
    AudioTrack(int sample_rate, std::vector<std::vector<float>> channels);

    int sample_rate() const { return sample_rate_; }
    int channel_count() const { return static_cast<int>(channels_.size()); }
    std::size_t frame_count() const { return channels_.empty() ? 0 : channels_[0].size(); }
    double duration_s() const {
        return static_cast<double>(frame_count()) / sample_rate_;
    }

    std::span<const float> channel(int c) const { return channels_[static_cast<std::size_t>(c)]; }
    const std::vector<std::vector<float>>& channels() const { return channels_; }

    static AudioTrack silence(int sample_rate, int channel_count, std::size_t frames);

private:
    int sample_rate_;
    std::vector<std::vector<float>> channels_;
};

// Linear-interpolation resample. target_rate == sample_rate returns the input
// unchanged; otherwise output duration matches within one frame at the target
// rate. No anti-alias filtering, by contract.
AudioTrack resample(const AudioTrack& track, int target_rate);

}  // namespace avdiag::media
