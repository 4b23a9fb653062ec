#include "avdiag/media/audio_track.hpp"

#include <cmath>
#include <stdexcept>

namespace avdiag::media {

AudioTrack::AudioTrack(int sample_rate, std::vector<std::vector<float>> channels)
    : sample_rate_(sample_rate), channels_(std::move(channels)) {
    if (sample_rate_ <= 0) throw std::invalid_argument("sample_rate must be positive");
    if (channels_.empty()) throw std::invalid_argument("at least one channel required");
    const std::size_t n = channels_[0].size();
    for (const auto& ch : channels_) {
        if (ch.size() != n) throw std::invalid_argument("channel frame counts differ");
        for (float s : ch) {
            if (!(s >= -1.0f && s <= 1.0f))  // also rejects NaN
                throw std::invalid_argument("amplitude outside [-1, 1]");
        }
    }
}

AudioTrack AudioTrack::silence(int sample_rate, int channel_count, std::size_t frames) {
    std::vector<std::vector<float>> ch(static_cast<std::size_t>(channel_count),
                                       std::vector<float>(frames, 0.0f));
    return AudioTrack(sample_rate, std::move(ch));
}

AudioTrack resample(const AudioTrack& track, int target_rate) {
    if (target_rate <= 0) throw std::invalid_argument("target_rate must be positive");
    if (target_rate == track.sample_rate()) return track;

    const std::size_t n_in = track.frame_count();
    const std::size_t n_out = static_cast<std::size_t>(std::llround(
        static_cast<double>(n_in) * target_rate / track.sample_rate()));

    std::vector<std::vector<float>> out(static_cast<std::size_t>(track.channel_count()),
                                        std::vector<float>(n_out, 0.0f));
    if (n_in == 0) return AudioTrack(target_rate, std::move(out));

    const double step = static_cast<double>(track.sample_rate()) / target_rate;
    for (int c = 0; c < track.channel_count(); ++c) {
        auto src = track.channel(c);
        auto& dst = out[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < n_out; ++i) {
            const double pos = static_cast<double>(i) * step;
            const std::size_t lo = std::min(static_cast<std::size_t>(pos), n_in - 1);
            const std::size_t hi = std::min(lo + 1, n_in - 1);
            const double frac = pos - static_cast<double>(lo);
            dst[i] = static_cast<float>(src[lo] + (src[hi] - src[lo]) * frac);
        }
    }
    return AudioTrack(target_rate, std::move(out));
}

}  // namespace avdiag::media
