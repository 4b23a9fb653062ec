#include "avdiag/intervene/ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "avdiag/errors.hpp"
#include "avdiag/rng.hpp"

namespace avdiag::intervene {

double quantize_offset(double offset_s, int sample_rate) {
    return static_cast<double>(std::llround(offset_s * sample_rate)) / sample_rate;
}

media::AudioTrack apply_shift(const media::AudioTrack& track, double offset_s) {
    const auto frames = static_cast<std::int64_t>(track.frame_count());
    const std::int64_t shift = std::llround(offset_s * track.sample_rate());
    if (std::llabs(shift) >= frames && shift != 0)
        throw OffsetTooLarge("shift of " + std::to_string(offset_s) +
                             " s covers the whole track");
    if (shift == 0) return track;

    std::vector<std::vector<float>> out(static_cast<std::size_t>(track.channel_count()),
                                        std::vector<float>(static_cast<std::size_t>(frames), 0.0f));
    for (int c = 0; c < track.channel_count(); ++c) {
        auto src = track.channel(c);
        auto& dst = out[static_cast<std::size_t>(c)];
        const std::int64_t begin = std::max<std::int64_t>(0, shift);
        const std::int64_t end = std::min<std::int64_t>(frames, frames + shift);
        for (std::int64_t i = begin; i < end; ++i)
            dst[static_cast<std::size_t>(i)] = src[static_cast<std::size_t>(i - shift)];
    }
    return media::AudioTrack(track.sample_rate(), std::move(out));
}

media::AudioTrack apply_mute(const media::AudioTrack& track) {
    return media::AudioTrack::silence(track.sample_rate(), track.channel_count(),
                                      track.frame_count());
}

namespace {

// Mono is duplicated up, anything else is averaged down first.
std::vector<std::vector<float>> adapt_channels(const media::AudioTrack& src, int want) {
    const std::size_t n = src.frame_count();
    if (src.channel_count() == want) return src.channels();

    std::vector<float> mono(n, 0.0f);
    if (src.channel_count() == 1) {
        auto ch = src.channel(0);
        mono.assign(ch.begin(), ch.end());
    } else {
        for (int c = 0; c < src.channel_count(); ++c) {
            auto ch = src.channel(c);
            for (std::size_t i = 0; i < n; ++i) mono[i] += ch[i];
        }
        const float inv = 1.0f / static_cast<float>(src.channel_count());
        for (auto& s : mono) s *= inv;
    }
    return std::vector<std::vector<float>>(static_cast<std::size_t>(want), mono);
}

}  // namespace

media::AudioTrack apply_swap(const media::SourceClip& target, const media::SourceClip& donor) {
    if (donor.id == target.id) throw SameClip("swap donor equals target: " + donor.id);
    if (!donor.audio) throw DonorSilent("donor " + donor.id + " has no audio");

    const int rate = target.audio ? target.audio->sample_rate() : donor.audio->sample_rate();
    const int channels =
        target.audio ? target.audio->channel_count() : donor.audio->channel_count();

    media::AudioTrack donor_audio = media::resample(*donor.audio, rate);
    std::vector<std::vector<float>> ch = adapt_channels(donor_audio, channels);

    const std::size_t want_frames = target.audio
                                        ? target.audio->frame_count()
                                        : static_cast<std::size_t>(
                                              std::llround(target.duration_s * rate));
    for (auto& c : ch) c.resize(want_frames, 0.0f);  // trim or zero-pad
    return media::AudioTrack(rate, std::move(ch));
}

double sample_shift_offset(std::uint64_t seed, double delta_max, double delta_min) {
    if (!(delta_min > 0.0) || !(delta_min < delta_max))
        throw InvalidRange("need 0 < delta_min < delta_max");
    Rng rng(seed);
    const double magnitude = rng.uniform(delta_min, delta_max);
    return rng.coin() ? magnitude : -magnitude;
}

namespace {

// "0.5" / "1.0" / "0.25": two decimals, one trailing zero stripped.
std::string fmt_edge(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s.size() >= 2 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return s;
}

}  // namespace

std::string band_of(double offset_s, const std::vector<double>& edges) {
    if (offset_s == 0.0) throw OutOfBandRange("zero offset has no band");
    if (edges.size() < 2) throw InvalidRange("need at least two band edges");
    const double mag = std::abs(offset_s);
    if (mag < edges.front() || mag > edges.back())
        throw OutOfBandRange("offset " + std::to_string(mag) + " outside band range");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const bool top = i + 2 == edges.size();
        if (mag >= edges[i] && (mag < edges[i + 1] || (top && mag <= edges[i + 1])))
            return fmt_edge(edges[i]) + "-" + fmt_edge(edges[i + 1]);
    }
    throw OutOfBandRange("offset did not match any band");
}

const std::vector<double>& default_band_edges() {
    static const std::vector<double> edges{0.5, 1.0, 1.5, 2.0};
    return edges;
}

}  // namespace avdiag::intervene
