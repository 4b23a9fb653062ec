#include <doctest.h>

#include <cmath>
#include <numeric>

#include "avdiag/errors.hpp"
#include "avdiag/intervene/ops.hpp"
#include "avdiag/intervene/types.hpp"
#include "avdiag/intervene/validate.hpp"
#include "avdiag/rng.hpp"
#include "../support/synthetic.hpp"

using namespace avdiag;
using namespace avdiag::intervene;

namespace {

double energy(const media::AudioTrack& t) {
    double e = 0.0;
    for (int c = 0; c < t.channel_count(); ++c)
        for (float s : t.channel(c)) e += static_cast<double>(s) * s;
    return e;
}

std::size_t peak_index(const media::AudioTrack& t) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < t.frame_count(); ++i)
        if (std::abs(t.channel(0)[i]) > std::abs(t.channel(0)[peak])) peak = i;
    return peak;
}

annot::EventTimeLabel label_for(double t_v, double t_a, const char* e_v = "ball drop",
                                const char* e_a = "sharp thump") {
    annot::EventTimeLabel l;
    l.clip_id = "clip";
    l.annotator_id = "consensus";
    l.visual_event = e_v;
    l.visual_time_s = t_v;
    l.audio_event = e_a;
    l.audio_time_s = t_a;
    return l;
}

}  // namespace

TEST_SUITE("interventions") {

TEST_CASE("shift: zero offset returns the input unchanged") {
    Rng rng(1);
    auto t = avtest::random_track(rng, 8000, 1, 800);
    auto shifted = apply_shift(t, 0.0);
    for (std::size_t i = 0; i < t.frame_count(); ++i)
        REQUIRE(shifted.channel(0)[i] == t.channel(0)[i]);
}

TEST_CASE("shift: unit impulse moves by exactly the offset") {
    // oracle: frame 3.0*rate moves to 5.0*rate, zeros before 2.0*rate
    const int rate = 1000;
    std::vector<float> samples(10000, 0.0f);
    samples[3000] = 1.0f;
    media::AudioTrack t(rate, {std::move(samples)});
    auto shifted = apply_shift(t, 2.0);
    CHECK(peak_index(shifted) == 5000);
    for (std::size_t i = 0; i < 2000; ++i) REQUIRE(shifted.channel(0)[i] == 0.0f);
}

TEST_CASE("shift: negative offset silences the tail") {
    const int rate = 1000;
    std::vector<float> samples(10000, 0.0f);
    samples[3000] = 1.0f;
    media::AudioTrack t(rate, {std::move(samples)});
    auto shifted = apply_shift(t, -2.0);
    CHECK(peak_index(shifted) == 1000);
    for (std::size_t i = 8000; i < 10000; ++i) REQUIRE(shifted.channel(0)[i] == 0.0f);
}

TEST_CASE("shift then inverse shift: oracle = composition of index maps") {
    // composing y[i] = x[i-d] (head silent) with z[i] = y[i+d] (tail silent)
    // gives z[i] = x[i] for i < n-d and zeros afterwards
    Rng rng(2);
    auto x = avtest::random_track(rng, 4000, 1, 4000 * 3);
    const double delta = 0.75;
    const auto d = static_cast<std::size_t>(std::llround(delta * 4000));
    auto z = apply_shift(apply_shift(x, delta), -delta);
    const std::size_t n = x.frame_count();
    for (std::size_t i = 0; i < n - d; ++i) REQUIRE(z.channel(0)[i] == x.channel(0)[i]);
    for (std::size_t i = n - d; i < n; ++i) REQUIRE(z.channel(0)[i] == 0.0f);
}

TEST_CASE("shift: frame count preserved, energy never grows") {
    Rng rng(3);
    for (int iter = 0; iter < 50; ++iter) {
        const int rate = 2000 + static_cast<int>(rng.bounded(14000));
        const std::size_t frames = 500 + rng.bounded(4000);
        auto t = avtest::random_track(rng, rate, 1 + static_cast<int>(rng.bounded(2)), frames);
        const double max_offset = t.duration_s() * 0.9;
        const double offset = rng.uniform(-max_offset, max_offset);
        auto shifted = apply_shift(t, offset);
        REQUIRE(shifted.frame_count() == t.frame_count());
        REQUIRE(energy(shifted) <= energy(t) + 1e-9);
    }
}

TEST_CASE("shift: offset covering the whole track is rejected") {
    auto t = media::AudioTrack::silence(8000, 1, 8000);
    CHECK_THROWS_AS(apply_shift(t, 1.0), OffsetTooLarge);
    CHECK_THROWS_AS(apply_shift(t, -2.5), OffsetTooLarge);
}

TEST_CASE("mute: output energy is exactly zero, idempotent, absorbing") {
    Rng rng(4);
    auto t = avtest::random_track(rng, 8000, 2, 1000);
    auto muted = apply_mute(t);
    CHECK(energy(muted) == 0.0);
    CHECK(muted.frame_count() == t.frame_count());
    CHECK(muted.channel_count() == t.channel_count());

    auto muted_twice = apply_mute(muted);
    CHECK(energy(muted_twice) == 0.0);

    // mute(shift(x)) == mute(x): both are all-zero tracks of the same shape
    auto mute_shift = apply_mute(apply_shift(t, 0.05));
    CHECK(energy(mute_shift) == 0.0);
    CHECK(mute_shift.frame_count() == t.frame_count());
}

TEST_CASE("swap: trim, pad, and identity paths") {
    Rng rng(5);
    auto target_audio = avtest::random_track(rng, 8000, 1, 5 * 8000);
    auto donor_long = avtest::random_track(rng, 8000, 1, 7 * 8000);
    auto donor_short = avtest::random_track(rng, 8000, 1, 3 * 8000);

    auto target = media::make_source_clip("t", "t.wav", 5.0, target_audio);
    auto longer = media::make_source_clip("d1", "d1.wav", 7.0, donor_long);
    auto shorter = media::make_source_clip("d2", "d2.wav", 3.0, donor_short);

    auto trimmed = apply_swap(target, longer);
    CHECK(trimmed.frame_count() == target_audio.frame_count());

    auto padded = apply_swap(target, shorter);
    REQUIRE(padded.frame_count() == target_audio.frame_count());
    // donor 3 s into a 5 s target: the last 2 s are zeros
    for (std::size_t i = 3 * 8000; i < 5 * 8000; ++i)
        REQUIRE(padded.channel(0)[i] == 0.0f);

    auto same_audio = avtest::random_track(rng, 8000, 1, 5 * 8000);
    auto same = media::make_source_clip("d3", "d3.wav", 5.0, same_audio);
    auto identical = apply_swap(target, same);
    for (std::size_t i = 0; i < same_audio.frame_count(); ++i)
        REQUIRE(identical.channel(0)[i] == same_audio.channel(0)[i]);
}

TEST_CASE("swap: same clip and silent donor are errors") {
    Rng rng(6);
    auto audio = avtest::random_track(rng, 8000, 1, 8000);
    auto a = media::make_source_clip("a", "a.wav", 1.0, audio);
    auto a2 = media::make_source_clip("a", "a.wav", 1.0, audio);
    auto no_audio = media::make_source_clip("b", "b.wav", 1.0);
    CHECK_THROWS_AS(apply_swap(a, a2), SameClip);
    CHECK_THROWS_AS(apply_swap(a, no_audio), DonorSilent);
}

TEST_CASE("swap: donor at a different rate is resampled to the target rate") {
    Rng rng(8);
    auto target = media::make_source_clip(
        "t", "t.wav", 2.0, avtest::random_track(rng, 16000, 1, 32000));
    auto donor = media::make_source_clip(
        "d", "d.wav", 2.0, avtest::random_track(rng, 8000, 1, 16000));
    auto swapped = apply_swap(target, donor);
    CHECK(swapped.sample_rate() == 16000);
    CHECK(swapped.frame_count() == 32000);
}

TEST_CASE("sample_shift_offset: frozen golden pins the RNG mapping") {
    // frozen from the current deterministic draw path; a change here means
    // previously generated datasets are no longer reproducible
    const double golden = sample_shift_offset(42, 2.0, 0.5);
    CHECK(golden == doctest::Approx(-1.6327332994318084).epsilon(1e-15));
}

TEST_CASE("swap: channel adaptation") {
    Rng rng(7);
    auto stereo_target = media::make_source_clip(
        "t", "t.wav", 1.0, avtest::random_track(rng, 8000, 2, 8000));
    auto mono_donor = media::make_source_clip(
        "d", "d.wav", 1.0, avtest::random_track(rng, 8000, 1, 8000));
    auto swapped = apply_swap(stereo_target, mono_donor);
    REQUIRE(swapped.channel_count() == 2);
    for (std::size_t i = 0; i < swapped.frame_count(); ++i)
        REQUIRE(swapped.channel(0)[i] == swapped.channel(1)[i]);
}

TEST_CASE("sample_shift_offset: range, determinism, and moments") {
    for (std::uint64_t seed : {1ull, 2ull, 99ull})
        CHECK(sample_shift_offset(seed, 2.0, 0.5) == sample_shift_offset(seed, 2.0, 0.5));

    int positive = 0;
    double sum_abs = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double v = sample_shift_offset(1000 + static_cast<std::uint64_t>(i), 2.0, 0.5);
        const double mag = std::abs(v);
        REQUIRE(mag >= 0.5);
        REQUIRE(mag <= 2.0);
        if (v > 0) ++positive;
        sum_abs += mag;
    }
    // oracle: uniform moments. mean |delta| = 1.25; sign is a fair coin, so
    // 3 sigma = 3*sqrt(n)/2 = 150
    CHECK(std::abs(positive - n / 2) <= 150);
    CHECK(std::abs(sum_abs / n - 1.25) <= 0.05);

    CHECK_THROWS_AS(sample_shift_offset(1, 0.5, 2.0), InvalidRange);
    CHECK_THROWS_AS(sample_shift_offset(1, 2.0, 0.0), InvalidRange);
}

TEST_CASE("validate: shift out of range and ambiguous direction") {
    auto clip = media::make_source_clip("clip", "clip.wav", 10.0);

    // t_a = 1.0, delta = -2.0: shifted time -1.0 < 0
    auto v = validate_intervention(clip, label_for(1.0, 1.0), Shift{-2.0});
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == "out-of-range");

    // shifted audio would land within 0.25 s of the visual event
    auto near = validate_intervention(clip, label_for(5.0, 3.1), Shift{2.0});
    CHECK_FALSE(near.accepted);
    CHECK(near.reason == "ambiguous-direction");

    CHECK(validate_intervention(clip, label_for(5.0, 5.0), Shift{1.5}).accepted);
}

TEST_CASE("validate: mute always accepted, swap needs distinct events") {
    auto clip = media::make_source_clip("clip", "clip.wav", 10.0);
    CHECK(validate_intervention(clip, label_for(5.0, 5.0), Mute{}).accepted);

    auto same = validate_intervention(clip, label_for(5.0, 5.0, "fall", "thud"),
                                      Swap{"other"}, label_for(2.0, 2.0, "jump", "thud"));
    CHECK_FALSE(same.accepted);
    CHECK(same.reason == "too-similar");

    CHECK(validate_intervention(clip, label_for(5.0, 5.0, "fall", "thud"), Swap{"other"},
                                label_for(2.0, 2.0, "jump", "clap"))
              .accepted);
}

TEST_CASE("validate: determinism") {
    auto clip = media::make_source_clip("clip", "clip.wav", 10.0);
    for (int i = 0; i < 5; ++i) {
        auto v = validate_intervention(clip, label_for(5.0, 4.0), Shift{1.5});
        CHECK(v.accepted == validate_intervention(clip, label_for(5.0, 4.0), Shift{1.5}).accepted);
    }
}

TEST_CASE("band_of: interval membership and boundary conventions") {
    const auto& edges = default_band_edges();
    CHECK(band_of(0.7, edges) == "0.5-1.0");
    CHECK(band_of(-0.7, edges) == "0.5-1.0");
    CHECK(band_of(1.0, edges) == "1.0-1.5");  // left-closed
    CHECK(band_of(2.0, edges) == "1.5-2.0");  // top band right-closed
    CHECK_THROWS_AS(band_of(0.4, edges), OutOfBandRange);
    CHECK_THROWS_AS(band_of(2.1, edges), OutOfBandRange);
    CHECK_THROWS_AS(band_of(0.0, edges), OutOfBandRange);
}

TEST_CASE("kind construction rules") {
    CHECK_THROWS_AS(make_shift_kind(0.0, 2.0), InvalidOffset);
    CHECK_THROWS_AS(make_shift_kind(2.5, 2.0), InvalidOffset);
    CHECK_NOTHROW(make_shift_kind(-1.0, 2.0));
    CHECK_THROWS_AS(make_swap_kind("a", "a"), SameClip);
    CHECK_NOTHROW(make_swap_kind("a", "b"));
}

TEST_CASE("manifest record json round-trip and consistency check") {
    InterventionRecord rec;
    rec.id = "clip001__shift";
    rec.clip_id = "clip001";
    rec.kind = Shift{-1.25};
    rec.ground_truth.condition = Condition::desynced;
    rec.ground_truth.direction = Direction::early;
    rec.ground_truth.offset_s = 1.25;
    rec.ground_truth.visual_time_s = 5.0;
    rec.ground_truth.audio_time_s = 3.75;
    rec.ground_truth.band = "1.0-1.5";
    rec.output_ref = "clips/clip001__shift.wav";
    rec.seed = 42;
    CHECK_NOTHROW(validate_record(rec));

    auto round = record_from_json(record_to_json(rec));
    CHECK(round.id == rec.id);
    CHECK(std::get<Shift>(round.kind).offset_s == -1.25);
    CHECK(*round.ground_truth.direction == Direction::early);
    CHECK(*round.ground_truth.offset_s == 1.25);
    CHECK(*round.ground_truth.band == "1.0-1.5");

    rec.ground_truth.direction = Direction::delayed;  // sign says early
    CHECK_THROWS_AS(validate_record(rec), Error);
}

TEST_CASE("quantization: offsets snap to integer frames") {
    const double q = quantize_offset(1.00003, 16000);
    CHECK(q == doctest::Approx(16000.0 * 1.00003 / 16000).epsilon(1e-4));
    CHECK(std::llround(q * 16000) == q * 16000);
}

}  // TEST_SUITE
