#include <doctest.h>

#include <cstdint>
#include <fstream>

#include "avdiag/errors.hpp"
#include "avdiag/media/clip.hpp"
#include "avdiag/media/muxer.hpp"
#include "avdiag/media/wav.hpp"
#include "avdiag/rng.hpp"
#include "../support/synthetic.hpp"

using namespace avdiag;

namespace {

void put32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> 8 * i & 0xFF));
}
void put16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xFF));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}
void puttag(std::vector<std::uint8_t>& b, const char* t) { b.insert(b.end(), t, t + 4); }

// hand-built PCM-16 mono WAV, independent of encode_wav
std::vector<std::uint8_t> raw_wav(std::uint32_t rate, const std::vector<std::int16_t>& pcm) {
    std::vector<std::uint8_t> b;
    puttag(b, "RIFF");
    put32(b, 36 + static_cast<std::uint32_t>(pcm.size() * 2));
    puttag(b, "WAVE");
    puttag(b, "fmt ");
    put32(b, 16);
    put16(b, 1);
    put16(b, 1);
    put32(b, rate);
    put32(b, rate * 2);
    put16(b, 2);
    put16(b, 16);
    puttag(b, "data");
    put32(b, static_cast<std::uint32_t>(pcm.size() * 2));
    for (std::int16_t s : pcm) put16(b, static_cast<std::uint16_t>(s));
    return b;
}

}  // namespace

TEST_SUITE("media") {

TEST_CASE("decode: one second of 16 kHz mono silence") {
    media::AudioTrack t = media::decode_wav(raw_wav(16000, std::vector<std::int16_t>(16000, 0)));
    CHECK(t.sample_rate() == 16000);
    CHECK(t.channel_count() == 1);
    CHECK(t.frame_count() == 16000);
    for (float s : t.channel(0)) REQUIRE(s == 0.0f);
}

TEST_CASE("decode: PCM-16 extremes rescale by 1/32768") {
    media::AudioTrack t = media::decode_wav(raw_wav(8000, {32767, -32768, 16384}));
    // oracle: integer rescale formula applied by hand
    CHECK(t.channel(0)[0] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
    CHECK(t.channel(0)[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(t.channel(0)[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("decode: PCM-24 and PCM-32 rescale") {
    // 24-bit: +8388607 -> 8388607/8388608, -8388608 -> -1.0
    std::vector<std::uint8_t> b;
    puttag(b, "RIFF");
    put32(b, 36 + 6);
    puttag(b, "WAVE");
    puttag(b, "fmt ");
    put32(b, 16);
    put16(b, 1);
    put16(b, 1);
    put32(b, 8000);
    put32(b, 8000 * 3);
    put16(b, 3);
    put16(b, 24);
    puttag(b, "data");
    put32(b, 6);
    b.insert(b.end(), {0xFF, 0xFF, 0x7F});  // +8388607
    b.insert(b.end(), {0x00, 0x00, 0x80});  // -8388608
    media::AudioTrack t24 = media::decode_wav(b);
    CHECK(t24.channel(0)[0] == doctest::Approx(8388607.0 / 8388608.0).epsilon(1e-9));
    CHECK(t24.channel(0)[1] == doctest::Approx(-1.0).epsilon(1e-9));

    // 32-bit: INT32_MAX -> ~1.0, INT32_MIN -> -1.0
    std::vector<std::uint8_t> c;
    puttag(c, "RIFF");
    put32(c, 36 + 8);
    puttag(c, "WAVE");
    puttag(c, "fmt ");
    put32(c, 16);
    put16(c, 1);
    put16(c, 1);
    put32(c, 8000);
    put32(c, 8000 * 4);
    put16(c, 4);
    put16(c, 32);
    puttag(c, "data");
    put32(c, 8);
    put32(c, 0x7FFFFFFF);
    put32(c, 0x80000000);
    media::AudioTrack t32 = media::decode_wav(c);
    CHECK(t32.channel(0)[0] == doctest::Approx(2147483647.0 / 2147483648.0).epsilon(1e-9));
    CHECK(t32.channel(0)[1] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("decode: extra chunks before data are skipped") {
    auto bytes = raw_wav(8000, {100, -100});
    // splice a LIST chunk between fmt and data
    std::vector<std::uint8_t> listed(bytes.begin(), bytes.begin() + 36);
    puttag(listed, "LIST");
    put32(listed, 4);
    puttag(listed, "info");
    listed.insert(listed.end(), bytes.begin() + 36, bytes.end());
    listed[4] = static_cast<std::uint8_t>((36 + 12 + 4) & 0xFF);  // riff size, low byte
    media::AudioTrack t = media::decode_wav(listed);
    CHECK(t.frame_count() == 2);
    CHECK(t.channel(0)[0] == doctest::Approx(100.0 / 32768.0));
}

TEST_CASE("decode: RIFX magic is rejected") {
    auto bytes = raw_wav(8000, {0});
    bytes[3] = 'X';  // RIFF -> RIFX
    CHECK_THROWS_AS(media::decode_wav(bytes), MalformedHeader);
}

TEST_CASE("decode: truncated data chunk") {
    auto bytes = raw_wav(8000, std::vector<std::int16_t>(100, 7));
    bytes.resize(bytes.size() - 50);
    CHECK_THROWS_AS(media::decode_wav(bytes), TruncatedData);
}

TEST_CASE("decode: compressed format tags are unsupported") {
    auto bytes = raw_wav(8000, {0});
    bytes[20] = 2;  // fmt.format = ADPCM
    CHECK_THROWS_AS(media::decode_wav(bytes), UnsupportedEncoding);
    bytes[20] = 1;
    bytes[34] = 8;  // PCM-8
    CHECK_THROWS_AS(media::decode_wav(bytes), UnsupportedEncoding);
}

TEST_CASE("decode: missing fmt or data chunk") {
    std::vector<std::uint8_t> b;
    puttag(b, "RIFF");
    put32(b, 4);
    puttag(b, "WAVE");
    CHECK_THROWS_AS(media::decode_wav(b), MalformedHeader);
}

TEST_CASE("decode: 32-bit float input is clamped to [-1, 1]") {
    std::vector<std::uint8_t> b;
    puttag(b, "RIFF");
    put32(b, 36 + 8);
    puttag(b, "WAVE");
    puttag(b, "fmt ");
    put32(b, 16);
    put16(b, 3);  // IEEE float
    put16(b, 1);
    put32(b, 8000);
    put32(b, 8000 * 4);
    put16(b, 4);
    put16(b, 32);
    puttag(b, "data");
    put32(b, 8);
    const float vals[2] = {1.75f, -2.5f};
    const auto* p = reinterpret_cast<const std::uint8_t*>(vals);
    b.insert(b.end(), p, p + 8);
    media::AudioTrack t = media::decode_wav(b);
    CHECK(t.channel(0)[0] == 1.0f);
    CHECK(t.channel(0)[1] == -1.0f);
}

TEST_CASE("encode: zero track gives an all-zero data chunk") {
    auto bytes = media::encode_wav(media::AudioTrack::silence(8000, 1, 32));
    REQUIRE(bytes.size() == 44 + 64);
    for (std::size_t i = 44; i < bytes.size(); ++i) REQUIRE(bytes[i] == 0);
}

TEST_CASE("encode: amplitude 1.0 clips to 32767") {
    media::AudioTrack t(8000, {{1.0f}});
    auto bytes = media::encode_wav(t);
    const std::int16_t v = static_cast<std::int16_t>(bytes[44] | bytes[45] << 8);
    CHECK(v == 32767);
}

TEST_CASE("round-trip: max per-sample error is one quantization step") {
    Rng rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        const int rate = iter % 2 ? 8000 : 44100;
        const int channels = 1 + iter % 2;
        auto t = avtest::random_track(rng, rate, channels, 400);
        media::AudioTrack back = media::decode_wav(media::encode_wav(t));
        REQUIRE(back.frame_count() == t.frame_count());
        REQUIRE(back.channel_count() == channels);
        for (int c = 0; c < channels; ++c)
            for (std::size_t i = 0; i < t.frame_count(); ++i)
                REQUIRE(std::abs(back.channel(c)[i] - t.channel(c)[i]) <= 1.0f / 32768.0f);
    }
}

TEST_CASE("resample: same rate returns the identical track") {
    Rng rng(3);
    auto t = avtest::random_track(rng, 16000, 1, 256);
    media::AudioTrack r = media::resample(t, 16000);
    REQUIRE(r.frame_count() == t.frame_count());
    for (std::size_t i = 0; i < t.frame_count(); ++i)
        REQUIRE(r.channel(0)[i] == t.channel(0)[i]);
}

TEST_CASE("resample: constant amplitude stays constant across rate pairs") {
    media::AudioTrack t(48000, {std::vector<float>(4800, 0.5f)});
    for (int target : {8000, 16000, 44100, 96000}) {
        media::AudioTrack r = media::resample(t, target);
        for (float s : r.channel(0)) REQUIRE(s == doctest::Approx(0.5f).epsilon(1e-6));
    }
}

TEST_CASE("resample: impulse index arithmetic") {
    // oracle: frame 8000 at 16 kHz lands within one frame of 4000 at 8 kHz
    std::vector<float> samples(16000, 0.0f);
    samples[8000] = 1.0f;
    media::AudioTrack t(16000, {std::move(samples)});
    media::AudioTrack r = media::resample(t, 8000);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < r.frame_count(); ++i)
        if (std::abs(r.channel(0)[i]) > std::abs(r.channel(0)[peak])) peak = i;
    CHECK(std::abs(static_cast<long>(peak) - 4000L) <= 1);
}

TEST_CASE("resample: duration preserved within one output frame") {
    Rng rng(11);
    for (int iter = 0; iter < 30; ++iter) {
        const int src = 4000 + static_cast<int>(rng.bounded(44100));
        const int dst = 4000 + static_cast<int>(rng.bounded(44100));
        const std::size_t frames = 100 + rng.bounded(5000);
        auto t = avtest::random_track(rng, src, 1, frames);
        media::AudioTrack r = media::resample(t, dst);
        REQUIRE(std::abs(r.duration_s() - t.duration_s()) <= 1.0 / dst);
    }
}

TEST_CASE("decode: arbitrary byte blobs never escape the error taxonomy") {
    Rng rng(31337);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<std::uint8_t> blob(rng.bounded(2000));
        for (auto& b : blob) b = static_cast<std::uint8_t>(rng.bounded(256));
        // half the time, start from a valid header to reach deeper code paths
        if (iter % 2 == 0) {
            auto valid = raw_wav(8000, std::vector<std::int16_t>(64, 1000));
            const std::size_t keep = std::min(blob.size(), valid.size());
            std::copy(valid.begin(), valid.begin() + static_cast<long>(keep), blob.begin());
        }
        try {
            media::AudioTrack t = media::decode_wav(blob);
            for (int c = 0; c < t.channel_count(); ++c)
                for (float s : t.channel(c)) REQUIRE((s >= -1.0f && s <= 1.0f));
        } catch (const Error&) {
            // any avdiag error is acceptable; crashes and foreign exceptions are not
        }
    }
}

TEST_CASE("source clip: audio duration must agree with declared duration") {
    auto audio = media::AudioTrack::silence(8000, 1, 8000);  // 1 s
    CHECK_THROWS_AS(media::make_source_clip("c", "c.wav", 2.0, audio),
                    std::invalid_argument);
    CHECK_NOTHROW(media::make_source_clip("c", "c.wav", 1.05, audio));
}

TEST_CASE("muxer: argument contract and stderr capture") {
    const auto dir = avtest::scratch_dir("muxer");
    const auto fake = dir / "fake_muxer.sh";
    {
        std::ofstream script(fake);
        script << "#!/bin/sh\n"
                  "if [ \"$1\" = demux ]; then cp \"$2\" \"$3\"; exit 0; fi\n"
                  "echo \"remux unsupported here\" >&2\n"
                  "exit 3\n";
    }
    std::filesystem::permissions(fake, std::filesystem::perms::owner_all);

    const auto in_wav = dir / "in.wav";
    media::write_wav_file(in_wav, media::AudioTrack::silence(8000, 1, 100));

    media::Muxer muxer(fake);
    const auto out_wav = dir / "out.wav";
    muxer.demux(in_wav, out_wav);
    CHECK(media::read_wav_file(out_wav).frame_count() == 100);

    try {
        muxer.remux(in_wav, in_wav, dir / "out.mp4");
        FAIL("remux should have failed");
    } catch (const MuxerFailure& e) {
        CHECK(std::string(e.what()).find("remux unsupported here") != std::string::npos);
    }
}

}  // TEST_SUITE
