#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "avdiag/media/audio_track.hpp"

namespace avdiag::media {

// RIFF/WAVE codec. Reads PCM-16/24/32 and 32-bit float; fmt and data chunks
// are mandatory, everything else is skipped. Writes canonical PCM-16 LE.
//
// Errors: MalformedHeader (not RIFF/WAVE, missing mandatory chunk),
// UnsupportedEncoding (compressed or unhandled sample format),
// TruncatedData (data chunk shorter than declared).
AudioTrack decode_wav(std::span<const std::uint8_t> bytes);

// PCM-16 LE round-trip guarantee: decode_wav(encode_wav(t)) differs from t by
// at most one quantization step (1/32768) per sample.
std::vector<std::uint8_t> encode_wav(const AudioTrack& track);

AudioTrack read_wav_file(const std::filesystem::path& path);
void write_wav_file(const std::filesystem::path& path, const AudioTrack& track);

}  // namespace avdiag::media
