#include "avdiag/media/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "avdiag/errors.hpp"

namespace avdiag::media {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

struct Reader {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    std::size_t remaining() const { return data.size() - pos; }

    void need(std::size_t n, const char* what) const {
        if (remaining() < n) throw TruncatedData(std::string("unexpected end of stream in ") + what);
    }

    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = static_cast<std::uint32_t>(data[pos]) |
                          static_cast<std::uint32_t>(data[pos + 1]) << 8 |
                          static_cast<std::uint32_t>(data[pos + 2]) << 16 |
                          static_cast<std::uint32_t>(data[pos + 3]) << 24;
        pos += 4;
        return v;
    }

    std::uint16_t u16(const char* what) {
        need(2, what);
        std::uint16_t v = static_cast<std::uint16_t>(data[pos] | data[pos + 1] << 8);
        pos += 2;
        return v;
    }

    std::string tag() {
        need(4, "chunk id");
        std::string s(reinterpret_cast<const char*>(data.data() + pos), 4);
        pos += 4;
        return s;
    }
};

struct FmtInfo {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
};

float scale_sample(const std::uint8_t* p, const FmtInfo& fmt) {
    if (fmt.format == kFormatFloat) {
        float f;
        std::memcpy(&f, p, 4);
        return std::clamp(f, -1.0f, 1.0f);
    }
    switch (fmt.bits) {
        case 16: {
            std::int16_t v = static_cast<std::int16_t>(p[0] | p[1] << 8);
            return static_cast<float>(v) / 32768.0f;
        }
        case 24: {
            std::int32_t v = p[0] | p[1] << 8 | p[2] << 16;
            if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
            return static_cast<float>(v) / 8388608.0f;
        }
        case 32: {
            std::int32_t v;
            std::memcpy(&v, p, 4);
            return static_cast<float>(static_cast<double>(v) / 2147483648.0);
        }
        default:
            throw UnsupportedEncoding("unhandled bit depth");
    }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8 & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 16 & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 24 & 0xFF));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8 & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioTrack decode_wav(std::span<const std::uint8_t> bytes) {
    Reader r{bytes};
    if (r.remaining() < 12) throw MalformedHeader("stream too short for RIFF header");
    if (r.tag() != "RIFF") throw MalformedHeader("missing RIFF magic");
    r.u32("riff size");
    if (r.tag() != "WAVE") throw MalformedHeader("missing WAVE form type");

    FmtInfo fmt;
    bool have_fmt = false;
    const std::uint8_t* sample_data = nullptr;
    std::uint32_t data_size = 0;
    bool have_data = false;

    while (r.remaining() >= 8) {
        std::string id = r.tag();
        std::uint32_t size = r.u32("chunk size");
        if (id == "fmt ") {
            if (size < 16) throw MalformedHeader("fmt chunk too small");
            r.need(size, "fmt chunk");
            std::size_t next = r.pos + size + (size & 1);
            fmt.format = r.u16("fmt.format");
            fmt.channels = r.u16("fmt.channels");
            fmt.sample_rate = r.u32("fmt.rate");
            r.u32("fmt.byte_rate");
            r.u16("fmt.block_align");
            fmt.bits = r.u16("fmt.bits");
            have_fmt = true;
            r.pos = std::min(next, r.data.size());
        } else if (id == "data") {
            if (r.remaining() < size)
                throw TruncatedData("data chunk shorter than declared size");
            sample_data = r.data.data() + r.pos;
            data_size = size;
            have_data = true;
            r.pos += size + (size & 1);
        } else {
            // other chunks ignored on read
            if (r.remaining() < size) break;
            r.pos += size + (size & 1);
        }
    }

    if (!have_fmt) throw MalformedHeader("missing fmt chunk");
    if (!have_data) throw MalformedHeader("missing data chunk");
    if (fmt.channels == 0 || fmt.sample_rate == 0) throw MalformedHeader("bad fmt fields");

    if (fmt.format == kFormatFloat) {
        if (fmt.bits != 32) throw UnsupportedEncoding("only 32-bit float supported");
    } else if (fmt.format == kFormatPcm) {
        if (fmt.bits != 16 && fmt.bits != 24 && fmt.bits != 32)
            throw UnsupportedEncoding("PCM bit depth " + std::to_string(fmt.bits));
    } else {
        throw UnsupportedEncoding("compressed or unknown format tag " +
                                  std::to_string(fmt.format));
    }

    const std::size_t bytes_per_sample = fmt.bits / 8u;
    const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
    if (data_size % frame_bytes != 0)
        throw TruncatedData("data chunk ends mid-frame");
    const std::size_t frames = data_size / frame_bytes;

    std::vector<std::vector<float>> channels(fmt.channels, std::vector<float>(frames));
    for (std::size_t f = 0; f < frames; ++f) {
        const std::uint8_t* p = sample_data + f * frame_bytes;
        for (std::uint16_t c = 0; c < fmt.channels; ++c)
            channels[c][f] = scale_sample(p + c * bytes_per_sample, fmt);
    }
    return AudioTrack(static_cast<int>(fmt.sample_rate), std::move(channels));
}

std::vector<std::uint8_t> encode_wav(const AudioTrack& track) {
    const std::uint16_t channels = static_cast<std::uint16_t>(track.channel_count());
    const std::uint32_t rate = static_cast<std::uint32_t>(track.sample_rate());
    const std::uint16_t block_align = static_cast<std::uint16_t>(channels * 2);
    const std::uint32_t data_size =
        static_cast<std::uint32_t>(track.frame_count() * block_align);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    put_tag(out, "RIFF");
    put_u32(out, 36 + data_size);
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, channels);
    put_u32(out, rate);
    put_u32(out, rate * block_align);
    put_u16(out, block_align);
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, data_size);

    const std::size_t frames = track.frame_count();
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::uint16_t c = 0; c < channels; ++c) {
            const float s = track.channel(c)[f];
            const long q = std::lround(static_cast<double>(s) * 32768.0);
            const std::int16_t v =
                static_cast<std::int16_t>(std::clamp<long>(q, -32768, 32767));
            put_u16(out, static_cast<std::uint16_t>(v));
        }
    }
    return out;
}

AudioTrack read_wav_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

void write_wav_file(const std::filesystem::path& path, const AudioTrack& track) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto bytes = encode_wav(track);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace avdiag::media
