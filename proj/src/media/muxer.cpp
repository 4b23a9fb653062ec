#include "avdiag/media/muxer.hpp"

#include <array>
#include <cstdio>
#include <vector>

#include "avdiag/errors.hpp"

namespace avdiag::media {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

}  // namespace

void Muxer::run(const std::vector<std::string>& args) const {
    std::string cmd = shell_quote(binary_.string());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    // stdout is discarded; stderr is captured for the failure message
    cmd += " 2>&1 1>/dev/null";

    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw MuxerFailure("failed to launch muxer: " + binary_.string());

    std::string captured;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        captured.append(buf.data(), n);

    int status = ::pclose(pipe);
    if (status != 0)
        throw MuxerFailure("muxer exited with status " + std::to_string(status) + ": " +
                           captured);
}

void Muxer::demux(const std::filesystem::path& container,
                  const std::filesystem::path& out_wav) const {
    run({"demux", container.string(), out_wav.string()});
}

void Muxer::remux(const std::filesystem::path& container, const std::filesystem::path& wav,
                  const std::filesystem::path& out_container) const {
    run({"remux", container.string(), wav.string(), out_container.string()});
}

}  // namespace avdiag::media
