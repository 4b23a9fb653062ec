#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace avdiag::media {

// Wrapper around an external demux/remux binary invoked across a process
// boundary. Argument contract:
//
//   <binary> demux <in_container> <out_wav>
//   <binary> remux <in_container> <in_wav> <out_container>
//
// A nonzero exit status raises MuxerFailure carrying the captured stderr.
class Muxer {
public:
    explicit Muxer(std::filesystem::path binary) : binary_(std::move(binary)) {}

    void demux(const std::filesystem::path& container,
               const std::filesystem::path& out_wav) const;
    void remux(const std::filesystem::path& container, const std::filesystem::path& wav,
               const std::filesystem::path& out_container) const;

private:
    void run(const std::vector<std::string>& args) const;

    std::filesystem::path binary_;
};

}  // namespace avdiag::media
