#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace avdiag::prompts {

// The six versioned prompt resources: per-task inference prompts handed to
// evaluated models and per-task judge system prompts. The texts are compiled
// in; the same bytes are committed under resources/prompts/ and a test pins
// the embedded constants to those files.

std::string_view mute_inference();
std::string_view swap_inference();
std::string_view shift_inference();

std::string_view mute_judge_system();
std::string_view swap_judge_system();
std::string_view shift_judge_system();

// Resource names as committed on disk, e.g. "mute_inference" ->
// resources/prompts/mute_inference.txt.
std::string_view by_name(std::string_view name);

inline constexpr const char* kResourceNames[] = {
    "mute_inference",     "swap_inference",     "shift_inference",
    "mute_judge_system",  "swap_judge_system",  "shift_judge_system",
};

// Reads a whole file as bytes; used by the fidelity checks.
std::string read_file(const std::filesystem::path& path);

}  // namespace avdiag::prompts
