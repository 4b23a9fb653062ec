#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace avdiag::jsonl {

using json = nlohmann::json;

// Reads a JSON-lines file; blank lines are skipped. Throws avdiag::Error on
// unreadable files or invalid JSON (with the offending line number).
std::vector<json> read_file(const std::filesystem::path& path);

// Writes one compact JSON object per line. nlohmann::json keeps object keys
// sorted, so output is byte-stable for identical content.
void write_file(const std::filesystem::path& path, const std::vector<json>& rows);

std::string to_line(const json& row);

}  // namespace avdiag::jsonl
