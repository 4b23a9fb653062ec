#pragma once

#include <filesystem>
#include <vector>

#include "avdiag/pipeline/config.hpp"

namespace avdiag::pipeline {

// Each command reads its prerequisites (throwing MissingPrerequisite with the
// exact expected path), writes its module's external-interface files under
// out_dir, and returns the paths written. Commands are idempotent for
// identical inputs and configs. Per-clip failures are skipped and logged to
// stderr; the run continues.

std::vector<std::filesystem::path> cmd_intervene(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_verify(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_build_prefs(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_run_eval(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_judge(const PipelineConfig& config);
std::vector<std::filesystem::path> cmd_report(const PipelineConfig& config);

}  // namespace avdiag::pipeline
