#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avdiag/eval/harness.hpp"
#include "avdiag/eval/http_backend.hpp"

namespace avdiag::pipeline {

// One declarative config document (JSON) with per-command sections; CLI
// flags override the top-level keys.
struct PipelineConfig {
    std::uint64_t seed = 0;
    std::filesystem::path media_root = ".";
    std::filesystem::path out_dir = "out";
    int parallelism = 4;
    bool dry_run = false;
    std::string muxer_binary;  // empty = media refs are WAV files

    struct Intervene {
        std::filesystem::path source_manifest;
        std::filesystem::path verdicts;
        std::vector<std::string> operators{"shift", "mute", "swap"};
        double delta_min_s = 0.5;
        double delta_max_s = 2.0;
        std::vector<double> fixed_offsets_s;  // optional discrete offset list
        std::vector<double> band_edges{0.5, 1.0, 1.5, 2.0};
        double ambiguity_window_s = 0.25;
    } intervene;

    struct Verify {
        std::filesystem::path annotations;
        std::vector<std::string> visual_annotators{"gemini", "gpt", "claude"};
        std::vector<std::string> audio_annotators{"gemini", "human"};
        std::string reference_annotator = "gemini";
        double eps_v_s = 0.8;
        double eps_a_s = 0.5;
    } verify;

    struct BuildPrefs {
        std::filesystem::path manifest;
        std::filesystem::path verdicts;
        std::vector<std::pair<std::string, int>> mix;  // empty = take all pools whole
        std::map<std::string, std::filesystem::path> instruction_files;  // recipe -> path
        std::filesystem::path avqa_filter;                               // optional
        std::filesystem::path sp_responses;                              // optional
        std::filesystem::path sp_parsed;                                 // optional
    } build_prefs;

    struct RunEval {
        std::filesystem::path manifest;
        std::filesystem::path verdicts;
        std::string backend = "stub:oracle";  // stub:<behavior> | http
        std::vector<std::string> tasks{"shift", "mute", "swap"};
        eval::RetryPolicy retry;
        std::optional<eval::EndpointConfig> endpoint;
    } run_eval;

    struct Judge {
        std::filesystem::path responses;
        std::string backend = "rules";  // rules | llm
        std::optional<eval::EndpointConfig> endpoint;
    } judge;

    struct Report {
        std::vector<std::filesystem::path> parsed_logs;
        std::filesystem::path manifest;
        std::vector<double> localization_taus{0.5};
    } report;
};

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace avdiag::pipeline
