#include "avdiag/pipeline/config.hpp"

#include <fstream>

#include <json.hpp>

#include "avdiag/errors.hpp"

namespace avdiag::pipeline {

namespace {

using nlohmann::json;

std::filesystem::path path_of(const json& obj, const char* key,
                              const std::filesystem::path& fallback = {}) {
    if (!obj.contains(key)) return fallback;
    return std::filesystem::path(obj.at(key).get<std::string>());
}

// endpoint config is accepted inline ("endpoint": {...}) or as a separate
// key-value file ("endpoint_file": "endpoint.json")
std::optional<eval::EndpointConfig> endpoint_of(const json& section) {
    if (section.contains("endpoint")) return eval::endpoint_from_json(section.at("endpoint"));
    if (section.contains("endpoint_file")) {
        const std::filesystem::path path = section.at("endpoint_file").get<std::string>();
        std::ifstream in(path);
        if (!in) throw MissingPrerequisite(path.string());
        return eval::endpoint_from_json(json::parse(in));
    }
    return std::nullopt;
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingPrerequisite(path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("config " + path.string() + ": " + e.what());
    }

    PipelineConfig cfg;
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.media_root = path_of(doc, "media_root", ".");
    cfg.out_dir = path_of(doc, "out_dir", "out");
    cfg.parallelism = doc.value("parallelism", 4);
    cfg.muxer_binary = doc.value("muxer_binary", std::string{});

    if (doc.contains("intervene")) {
        const json& s = doc.at("intervene");
        auto& c = cfg.intervene;
        c.source_manifest = path_of(s, "source_manifest");
        c.verdicts = path_of(s, "verdicts");
        if (s.contains("operators")) c.operators = s.at("operators").get<std::vector<std::string>>();
        c.delta_min_s = s.value("delta_min_s", c.delta_min_s);
        c.delta_max_s = s.value("delta_max_s", c.delta_max_s);
        if (s.contains("fixed_offsets_s"))
            c.fixed_offsets_s = s.at("fixed_offsets_s").get<std::vector<double>>();
        if (s.contains("band_edges")) c.band_edges = s.at("band_edges").get<std::vector<double>>();
        c.ambiguity_window_s = s.value("ambiguity_window_s", c.ambiguity_window_s);
        if (!(c.delta_min_s > 0) || !(c.delta_min_s < c.delta_max_s))
            throw Error("config: need 0 < delta_min_s < delta_max_s");
    }
    if (doc.contains("verify")) {
        const json& s = doc.at("verify");
        auto& c = cfg.verify;
        c.annotations = path_of(s, "annotations");
        if (s.contains("visual_annotators"))
            c.visual_annotators = s.at("visual_annotators").get<std::vector<std::string>>();
        if (s.contains("audio_annotators"))
            c.audio_annotators = s.at("audio_annotators").get<std::vector<std::string>>();
        c.reference_annotator = s.value("reference_annotator", c.reference_annotator);
        c.eps_v_s = s.value("eps_v_s", c.eps_v_s);
        c.eps_a_s = s.value("eps_a_s", c.eps_a_s);
        if (!(c.eps_v_s > 0) || !(c.eps_a_s > 0))
            throw Error("config: tolerances must be positive");
    }
    if (doc.contains("build_prefs")) {
        const json& s = doc.at("build_prefs");
        auto& c = cfg.build_prefs;
        c.manifest = path_of(s, "manifest");
        c.verdicts = path_of(s, "verdicts");
        if (s.contains("mix"))
            for (const auto& m : s.at("mix"))
                c.mix.emplace_back(m.at("recipe").get<std::string>(), m.at("count").get<int>());
        if (s.contains("instruction_files"))
            for (const auto& [recipe, file] : s.at("instruction_files").items())
                c.instruction_files[recipe] = std::filesystem::path(file.get<std::string>());
        c.avqa_filter = path_of(s, "avqa_filter");
        c.sp_responses = path_of(s, "sp_responses");
        c.sp_parsed = path_of(s, "sp_parsed");
    }
    if (doc.contains("run_eval")) {
        const json& s = doc.at("run_eval");
        auto& c = cfg.run_eval;
        c.manifest = path_of(s, "manifest");
        c.verdicts = path_of(s, "verdicts");
        c.backend = s.value("backend", c.backend);
        if (s.contains("tasks")) c.tasks = s.at("tasks").get<std::vector<std::string>>();
        if (s.contains("retry")) {
            const json& r = s.at("retry");
            c.retry.max_attempts = r.value("max_attempts", c.retry.max_attempts);
            c.retry.initial_backoff_ms = r.value("backoff_ms", c.retry.initial_backoff_ms);
            c.retry.multiplier = r.value("multiplier", c.retry.multiplier);
        }
        c.endpoint = endpoint_of(s);
    }
    if (doc.contains("judge")) {
        const json& s = doc.at("judge");
        auto& c = cfg.judge;
        c.responses = path_of(s, "responses");
        c.backend = s.value("backend", c.backend);
        c.endpoint = endpoint_of(s);
    }
    if (doc.contains("report")) {
        const json& s = doc.at("report");
        auto& c = cfg.report;
        if (s.contains("parsed_logs"))
            for (const auto& p : s.at("parsed_logs"))
                c.parsed_logs.emplace_back(p.get<std::string>());
        c.manifest = path_of(s, "manifest");
        if (s.contains("localization_taus"))
            c.localization_taus = s.at("localization_taus").get<std::vector<double>>();
        for (double tau : c.localization_taus)
            if (!(tau > 0)) throw Error("config: localization taus must be positive");
    }
    return cfg;
}

}  // namespace avdiag::pipeline
