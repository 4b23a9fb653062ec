#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "avdiag/errors.hpp"
#include "avdiag/pipeline/commands.hpp"

namespace {

using avdiag::pipeline::PipelineConfig;

int run(const std::string& name,
        const std::function<std::vector<std::filesystem::path>(const PipelineConfig&)>& cmd,
        const PipelineConfig& config) {
    try {
        const auto outputs = cmd(config);
        for (const auto& path : outputs) std::cout << path.string() << "\n";
        return 0;
    } catch (const avdiag::MissingPrerequisite& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"avdiag - counterfactual audio-visual grounding diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> parallelism;
    bool dry_run = false;

    app.add_option("--config", config_path, "pipeline config (JSON)")->required();
    app.add_option("--seed", seed, "override config seed");
    app.add_option("--out", out_dir, "override output directory");
    app.add_option("--parallelism", parallelism, "override worker count");
    app.add_flag("--dry-run", dry_run, "plan only, write nothing");

    const std::map<std::string,
                   std::pair<const char*, std::vector<std::filesystem::path> (*)(
                                              const PipelineConfig&)>>
        commands = {
            {"intervene",
             {"apply counterfactual operators and write the intervened manifest",
              &avdiag::pipeline::cmd_intervene}},
            {"verify",
             {"run cross-annotator agreement and retention filters",
              &avdiag::pipeline::cmd_verify}},
            {"build-prefs",
             {"construct preference pairs and training files",
              &avdiag::pipeline::cmd_build_prefs}},
            {"run-eval",
             {"query a model backend over the intervened dataset",
              &avdiag::pipeline::cmd_run_eval}},
            {"judge", {"parse raw responses into structured predictions",
                       &avdiag::pipeline::cmd_judge}},
            {"report",
             {"compute the diagnostic metric suite and render plots",
              &avdiag::pipeline::cmd_report}},
        };
    for (const auto& [name, spec] : commands) app.add_subcommand(name, spec.first);

    CLI11_PARSE(app, argc, argv);

    PipelineConfig config;
    try {
        config = avdiag::pipeline::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config: " << e.what() << "\n";
        return 2;
    }
    if (seed) config.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;
    if (parallelism) config.parallelism = *parallelism;
    config.dry_run = dry_run;

    for (const auto& [name, spec] : commands)
        if (app.got_subcommand(name)) return run(name, spec.second, config);
    return 1;
}
