#include "avdiag/prefs/mixer.hpp"

#include <algorithm>

#include "avdiag/errors.hpp"
#include "avdiag/jsonl.hpp"
#include "avdiag/rng.hpp"

namespace avdiag::prefs {

std::vector<PreferencePair> mix_recipes(
    const std::map<Recipe, std::vector<PreferencePair>>& pools, const RecipeMix& mix) {
    std::vector<PreferencePair> dataset;
    for (const auto& [recipe, count] : mix.components) {
        if (count <= 0) throw Error("mix counts must be positive");
        auto it = pools.find(recipe);
        const std::size_t available = it == pools.end() ? 0 : it->second.size();
        if (static_cast<std::size_t>(count) > available)
            throw PoolExhausted(std::string("recipe ") + to_string(recipe) + " has " +
                                std::to_string(available) + " pairs, " +
                                std::to_string(count) + " requested");

        std::vector<PreferencePair> pool = it->second;
        std::sort(pool.begin(), pool.end(),
                  [](const PreferencePair& a, const PreferencePair& b) {
                      return a.pair_id < b.pair_id;
                  });
        Rng rng(derive_seed(mix.seed, to_string(recipe)));
        rng.shuffle(pool);
        dataset.insert(dataset.end(), pool.begin(),
                       pool.begin() + static_cast<std::ptrdiff_t>(count));
    }
    Rng rng(mix.seed);
    rng.shuffle(dataset);
    return dataset;
}

void emit_training_files(const std::vector<PreferencePair>& dataset, TrainingFormat format,
                         const std::filesystem::path& path) {
    if (dataset.empty()) throw EmptyDataset("refusing to emit an empty training file");
    std::vector<nlohmann::json> rows;
    rows.reserve(dataset.size());
    for (const auto& p : dataset) {
        if (format == TrainingFormat::sft) {
            rows.push_back({{"video", p.video_ref}, {"prompt", p.prompt},
                            {"response", p.chosen}});
        } else {
            rows.push_back({{"video", p.video_ref}, {"prompt", p.prompt},
                            {"chosen", p.chosen}, {"rejected", p.rejected}});
        }
    }
    jsonl::write_file(path, rows);
}

void write_pair_file(const std::vector<PreferencePair>& dataset,
                     const std::filesystem::path& path) {
    std::vector<nlohmann::json> rows;
    rows.reserve(dataset.size());
    for (const auto& p : dataset) rows.push_back(pair_to_json(p));
    jsonl::write_file(path, rows);
}

std::vector<PreferencePair> read_pair_file(const std::filesystem::path& path) {
    std::vector<PreferencePair> pairs;
    for (const auto& row : jsonl::read_file(path)) pairs.push_back(pair_from_json(row));
    return pairs;
}

}  // namespace avdiag::prefs
