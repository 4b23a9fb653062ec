#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "avdiag/prefs/types.hpp"

namespace avdiag::prefs {

// Samples each requested count without replacement from its pool, then
// applies one seeded global shuffle. Pools are sorted by pair id before
// sampling, so the output is a pure function of (pools, mix) regardless of
// pool construction order. Throws PoolExhausted when a count exceeds its
// pool.
std::vector<PreferencePair> mix_recipes(
    const std::map<Recipe, std::vector<PreferencePair>>& pools, const RecipeMix& mix);

enum class TrainingFormat { sft, dpo };

// sft rows: {"video","prompt","response"}; dpo rows: {"video","prompt",
// "chosen","rejected"}. Throws EmptyDataset on an empty input.
void emit_training_files(const std::vector<PreferencePair>& dataset, TrainingFormat format,
                         const std::filesystem::path& path);

// Full pair manifest rows: {"pair_id","video","prompt","chosen","rejected",
// "recipe","task"}.
void write_pair_file(const std::vector<PreferencePair>& dataset,
                     const std::filesystem::path& path);
std::vector<PreferencePair> read_pair_file(const std::filesystem::path& path);

}  // namespace avdiag::prefs
