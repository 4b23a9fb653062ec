#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "avdiag/intervene/types.hpp"

namespace avdiag::prefs {

enum class Recipe {
    op,         // original-sync preferences with perturbed negatives
    sp,         // self-sampled policy negatives
    ctp,        // counterfactual temporal preferences (original+shifted pairing)
    mute_pref,  // silence-detection preferences
    swap_pref,  // source-consistency preferences
    fv_d,       // general video: description/localization/attribution
    fv_avqa,    // general video: audio-dependent QA
    fv_avqa_l,  // general video: audio-dependent QA, long form
    lv_mcqa,    // general video: multiple-choice QA
};

const char* to_string(Recipe r);
Recipe recipe_from_string(const std::string& s);

enum class PairTask { shift, mute, swap, general };

const char* to_string(PairTask t);
PairTask pair_task_from_string(const std::string& s);

// The alignment-data unit: a prompt over one video with a grounded chosen
// response and a shortcut-following rejected response.
struct PreferencePair {
    std::string pair_id;
    std::string video_ref;
    std::string prompt;
    std::string chosen;
    std::string rejected;
    Recipe recipe = Recipe::ctp;
    PairTask task = PairTask::shift;
};

nlohmann::json pair_to_json(const PreferencePair& p);
PreferencePair pair_from_json(const nlohmann::json& row);

// Deterministic classifier over the chosen text's template markers; used by
// the generation-time consistency check. Returns nullopt for free-form
// (general-recipe) texts.
std::optional<intervene::Condition> classify_chosen(const std::string& chosen);

// chosen != rejected, and for intervention-derived pairs the chosen template
// must match the attached video's ground-truth condition. Throws
// avdiag::Error on violation.
void verify_pair(const PreferencePair& pair,
                 std::optional<intervene::Condition> expected_condition);

struct RecipeMix {
    std::vector<std::pair<Recipe, int>> components;  // counts must be positive
    std::uint64_t seed = 0;

    int total() const;
};

enum class InstructionType { description, localization, attribution, audio_dependent_qa };

const char* to_string(InstructionType t);
InstructionType instruction_type_from_string(const std::string& s);

// Externally supplied general-video instruction rows.
struct InstructionRecord {
    std::string video_ref;
    InstructionType instruction_type = InstructionType::description;
    std::string prompt;
    std::string answer;
    bool long_form = false;
    std::optional<std::string> acoustic_cue;  // required for audio-dependent QA
};

nlohmann::json instruction_to_json(const InstructionRecord& r);
InstructionRecord instruction_from_json(const nlohmann::json& row);

// Stable id used by the text-only filter verdicts file.
std::string instruction_record_id(const InstructionRecord& r);

}  // namespace avdiag::prefs
