#include "avdiag/prefs/types.hpp"

#include <cinttypes>
#include <cstdio>

#include "avdiag/errors.hpp"
#include "avdiag/rng.hpp"

namespace avdiag::prefs {

const char* to_string(Recipe r) {
    switch (r) {
        case Recipe::op: return "OP";
        case Recipe::sp: return "SP";
        case Recipe::ctp: return "CTP";
        case Recipe::mute_pref: return "MutePref";
        case Recipe::swap_pref: return "SwapPref";
        case Recipe::fv_d: return "FV-D";
        case Recipe::fv_avqa: return "FV-AVQA";
        case Recipe::fv_avqa_l: return "FV-AVQA-L";
        case Recipe::lv_mcqa: return "LV-MCQA";
    }
    return "?";
}

Recipe recipe_from_string(const std::string& s) {
    if (s == "OP") return Recipe::op;
    if (s == "SP") return Recipe::sp;
    if (s == "CTP") return Recipe::ctp;
    if (s == "MutePref") return Recipe::mute_pref;
    if (s == "SwapPref") return Recipe::swap_pref;
    if (s == "FV-D") return Recipe::fv_d;
    if (s == "FV-AVQA") return Recipe::fv_avqa;
    if (s == "FV-AVQA-L") return Recipe::fv_avqa_l;
    if (s == "LV-MCQA") return Recipe::lv_mcqa;
    throw Error("unknown recipe: " + s);
}

const char* to_string(PairTask t) {
    switch (t) {
        case PairTask::shift: return "shift";
        case PairTask::mute: return "mute";
        case PairTask::swap: return "swap";
        case PairTask::general: return "general";
    }
    return "?";
}

PairTask pair_task_from_string(const std::string& s) {
    if (s == "shift") return PairTask::shift;
    if (s == "mute") return PairTask::mute;
    if (s == "swap") return PairTask::swap;
    if (s == "general") return PairTask::general;
    throw Error("unknown pair task: " + s);
}

nlohmann::json pair_to_json(const PreferencePair& p) {
    return {
        {"pair_id", p.pair_id},   {"video", p.video_ref}, {"prompt", p.prompt},
        {"chosen", p.chosen},     {"rejected", p.rejected},
        {"recipe", to_string(p.recipe)}, {"task", to_string(p.task)},
    };
}

PreferencePair pair_from_json(const nlohmann::json& row) {
    PreferencePair p;
    p.pair_id = row.at("pair_id").get<std::string>();
    p.video_ref = row.at("video").get<std::string>();
    p.prompt = row.at("prompt").get<std::string>();
    p.chosen = row.at("chosen").get<std::string>();
    p.rejected = row.at("rejected").get<std::string>();
    p.recipe = recipe_from_string(row.at("recipe").get<std::string>());
    p.task = pair_task_from_string(row.at("task").get<std::string>());
    return p;
}

std::optional<intervene::Condition> classify_chosen(const std::string& chosen) {
    // audio-source mismatch must be tested before the shift marker: both
    // templates contain the word "mismatch"
    if (chosen.find("audio-source mismatch") != std::string::npos)
        return intervene::Condition::mismatched;
    if (chosen.find("synchronization mismatch") != std::string::npos)
        return intervene::Condition::desynced;
    if (chosen.find("silent throughout") != std::string::npos)
        return intervene::Condition::silent;
    if (chosen.find("are synchronized") != std::string::npos)
        return intervene::Condition::synced;
    return std::nullopt;
}

void verify_pair(const PreferencePair& pair,
                 std::optional<intervene::Condition> expected_condition) {
    if (pair.chosen == pair.rejected)
        throw Error("pair " + pair.pair_id + ": chosen equals rejected");
    if (!expected_condition) return;
    const auto classified = classify_chosen(pair.chosen);
    if (!classified || *classified != *expected_condition)
        throw Error("pair " + pair.pair_id + ": chosen text does not state condition " +
                    intervene::to_string(*expected_condition));
}

int RecipeMix::total() const {
    int sum = 0;
    for (const auto& [recipe, count] : components) sum += count;
    return sum;
}

const char* to_string(InstructionType t) {
    switch (t) {
        case InstructionType::description: return "Description";
        case InstructionType::localization: return "Localization";
        case InstructionType::attribution: return "Attribution";
        case InstructionType::audio_dependent_qa: return "AudioDependentQA";
    }
    return "?";
}

InstructionType instruction_type_from_string(const std::string& s) {
    if (s == "Description") return InstructionType::description;
    if (s == "Localization") return InstructionType::localization;
    if (s == "Attribution") return InstructionType::attribution;
    if (s == "AudioDependentQA") return InstructionType::audio_dependent_qa;
    throw Error("unknown instruction type: " + s);
}

nlohmann::json instruction_to_json(const InstructionRecord& r) {
    nlohmann::json row = {
        {"video_ref", r.video_ref},
        {"instruction_type", to_string(r.instruction_type)},
        {"prompt", r.prompt},
        {"answer", r.answer},
        {"long_form", r.long_form},
    };
    if (r.acoustic_cue) row["acoustic_cue"] = *r.acoustic_cue;
    return row;
}

InstructionRecord instruction_from_json(const nlohmann::json& row) {
    InstructionRecord r;
    r.video_ref = row.at("video_ref").get<std::string>();
    r.instruction_type =
        instruction_type_from_string(row.at("instruction_type").get<std::string>());
    r.prompt = row.at("prompt").get<std::string>();
    r.answer = row.at("answer").get<std::string>();
    r.long_form = row.value("long_form", false);
    if (row.contains("acoustic_cue"))
        r.acoustic_cue = row.at("acoustic_cue").get<std::string>();
    if (r.instruction_type == InstructionType::audio_dependent_qa) {
        if (!r.acoustic_cue)
            throw Error("audio-dependent QA record for " + r.video_ref +
                        " lacks an acoustic_cue field");
        if (r.answer.find(*r.acoustic_cue) == std::string::npos)
            throw Error("audio-dependent QA answer for " + r.video_ref +
                        " does not reference its acoustic cue");
    }
    return r;
}

std::string instruction_record_id(const InstructionRecord& r) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016" PRIx64,
                  fnv1a64(r.video_ref + "\x1f" + r.prompt));
    return buf;
}

}  // namespace avdiag::prefs
