#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "avdiag/annot/types.hpp"
#include "avdiag/intervene/types.hpp"
#include "avdiag/judge/prediction.hpp"
#include "avdiag/prefs/types.hpp"

namespace avdiag::prefs {

// Counterfactual temporal preferences: pairs an original and its shifted
// variant. Pair A (original video) chooses the synchronized description and
// rejects the shifted one; pair B (shifted video) reverses the assignment,
// naming direction and offset from ground truth.
// Throws MismatchedBase unless both records share a base clip and have the
// expected kinds.
std::pair<PreferencePair, PreferencePair> build_ctp_pairs(
    const intervene::InterventionRecord& original,
    const intervene::InterventionRecord& shifted, const annot::EventTimeLabel& label);

PreferencePair build_mute_pair(const intervene::InterventionRecord& record,
                               const annot::EventTimeLabel& label);

// Throws MissingDonorLabel when the donor's audio-event text is unavailable.
PreferencePair build_swap_pair(const intervene::InterventionRecord& record,
                               const annot::EventTimeLabel& label,
                               const std::optional<annot::EventTimeLabel>& donor_label);

// Original-sync preference: chosen is the annotated synchronized answer,
// rejected perturbs exactly one component of the event tuple — a timestamp
// moved by a seeded delta in [1.0, 3.0] s, or an event text replaced by
// another clip's. The perturbation choice is encoded in the pair id.
PreferencePair build_op_pair(const std::string& video_ref,
                             const annot::EventTimeLabel& label,
                             std::uint64_t perturbation_seed,
                             const std::vector<std::string>& other_visual_events,
                             const std::vector<std::string>& other_audio_events);

// Self-sampled policy negative: emitted only when the parsed prediction
// contradicts the ground truth; nullopt means Skip (the model was correct).
std::optional<PreferencePair> build_sp_pair(const std::string& reference_text,
                                            const judge::ParsedPrediction& parsed,
                                            const std::string& raw_text,
                                            const intervene::InterventionRecord& record);

// General-video instruction records -> preference pairs of the given recipe.
// Each rejected response is another record's answer (seeded draw); records
// whose answer has no alternative are skipped.
std::vector<PreferencePair> build_instruction_pairs(
    const std::vector<InstructionRecord>& records, Recipe recipe, std::uint64_t seed);

// Drops records that a text-only model answered correctly, per the verdicts
// file ({"record_id", "text_only_correct"}).
std::vector<InstructionRecord> filter_avqa(
    const std::vector<InstructionRecord>& records,
    const std::vector<std::pair<std::string, bool>>& verdicts);

}  // namespace avdiag::prefs
