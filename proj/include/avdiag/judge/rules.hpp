#pragma once

#include <string>

#include "avdiag/judge/prediction.hpp"

namespace avdiag::judge {

// Deterministic keyword judge, sufficient for stub-backend vocabulary.
//
// Decision list, applied in order on the lowercased response:
//   1. silence claim ("silent", "no audio", "no sound", "muted", "nothing
//      audible", "audio is absent")            -> muted (mute task only)
//   2. mismatch claim ("mismatch", "does not match", "doesn't match",
//      "unrelated", "inconsistent", "does not correspond")
//                                              -> mismatched (swap task only)
//   3. desync claim ("not synchronized", "not in sync", "out of sync",
//      "desynchronized", "unsynchronized", or a direction word below)
//        direction delay: "delayed", "delay", "lag(s/ged/ging)", "behind",
//                         "after the visual", "comes after", "later than"
//        direction early: "early", "ahead", "precedes", "before the visual",
//                         "comes before", "leads"
//      A desync claim with no direction word collapses to synced (the judge
//      default). Offset = first number after an offset cue ("by", "about",
//      "approximately", "offset of", "~"), else first "<x> s/sec/seconds"
//      match, else 0.
//   4. otherwise                               -> synced
//
// Timestamps: "occurs at ~Xs"/"event at ~Xs" -> t_v, "heard at ~Xs"/"sound
// at ~Xs" -> t_a (shift task only).
ParsedPrediction rules_parse(Task task, const std::string& raw_text);

// True when the text concretely describes audio content (mentions hearing,
// sounds, music, speech and the like). Used for the mute-task engagement
// classification.
bool mentions_concrete_audio(const std::string& raw_text);

}  // namespace avdiag::judge
