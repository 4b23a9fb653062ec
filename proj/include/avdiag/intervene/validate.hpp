#pragma once

#include <optional>
#include <string>

#include "avdiag/annot/types.hpp"
#include "avdiag/intervene/types.hpp"
#include "avdiag/media/clip.hpp"

namespace avdiag::intervene {

// Outcome of the per-intervention validity check. Reject is a value, not an
// error: invalid combinations are skipped, not failed.
struct Validation {
    bool accepted = true;
    std::string reason;

    static Validation accept() { return {}; }
    static Validation reject(std::string why) { return {false, std::move(why)}; }
};

// Per-intervention validity. Expects a label that already passed agreement
// verification (the consensus label).
//   Shift:  rejected when the shifted audio time t_a + delta leaves
//           [0, duration] or lands within `ambiguity_window_s` of the visual
//           event (direction would be ambiguous).
//   Swap:   rejected when donor and target audio-event texts are identical.
//   Mute / Original: always accepted.
Validation validate_intervention(const media::SourceClip& clip,
                                 const annot::EventTimeLabel& label,
                                 const InterventionKind& kind,
                                 const std::optional<annot::EventTimeLabel>& donor_label = {},
                                 double ambiguity_window_s = 0.25);

}  // namespace avdiag::intervene
