#include "avdiag/intervene/validate.hpp"

#include <cmath>

namespace avdiag::intervene {

Validation validate_intervention(const media::SourceClip& clip,
                                 const annot::EventTimeLabel& label,
                                 const InterventionKind& kind,
                                 const std::optional<annot::EventTimeLabel>& donor_label,
                                 double ambiguity_window_s) {
    if (const Shift* shift = std::get_if<Shift>(&kind)) {
        if (!label.audio_time_s) return Validation::reject("no audio time on label");
        const double shifted = *label.audio_time_s + shift->offset_s;
        if (shifted < 0.0 || shifted > clip.duration_s)
            return Validation::reject("out-of-range");
        if (label.visual_time_s &&
            std::abs(shifted - *label.visual_time_s) <= ambiguity_window_s)
            return Validation::reject("ambiguous-direction");
        return Validation::accept();
    }
    if (std::holds_alternative<Swap>(kind)) {
        if (!donor_label || !donor_label->audio_event)
            return Validation::reject("donor has no audio-event label");
        if (label.audio_event && *label.audio_event == *donor_label->audio_event)
            return Validation::reject("too-similar");
        return Validation::accept();
    }
    // Mute and Original need no timing data
    return Validation::accept();
}

}  // namespace avdiag::intervene
