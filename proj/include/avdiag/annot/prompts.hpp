#pragma once

#include <string>
#include <vector>

#include "avdiag/annot/types.hpp"
#include "avdiag/media/clip.hpp"

namespace avdiag::annot {

// Event-time annotation prompt handed to the annotating model together with
// the clip media. The text is clip-independent; output is byte-stable.
std::string render_annotation_prompt(const media::SourceClip& clip);

// Frame-unit localization prompt for visual verifiers: the template with the
// candidate event filled in, followed by every unit's timestamp range.
std::string render_frameunit_prompt(const std::vector<FrameUnit>& units,
                                    const std::string& candidate_event);

}  // namespace avdiag::annot
