#pragma once

#include <vector>

#include "avdiag/annot/types.hpp"

namespace avdiag::annot {

// N equal-width contiguous units covering [0, T]. Unit j ends exactly where
// unit j+1 starts and the last unit ends at exactly T.
// Throws InvalidCount for N < 1 or T <= 0.
std::vector<FrameUnit> build_frame_units(double duration_s, int n_units);

// Two frame-unit answers agree iff their intervals intersect.
bool frame_units_overlap(const FrameUnit& a, const FrameUnit& b);

// Cross-annotator agreement. Retained iff
//   max pairwise |t_v(m) - t_v(m')| <= eps_v over the visual set, and
//   max pairwise |t_a(m) - t_a(m')| <= eps_a over the audio set, and
//   no participating label is uncertain or low-confidence.
// Otherwise ManualReview with one reason per violated criterion. The
// consensus time is the median of the agreeing annotators; consensus event
// texts come from the reference annotator.
// Throws MissingAnnotator when a required set member has no label.
VerificationVerdict check_agreement(const std::vector<EventTimeLabel>& labels,
                                    const AnnotatorSets& sets, double eps_v, double eps_a);

// Retention filters applied after agreement. `label` carries the
// event-clarity and acoustic-salience flags (the consensus label for retained
// verdicts, the reference annotator's label otherwise). A retained verdict
// with a false flag is discarded; manual-review verdicts pass through with
// appended reasons. Status only ever moves down the ladder
// retained -> manual_review -> discarded.
VerificationVerdict apply_retention_filters(VerificationVerdict verdict,
                                            const EventTimeLabel& label);

}  // namespace avdiag::annot
