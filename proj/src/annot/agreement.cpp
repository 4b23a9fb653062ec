#include "avdiag/annot/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avdiag/errors.hpp"

namespace avdiag::annot {

std::vector<FrameUnit> build_frame_units(double duration_s, int n_units) {
    if (n_units < 1) throw InvalidCount("frame unit count must be >= 1");
    if (!(duration_s > 0.0)) throw InvalidCount("duration must be positive");
    std::vector<FrameUnit> units(static_cast<std::size_t>(n_units));
    for (int j = 0; j < n_units; ++j) {
        // edges computed as T*j/N so adjacent units share an edge exactly
        units[static_cast<std::size_t>(j)] = FrameUnit{
            j + 1,
            duration_s * j / n_units,
            j + 1 == n_units ? duration_s : duration_s * (j + 1) / n_units,
        };
    }
    return units;
}

bool frame_units_overlap(const FrameUnit& a, const FrameUnit& b) {
    return a.start_s <= b.end_s && b.start_s <= a.end_s;
}

namespace {

const EventTimeLabel* find_label(const std::vector<EventTimeLabel>& labels,
                                 const std::string& annotator) {
    for (const auto& l : labels)
        if (l.annotator_id == annotator) return &l;
    return nullptr;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Max-min spread equals the max pairwise distance (the O(n^2) form is kept
// as the test oracle).
double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

}  // namespace

VerificationVerdict check_agreement(const std::vector<EventTimeLabel>& labels,
                                    const AnnotatorSets& sets, double eps_v, double eps_a) {
    VerificationVerdict verdict;
    if (!labels.empty()) verdict.clip_id = labels.front().clip_id;

    std::vector<double> visual_times, audio_times;
    bool visual_uncertain = false;
    bool audio_uncertain = false;
    bool any_low = false;
    bool clarity_ok = true;
    bool salience_ok = true;

    for (const auto& id : sets.visual) {
        const EventTimeLabel* l = find_label(labels, id);
        if (!l || !l->has_visual())
            throw MissingAnnotator("no visual label from " + id + " for clip " +
                                   verdict.clip_id);
        if (l->visual_uncertain)
            visual_uncertain = true;
        else
            visual_times.push_back(*l->visual_time_s);
    }
    for (const auto& id : sets.audio) {
        const EventTimeLabel* l = find_label(labels, id);
        if (!l || !l->has_audio())
            throw MissingAnnotator("no audio label from " + id + " for clip " +
                                   verdict.clip_id);
        if (l->audio_uncertain)
            audio_uncertain = true;
        else
            audio_times.push_back(*l->audio_time_s);
    }
    // only labels from participating annotators weigh in
    for (const auto& l : labels) {
        const bool participating =
            std::find(sets.visual.begin(), sets.visual.end(), l.annotator_id) !=
                sets.visual.end() ||
            std::find(sets.audio.begin(), sets.audio.end(), l.annotator_id) !=
                sets.audio.end();
        if (!participating) continue;
        if (l.confidence == Confidence::low) any_low = true;
        clarity_ok = clarity_ok && l.clarity_ok;
        salience_ok = salience_ok && l.salience_ok;
    }

    if (visual_uncertain || audio_uncertain) verdict.reasons.push_back("uncertain");
    if (any_low) verdict.reasons.push_back("low-confidence");
    if (!visual_uncertain && spread(visual_times) > eps_v)
        verdict.reasons.push_back("visual-disagreement");
    if (!audio_uncertain && spread(audio_times) > eps_a)
        verdict.reasons.push_back("audio-disagreement");

    if (!verdict.reasons.empty()) {
        verdict.status = VerdictStatus::manual_review;
        return verdict;
    }

    const EventTimeLabel* ref = find_label(labels, sets.reference);
    if (!ref) throw MissingAnnotator("no label from reference annotator " + sets.reference);
    EventTimeLabel consensus;
    consensus.clip_id = verdict.clip_id;
    consensus.annotator_id = "consensus";
    consensus.visual_event = ref && ref->visual_event
                                 ? ref->visual_event
                                 : find_label(labels, sets.visual.front())->visual_event;
    consensus.visual_time_s = median(visual_times);
    consensus.audio_event = ref->audio_event;
    consensus.audio_time_s = median(audio_times);
    consensus.confidence = ref->confidence;
    consensus.clarity_ok = clarity_ok;
    consensus.salience_ok = salience_ok;

    verdict.status = VerdictStatus::retained;
    verdict.consensus = std::move(consensus);
    return verdict;
}

VerificationVerdict apply_retention_filters(VerificationVerdict verdict,
                                            const EventTimeLabel& label) {
    if (verdict.status == VerdictStatus::discarded) return verdict;

    std::vector<std::string> flag_reasons;
    if (!label.clarity_ok) flag_reasons.push_back("event-clarity");
    if (!label.salience_ok) flag_reasons.push_back("acoustic-salience");
    if (flag_reasons.empty()) return verdict;

    for (auto& r : flag_reasons) verdict.reasons.push_back(std::move(r));
    if (verdict.status == VerdictStatus::retained) {
        verdict.status = VerdictStatus::discarded;
        verdict.consensus.reset();
    }
    // manual_review stays manual_review with the appended reasons
    return verdict;
}

}  // namespace avdiag::annot
