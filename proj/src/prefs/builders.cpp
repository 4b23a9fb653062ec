#include "avdiag/prefs/builders.hpp"

#include <algorithm>
#include <map>

#include "avdiag/errors.hpp"
#include "avdiag/eval/harness.hpp"
#include "avdiag/metrics/metrics.hpp"
#include "avdiag/prefs/templates.hpp"
#include "avdiag/rng.hpp"

namespace avdiag::prefs {

namespace {

using intervene::InterventionRecord;

std::string require_visual(const annot::EventTimeLabel& label) {
    if (!label.visual_event) throw Error("label for " + label.clip_id + " has no visual event");
    return *label.visual_event;
}

std::string require_audio(const annot::EventTimeLabel& label) {
    if (!label.audio_event) throw Error("label for " + label.clip_id + " has no audio event");
    return *label.audio_event;
}

}  // namespace

std::pair<PreferencePair, PreferencePair> build_ctp_pairs(
    const InterventionRecord& original, const InterventionRecord& shifted,
    const annot::EventTimeLabel& label) {
    if (!std::holds_alternative<intervene::Original>(original.kind))
        throw MismatchedBase("ctp: first record must be the original");
    if (!std::holds_alternative<intervene::Shift>(shifted.kind))
        throw MismatchedBase("ctp: second record must be a shift");
    if (original.clip_id != shifted.clip_id)
        throw MismatchedBase("ctp: records come from different base clips (" +
                             original.clip_id + " vs " + shifted.clip_id + ")");

    const std::string e_v = require_visual(label);
    const std::string e_a = require_audio(label);
    const double t_v = label.visual_time_s.value_or(0.0);
    const double t_a = label.audio_time_s.value_or(0.0);
    const auto& gt = shifted.ground_truth;

    const std::string synced_text = synced_description(e_v, t_v, e_a, t_a);
    const std::string shifted_text = shifted_description(
        e_v, t_v, e_a, gt.audio_time_s.value_or(t_a), *gt.direction, *gt.offset_s);

    PreferencePair a;
    a.pair_id = "ctp-" + original.clip_id + "-orig";
    a.video_ref = original.output_ref;
    a.prompt = eval::task_prompt(judge::Task::shift);
    a.chosen = synced_text;
    a.rejected = shifted_text;
    a.recipe = Recipe::ctp;
    a.task = PairTask::shift;

    PreferencePair b = a;
    b.pair_id = "ctp-" + original.clip_id + "-shift";
    b.video_ref = shifted.output_ref;
    b.chosen = shifted_text;
    b.rejected = synced_text;
    return {std::move(a), std::move(b)};
}

PreferencePair build_mute_pair(const InterventionRecord& record,
                               const annot::EventTimeLabel& label) {
    if (!std::holds_alternative<intervene::Mute>(record.kind))
        throw Error("mute pair needs a mute record");
    PreferencePair p;
    p.pair_id = "mute-" + record.clip_id;
    p.video_ref = record.output_ref;
    p.prompt = eval::task_prompt(judge::Task::mute);
    p.chosen = mute_chosen();
    p.rejected = mute_rejected(require_visual(label), require_audio(label));
    p.recipe = Recipe::mute_pref;
    p.task = PairTask::mute;
    return p;
}

PreferencePair build_swap_pair(const InterventionRecord& record,
                               const annot::EventTimeLabel& label,
                               const std::optional<annot::EventTimeLabel>& donor_label) {
    if (!std::holds_alternative<intervene::Swap>(record.kind))
        throw Error("swap pair needs a swap record");
    if (!donor_label || !donor_label->audio_event)
        throw MissingDonorLabel("no donor audio-event label for " + record.id);
    PreferencePair p;
    p.pair_id = "swap-" + record.clip_id;
    p.video_ref = record.output_ref;
    p.prompt = eval::task_prompt(judge::Task::swap);
    p.chosen = swap_chosen(require_visual(label), *donor_label->audio_event);
    p.rejected = swap_rejected(require_visual(label), *donor_label->audio_event);
    p.recipe = Recipe::swap_pref;
    p.task = PairTask::swap;
    return p;
}

PreferencePair build_op_pair(const std::string& video_ref,
                             const annot::EventTimeLabel& label,
                             std::uint64_t perturbation_seed,
                             const std::vector<std::string>& other_visual_events,
                             const std::vector<std::string>& other_audio_events) {
    const std::string e_v = require_visual(label);
    const std::string e_a = require_audio(label);
    const double t_v = label.visual_time_s.value_or(0.0);
    const double t_a = label.audio_time_s.value_or(0.0);

    Rng rng(perturbation_seed);

    // candidate perturbations: 0 = t_v, 1 = t_a, 2 = e_v, 3 = e_a
    std::vector<int> options{0, 1};
    if (!other_visual_events.empty()) options.push_back(2);
    if (!other_audio_events.empty()) options.push_back(3);
    const int pick = options[static_cast<std::size_t>(rng.bounded(options.size()))];

    double pt_v = t_v, pt_a = t_a;
    std::string pe_v = e_v, pe_a = e_a;
    const char* tag = "";
    switch (pick) {
        case 0: {
            double delta = rng.uniform(1.0, 3.0);
            if (!rng.coin() && t_v - delta >= 0.0) delta = -delta;
            pt_v = t_v + delta;
            tag = "tv";
            break;
        }
        case 1: {
            double delta = rng.uniform(1.0, 3.0);
            if (!rng.coin() && t_a - delta >= 0.0) delta = -delta;
            pt_a = t_a + delta;
            tag = "ta";
            break;
        }
        case 2:
            pe_v = other_visual_events[static_cast<std::size_t>(
                rng.bounded(other_visual_events.size()))];
            tag = "ev";
            break;
        default:
            pe_a = other_audio_events[static_cast<std::size_t>(
                rng.bounded(other_audio_events.size()))];
            tag = "ea";
            break;
    }

    PreferencePair p;
    p.pair_id = "op-" + label.clip_id + "-" + tag;
    p.video_ref = video_ref;
    p.prompt = eval::task_prompt(judge::Task::shift);
    p.chosen = synced_description(e_v, t_v, e_a, t_a);
    p.rejected = synced_description(pe_v, pt_v, pe_a, pt_a);
    p.recipe = Recipe::op;
    p.task = PairTask::shift;
    return p;
}

std::optional<PreferencePair> build_sp_pair(const std::string& reference_text,
                                            const judge::ParsedPrediction& parsed,
                                            const std::string& raw_text,
                                            const InterventionRecord& record) {
    metrics::EvalSample sample;
    sample.clip_id = record.id;
    sample.task = parsed.task;
    sample.gt_condition = record.ground_truth.condition;
    sample.gt_direction = record.ground_truth.direction;
    sample.gt_offset_s = record.ground_truth.offset_s;
    sample.pred = parsed;
    if (metrics::sample_correct(sample)) return std::nullopt;  // Skip

    PreferencePair p;
    p.pair_id = "sp-" + record.id;
    p.video_ref = record.output_ref;
    p.prompt = eval::task_prompt(parsed.task);
    p.chosen = reference_text;
    p.rejected = raw_text;
    p.recipe = Recipe::sp;
    switch (parsed.task) {
        case judge::Task::shift: p.task = PairTask::shift; break;
        case judge::Task::mute: p.task = PairTask::mute; break;
        case judge::Task::swap: p.task = PairTask::swap; break;
    }
    return p;
}

std::vector<PreferencePair> build_instruction_pairs(
    const std::vector<InstructionRecord>& records, Recipe recipe, std::uint64_t seed) {
    std::vector<PreferencePair> out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const InstructionRecord& rec = records[i];
        // rejected = a different record's answer; skip when no alternative
        // answer text exists
        Rng rng(derive_seed(seed, instruction_record_id(rec)));
        std::string rejected;
        for (int tries = 0; tries < 16 && rejected.empty(); ++tries) {
            const std::size_t j = static_cast<std::size_t>(rng.bounded(records.size()));
            if (j != i && records[j].answer != rec.answer) rejected = records[j].answer;
        }
        if (rejected.empty()) continue;

        PreferencePair p;
        p.pair_id = std::string(to_string(recipe)) + "-" + instruction_record_id(rec);
        p.video_ref = rec.video_ref;
        p.prompt = rec.prompt;
        p.chosen = rec.answer;
        p.rejected = std::move(rejected);
        p.recipe = recipe;
        p.task = PairTask::general;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<InstructionRecord> filter_avqa(
    const std::vector<InstructionRecord>& records,
    const std::vector<std::pair<std::string, bool>>& verdicts) {
    std::map<std::string, bool> correct;
    for (const auto& [id, text_only_correct] : verdicts) correct[id] = text_only_correct;

    std::vector<InstructionRecord> kept;
    for (const auto& rec : records) {
        auto it = correct.find(instruction_record_id(rec));
        if (it != correct.end() && it->second) continue;  // text-only answerable
        kept.push_back(rec);
    }
    return kept;
}

}  // namespace avdiag::prefs
