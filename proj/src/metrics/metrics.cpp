#include "avdiag/metrics/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "avdiag/errors.hpp"

namespace avdiag::metrics {

namespace {

using intervene::Condition;
using intervene::Direction;
using judge::Category;
using judge::Engagement;
using judge::Task;

Category direction_category(Direction d) {
    return d == Direction::delayed ? Category::delay : Category::early;
}

bool is_control(const EvalSample& s) { return s.gt_condition == Condition::synced; }

struct Ratio {
    int hits = 0;
    int total = 0;

    void count(bool hit) {
        ++total;
        if (hit) ++hits;
    }
    std::optional<double> rate() const {
        if (total == 0) return std::nullopt;
        return static_cast<double>(hits) / total;
    }
};

}  // namespace

bool sample_correct(const EvalSample& s) {
    const judge::ParsedPrediction& p = s.pred;
    switch (s.gt_condition) {
        case Condition::synced:
            return p.prediction == Category::synced;
        case Condition::desynced:
            return p.is_desync_claim() && s.gt_direction &&
                   p.prediction == direction_category(*s.gt_direction);
        case Condition::silent:
            return p.prediction == Category::muted;
        case Condition::mismatched:
            return p.prediction == Category::mismatched;
    }
    return false;
}

PairedAccuracy paired_accuracy(Samples samples, Task dimension) {
    Ratio orig, interv;
    for (const auto& s : samples) {
        if (s.task != dimension) continue;
        (is_control(s) ? orig : interv).count(sample_correct(s));
    }
    if (orig.total == 0 || interv.total == 0)
        throw EmptySubset(std::string("no ") + (orig.total == 0 ? "original" : "intervened") +
                          " samples for dimension " + judge::to_string(dimension));
    return PairedAccuracy{*orig.rate(), *interv.rate()};
}

double avg_gap(const std::optional<PairedAccuracy>& sync,
               const std::optional<PairedAccuracy>& existence,
               const std::optional<PairedAccuracy>& consistency) {
    if (!sync || !existence || !consistency)
        throw MissingDimension("avg gap needs all three dimensions");
    const double sum = (sync->orig - sync->interv) + (existence->orig - existence->interv) +
                       (consistency->orig - consistency->interv);
    return sum / 3.0 * 100.0;
}

double display_round(double points) { return std::round(points * 10.0) / 10.0; }

FailureRates failure_rates(Samples samples) {
    Ratio mute_halluc, swap_false_match, false_silence, swap_false_mismatch;
    Ratio dodge_silent, dodge_control;
    Ratio offset_blind, direction_conf, false_alarm;

    for (const auto& s : samples) {
        const judge::ParsedPrediction& p = s.pred;
        switch (s.task) {
            case Task::mute: {
                const bool visual_only =
                    p.engagement && *p.engagement == Engagement::visual_only;
                if (s.gt_condition == Condition::silent) {
                    mute_halluc.count(p.engagement &&
                                      *p.engagement == Engagement::audio_described);
                    dodge_silent.count(visual_only);
                } else if (is_control(s)) {
                    false_silence.count(p.prediction == Category::muted);
                    dodge_control.count(visual_only);
                }
                break;
            }
            case Task::swap: {
                if (s.gt_condition == Condition::mismatched) {
                    // anything that fails to flag the mismatch treats the
                    // donor audio as a plausible natural match
                    swap_false_match.count(p.prediction != Category::mismatched);
                } else if (is_control(s)) {
                    swap_false_mismatch.count(p.prediction == Category::mismatched);
                }
                break;
            }
            case Task::shift: {
                if (s.gt_condition == Condition::desynced) {
                    offset_blind.count(p.prediction == Category::synced);
                    if (p.is_desync_claim() && s.gt_direction)
                        direction_conf.count(p.prediction !=
                                             direction_category(*s.gt_direction));
                } else if (is_control(s)) {
                    false_alarm.count(p.prediction != Category::synced);
                }
                break;
            }
        }
    }

    FailureRates out;
    out.mute_hallucination = mute_halluc.rate();
    out.swap_false_match = swap_false_match.rate();
    out.false_silence = false_silence.rate();
    out.swap_false_mismatch = swap_false_mismatch.rate();
    // non-engagement is a property of the model, not of whether audio is
    // real: mean across both conditions, absent unless both are present
    if (dodge_silent.total > 0 && dodge_control.total > 0)
        out.audio_dodge = 0.5 * (*dodge_silent.rate() + *dodge_control.rate());
    out.offset_blindness = offset_blind.rate();
    out.direction_confusion = direction_conf.rate();
    out.false_sync_alarm = false_alarm.rate();
    return out;
}

std::map<std::string, double> band_accuracy(Samples samples) {
    std::map<std::string, Ratio> per_band;
    for (const auto& s : samples) {
        if (s.task != Task::shift || s.gt_condition != Condition::desynced || !s.band)
            continue;
        per_band[*s.band].count(sample_correct(s));
    }
    std::map<std::string, double> out;
    for (const auto& [band, ratio] : per_band) out[band] = *ratio.rate();
    return out;
}

SyncMetrics sync_metrics(Samples samples) {
    Ratio binary, three_way, direction;
    for (const auto& s : samples) {
        if (s.task != Task::shift) continue;
        const bool gt_synced = is_control(s);
        const bool pred_synced = s.pred.prediction == Category::synced;
        binary.count(gt_synced == pred_synced);
        three_way.count(gt_synced ? pred_synced : sample_correct(s));
        if (!gt_synced && s.pred.is_desync_claim() && s.gt_direction)
            direction.count(s.pred.prediction == direction_category(*s.gt_direction));
    }
    SyncMetrics out;
    out.binary_sync_acc = binary.rate();
    out.three_way_acc = three_way.rate();
    out.direction_acc_on_desync = direction.rate();
    return out;
}

namespace {

double signed_offset(Category prediction, double magnitude) {
    switch (prediction) {
        case Category::delay: return magnitude;
        case Category::early: return -magnitude;
        default: return 0.0;
    }
}

}  // namespace

double localization_coverage(Samples samples, double tolerance_s) {
    Ratio covered;
    for (const auto& s : samples) {
        if (s.task != Task::shift) continue;
        const double pred = signed_offset(s.pred.prediction, s.pred.offset_s);
        const double gt =
            s.gt_condition == Condition::desynced && s.gt_direction && s.gt_offset_s
                ? signed_offset(direction_category(*s.gt_direction), *s.gt_offset_s)
                : 0.0;
        covered.count(std::abs(pred - gt) <= tolerance_s);
    }
    return covered.rate().value_or(0.0);
}

Tradeoff tradeoff_and_combined(Samples samples, Task task) {
    if (task == Task::shift) throw Error("tradeoff is defined for mute and swap only");
    Ratio orig, interv;
    for (const auto& s : samples) {
        if (s.task != task) continue;
        (is_control(s) ? orig : interv).count(sample_correct(s));
    }
    if (orig.total == 0 || interv.total == 0)
        throw EmptySubset(std::string("tradeoff needs both subsets for task ") +
                          judge::to_string(task));
    Tradeoff t;
    t.false_alarm_rate = 1.0 - *orig.rate();
    t.detection_rate = *interv.rate();
    t.combined_accuracy =
        static_cast<double>(orig.hits + interv.hits) / (orig.total + interv.total);
    return t;
}

Breakdown breakdown(Samples samples) {
    Breakdown out;
    for (const auto& s : samples) {
        const char* subset = is_control(s) ? "orig" : "interv";
        out[judge::to_string(s.task)][subset][judge::to_string(s.pred.prediction)] += 1;
    }
    return out;
}

namespace {

std::string tau_label(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", tau);
    return buf;
}

}  // namespace

MetricsReport compute_report(Samples samples, const std::vector<double>& taus) {
    MetricsReport report;

    const std::pair<const char*, Task> dims[] = {
        {"sync", Task::shift}, {"existence", Task::mute}, {"consistency", Task::swap}};
    std::map<std::string, std::optional<PairedAccuracy>> paired;
    for (const auto& [name, task] : dims) {
        try {
            PairedAccuracy pa = paired_accuracy(samples, task);
            report.paired[name] = pa;
            paired[name] = pa;
        } catch (const EmptySubset&) {
            paired[name] = std::nullopt;
        }
    }
    if (paired["sync"] && paired["existence"] && paired["consistency"])
        report.avg_gap_points =
            avg_gap(paired["sync"], paired["existence"], paired["consistency"]);

    report.failures = failure_rates(samples);
    report.prediction_breakdown = breakdown(samples);
    report.band_acc = band_accuracy(samples);
    report.sync = sync_metrics(samples);
    for (double tau : taus) report.localization[tau_label(tau)] =
        localization_coverage(samples, tau);
    for (Task task : {Task::mute, Task::swap}) {
        try {
            Tradeoff t = tradeoff_and_combined(samples, task);
            report.tradeoff[judge::to_string(task)] = t;
            report.combined[judge::to_string(task)] = t.combined_accuracy;
        } catch (const EmptySubset&) {
        }
    }
    return report;
}

}  // namespace avdiag::metrics
