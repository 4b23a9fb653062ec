#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avdiag/intervene/types.hpp"
#include "avdiag/judge/prediction.hpp"

namespace avdiag::metrics {

// One scored row: a parsed prediction joined with the ground truth of the
// manifest row it answered.
struct EvalSample {
    std::string clip_id;
    judge::Task task = judge::Task::shift;
    intervene::Condition gt_condition = intervene::Condition::synced;
    std::optional<intervene::Direction> gt_direction;  // desynced only
    std::optional<double> gt_offset_s;                 // |delta|, desynced only
    std::optional<std::string> band;                   // shift only
    judge::ParsedPrediction pred;
};

using Samples = std::span<const EvalSample>;

// Correctness conventions:
//   originals: correct iff predicted synced (every task);
//   shift intervened: desynced AND correct direction (three-way standard;
//     binary-only correctness is reported separately by sync_metrics);
//   mute intervened: predicted muted;
//   swap intervened: predicted mismatched.
bool sample_correct(const EvalSample& s);

struct PairedAccuracy {
    double orig = 0.0;
    double interv = 0.0;
};

// Fractions in [0, 1] over the original-control and intervened subsets of
// one grounding dimension (task). Throws EmptySubset when either is empty.
PairedAccuracy paired_accuracy(Samples samples, judge::Task dimension);

// Mean accuracy drop across the three dimensions, in percentage points.
// Inputs are fraction-valued pairs; throws MissingDimension when absent.
double avg_gap(const std::optional<PairedAccuracy>& sync,
               const std::optional<PairedAccuracy>& existence,
               const std::optional<PairedAccuracy>& consistency);

// One decimal, matching table display.
double display_round(double points);

// The eight failure modes. A rate is absent when its denominator is empty.
struct FailureRates {
    std::optional<double> mute_hallucination;   // muted clips answered with concrete audio
    std::optional<double> swap_false_match;     // swapped clips treated as matching
    std::optional<double> false_silence;        // real audio claimed silent
    std::optional<double> swap_false_mismatch;  // natural pairs flagged mismatched
    std::optional<double> audio_dodge;          // visual-only answers, mean of both conditions
    std::optional<double> offset_blindness;     // desync judged synced
    std::optional<double> direction_confusion;  // flagged desync, wrong sign
    std::optional<double> false_sync_alarm;     // synced originals called desynced
};

FailureRates failure_rates(Samples samples);

// Per-band fraction of shift-intervened samples answered desynced with the
// correct direction. Bands with no samples are absent from the map.
std::map<std::string, double> band_accuracy(Samples samples);

struct SyncMetrics {
    std::optional<double> binary_sync_acc;        // synced-vs-desynced over all shift rows
    std::optional<double> three_way_acc;          // {synced, delay, early} over all shift rows
    std::optional<double> direction_acc_on_desync;  // correct sign among flagged desyncs
};

SyncMetrics sync_metrics(Samples samples);

// Fraction of shift rows whose signed predicted offset lies within tau of
// the signed ground-truth offset (. sign: + delay, - early, 0 synced).
double localization_coverage(Samples samples, double tolerance_s);

struct Tradeoff {
    double false_alarm_rate = 0.0;   // 1 - original-subset accuracy
    double detection_rate = 0.0;     // intervened-subset accuracy
    double combined_accuracy = 0.0;  // sample-weighted accuracy over the union
};

// task must be mute or swap; throws EmptySubset when a subset is empty.
Tradeoff tradeoff_and_combined(Samples samples, judge::Task task);

// Prediction-category histograms, keyed task -> "orig"/"interv" -> category.
using Breakdown = std::map<std::string, std::map<std::string, std::map<std::string, int>>>;

Breakdown breakdown(Samples samples);

struct MetricsReport {
    std::map<std::string, PairedAccuracy> paired;  // "sync"/"existence"/"consistency"
    std::optional<double> avg_gap_points;
    FailureRates failures;
    Breakdown prediction_breakdown;
    std::map<std::string, double> band_acc;
    SyncMetrics sync;
    std::map<std::string, double> localization;  // tau label -> coverage
    std::map<std::string, Tradeoff> tradeoff;    // "mute"/"swap"
    std::map<std::string, double> combined;      // combined accuracy per task
};

// Aggregates everything computable from the sample set; dimensions with an
// empty subset are simply omitted rather than raising.
MetricsReport compute_report(Samples samples, const std::vector<double>& taus = {0.5});

}  // namespace avdiag::metrics
