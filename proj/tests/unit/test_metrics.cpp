#include <doctest.h>

#include <algorithm>

#include "avdiag/errors.hpp"
#include "avdiag/metrics/metrics.hpp"
#include "avdiag/metrics/report_io.hpp"
#include "avdiag/rng.hpp"
#include "../support/metric_oracles.hpp"

using namespace avdiag;
using namespace avdiag::metrics;
using avdiag::intervene::Condition;
using avdiag::intervene::Direction;
using avdiag::judge::Category;
using avdiag::judge::Engagement;
using avdiag::judge::Task;

namespace {

EvalSample sample(Task task, Condition gt, Category pred,
                  std::optional<Direction> dir = {}, std::optional<double> offset = {},
                  std::optional<Engagement> engagement = {}) {
    EvalSample s;
    s.task = task;
    s.gt_condition = gt;
    s.gt_direction = dir;
    s.gt_offset_s = offset;
    s.pred = judge::task_default(task);
    s.pred.prediction = pred;
    s.pred.synced = pred == Category::synced;
    if (offset && (pred == Category::delay || pred == Category::early))
        s.pred.offset_s = *offset;
    if (task == Task::mute)
        s.pred.engagement = engagement.value_or(pred == Category::muted
                                                    ? Engagement::silence_claimed
                                                    : Engagement::visual_only);
    return s;
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("avg gap reproduces the six-model golden fixtures") {
    struct Row {
        const char* model;
        double pairs[6];
        double want;
    };
    const Row rows[] = {
        {"gemini", {54.9, 46.5, 100.0, 13.4, 93.6, 18.3}, 56.8},
        {"minicpm", {83.8, 13.7, 100.0, 19.0, 95.8, 4.9}, 80.7},
        {"nemotron", {35.9, 26.8, 66.2, 4.2, 88.7, 19.9}, 46.6},
        {"qwen", {100.0, 1.4, 95.1, 0.0, 75.4, 37.3}, 77.3},
        {"ming", {54.2, 20.1, 95.7, 54.9, 90.1, 15.5}, 49.8},
        {"mimo", {73.9, 9.9, 99.3, 2.1, 89.4, 15.3}, 78.4},
    };
    for (const auto& row : rows) {
        PairedAccuracy sync{row.pairs[0] / 100, row.pairs[1] / 100};
        PairedAccuracy exist{row.pairs[2] / 100, row.pairs[3] / 100};
        PairedAccuracy consist{row.pairs[4] / 100, row.pairs[5] / 100};
        const double gap = display_round(avg_gap(sync, exist, consist));
        CHECK_MESSAGE(std::abs(gap - row.want) <= 0.05, row.model);

        // brute-force recomputation: sum of three differences over three
        const double brute = ((row.pairs[0] - row.pairs[1]) + (row.pairs[2] - row.pairs[3]) +
                              (row.pairs[4] - row.pairs[5])) /
                             3.0;
        CHECK(std::abs(avg_gap(sync, exist, consist) - brute) < 1e-9);
    }
    CHECK_THROWS_AS(avg_gap(std::nullopt, PairedAccuracy{}, PairedAccuracy{}),
                    MissingDimension);
}

TEST_CASE("paired accuracy: simple counting") {
    std::vector<EvalSample> v;
    v.push_back(sample(Task::mute, Condition::synced, Category::synced));
    for (int i = 0; i < 3; ++i)
        v.push_back(sample(Task::mute, Condition::silent, Category::muted));
    v.push_back(sample(Task::mute, Condition::silent, Category::synced));
    auto pa = paired_accuracy(v, Task::mute);
    CHECK(pa.orig == 1.0);
    CHECK(pa.interv == 0.75);

    CHECK_THROWS_AS(paired_accuracy(v, Task::swap), EmptySubset);
}

TEST_CASE("failure rates: synced-prior pattern") {
    std::vector<EvalSample> v;
    for (int i = 0; i < 4; ++i) {
        v.push_back(sample(Task::shift, Condition::synced, Category::synced));
        v.push_back(sample(Task::shift, Condition::desynced, Category::synced,
                           Direction::delayed, 1.5));
        v.push_back(sample(Task::mute, Condition::synced, Category::synced, {}, {},
                           Engagement::audio_described));
        v.push_back(sample(Task::mute, Condition::silent, Category::synced, {}, {},
                           Engagement::audio_described));
        v.push_back(sample(Task::swap, Condition::synced, Category::synced));
        v.push_back(sample(Task::swap, Condition::mismatched, Category::synced));
    }
    auto f = failure_rates(v);
    CHECK(*f.offset_blindness == 1.0);
    CHECK(*f.false_sync_alarm == 0.0);
    CHECK_FALSE(f.direction_confusion.has_value());  // nothing flagged
    CHECK(*f.mute_hallucination == 1.0);
    CHECK(*f.swap_false_match == 1.0);
    CHECK(*f.false_silence == 0.0);
    CHECK(*f.swap_false_mismatch == 0.0);
    CHECK(*f.audio_dodge == 0.0);
}

TEST_CASE("failure rates: direction confusion counts only flagged desyncs") {
    std::vector<EvalSample> v;
    // 5 desync samples flagged, 2 with the wrong direction
    for (int i = 0; i < 3; ++i)
        v.push_back(sample(Task::shift, Condition::desynced, Category::delay,
                           Direction::delayed, 2.0));
    for (int i = 0; i < 2; ++i)
        v.push_back(sample(Task::shift, Condition::desynced, Category::early,
                           Direction::delayed, 2.0));
    auto f = failure_rates(v);
    CHECK(*f.direction_confusion == doctest::Approx(0.4));
    CHECK(*f.offset_blindness == 0.0);
}

TEST_CASE("sync metrics: always-delay model on a 50/50 desync fixture") {
    std::vector<EvalSample> v;
    for (int i = 0; i < 10; ++i)
        v.push_back(sample(Task::shift, Condition::desynced, Category::delay,
                           i < 5 ? Direction::delayed : Direction::early, 1.0));
    auto m = sync_metrics(v);
    CHECK(*m.binary_sync_acc == 1.0);          // all flagged desynced
    CHECK(*m.three_way_acc == 0.5);
    CHECK(*m.direction_acc_on_desync == 0.5);  // oracle: direct count, 5 of 10
}

TEST_CASE("desync partition: blind + wrong + correct = desync count") {
    Rng rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        auto v = avtest::oracle::random_log(rng, 120);
        int desync = 0, blind = 0, wrong = 0, correct = 0;
        for (const auto& s : v) {
            if (s.task != Task::shift || s.gt_condition != Condition::desynced) continue;
            ++desync;
            if (s.pred.prediction == Category::synced)
                ++blind;
            else if (sample_correct(s))
                ++correct;
            else
                ++wrong;
        }
        REQUIRE(blind + wrong + correct == desync);
    }
}

TEST_CASE("localization coverage: per-element comparison oracle") {
    std::vector<EvalSample> v;
    v.push_back(sample(Task::shift, Condition::desynced, Category::delay,
                       Direction::delayed, 2.0));
    v.back().pred.offset_s = 2.1;
    v.push_back(sample(Task::shift, Condition::desynced, Category::early,
                       Direction::early, 2.0));
    v.back().pred.offset_s = 1.0;  // signed -1.0 vs gt -2.0
    v.push_back(sample(Task::shift, Condition::synced, Category::synced));

    CHECK(localization_coverage(v, 0.5) == doctest::Approx(2.0 / 3.0));
    CHECK(localization_coverage(v, 1e9) == 1.0);

    // oracle at the quantization step: exact offsets -> full coverage
    std::vector<EvalSample> exact;
    exact.push_back(sample(Task::shift, Condition::desynced, Category::delay,
                           Direction::delayed, 1.25));
    CHECK(localization_coverage(exact, 1.0 / 16000.0) == 1.0);
}

TEST_CASE("tradeoff and combined: counting example") {
    std::vector<EvalSample> v;
    for (int i = 0; i < 10; ++i)
        v.push_back(sample(Task::mute, Condition::synced,
                           i < 8 ? Category::synced : Category::muted));
    for (int i = 0; i < 10; ++i)
        v.push_back(sample(Task::mute, Condition::silent,
                           i < 6 ? Category::muted : Category::synced));
    auto t = tradeoff_and_combined(v, Task::mute);
    CHECK(t.false_alarm_rate == doctest::Approx(0.2));
    CHECK(t.detection_rate == doctest::Approx(0.6));
    CHECK(t.combined_accuracy == doctest::Approx(0.7));

    CHECK_THROWS_AS(tradeoff_and_combined(v, Task::swap), EmptySubset);
}

TEST_CASE("every metric equals its brute-force oracle on random logs") {
    Rng rng(99);
    for (int iter = 0; iter < 120; ++iter) {
        const auto v = avtest::oracle::random_log(rng, 200);
        const auto f = failure_rates(v);
        REQUIRE(same(f.mute_hallucination, avtest::oracle::mute_hallucination(v)));
        REQUIRE(same(f.swap_false_match, avtest::oracle::swap_false_match(v)));
        REQUIRE(same(f.false_silence, avtest::oracle::false_silence(v)));
        REQUIRE(same(f.swap_false_mismatch, avtest::oracle::swap_false_mismatch(v)));
        REQUIRE(same(f.audio_dodge, avtest::oracle::audio_dodge(v)));
        REQUIRE(same(f.offset_blindness, avtest::oracle::offset_blindness(v)));
        REQUIRE(same(f.direction_confusion, avtest::oracle::direction_confusion(v)));
        REQUIRE(same(f.false_sync_alarm, avtest::oracle::false_sync_alarm(v)));

        const auto sm = sync_metrics(v);
        REQUIRE(same(sm.binary_sync_acc, avtest::oracle::binary_sync(v)));
        REQUIRE(same(sm.three_way_acc, avtest::oracle::three_way(v)));
        REQUIRE(same(sm.direction_acc_on_desync, avtest::oracle::direction_on_desync(v)));

        REQUIRE(band_accuracy(v) == avtest::oracle::band_accuracy(v));
        for (double tau : {0.25, 0.5, 1.0})
            REQUIRE(localization_coverage(v, tau) == avtest::oracle::localization(v, tau));

        for (Task task : {Task::mute, Task::swap}) {
            const auto want = avtest::oracle::tradeoff(v, task);
            if (!want) continue;
            const auto got = tradeoff_and_combined(v, task);
            REQUIRE(got.false_alarm_rate == want->fa);
            REQUIRE(got.detection_rate == want->det);
            REQUIRE(got.combined_accuracy == want->combined);
        }
    }
}

TEST_CASE("metrics are invariant to record order and duplication") {
    Rng rng(123);
    auto v = avtest::oracle::random_log(rng, 150);
    auto report_a = compute_report(v);

    auto shuffled = v;
    rng.shuffle(shuffled);
    auto report_b = compute_report(shuffled);
    CHECK(report_to_json(report_a) == report_to_json(report_b));

    // duplicated then deduplicated: equality with the original
    std::vector<EvalSample> doubled = v;
    doubled.insert(doubled.end(), v.begin(), v.end());
    std::vector<EvalSample> dedup;
    for (std::size_t i = 0; i < doubled.size(); i += 1)
        if (i < v.size()) dedup.push_back(doubled[i]);
    CHECK(report_to_json(compute_report(dedup)) == report_to_json(report_a));
}

TEST_CASE("breakdown histogram rows sum to the sample counts") {
    Rng rng(7);
    auto v = avtest::oracle::random_log(rng, 100);
    auto b = breakdown(v);
    int total = 0;
    for (const auto& [task, subsets] : b)
        for (const auto& [subset, cats] : subsets)
            for (const auto& [cat, count] : cats) total += count;
    CHECK(total == static_cast<int>(v.size()));
}

}  // TEST_SUITE
