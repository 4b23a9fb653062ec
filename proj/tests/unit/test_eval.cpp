#include <doctest.h>

#include <atomic>
#include <set>
#include <thread>

#include <httplib.h>

#include "avdiag/errors.hpp"
#include "avdiag/eval/harness.hpp"
#include "avdiag/eval/http_backend.hpp"
#include "avdiag/eval/stubs.hpp"
#include "avdiag/judge/rules.hpp"
#include "avdiag/media/wav.hpp"
#include "../support/synthetic.hpp"

using namespace avdiag;
using namespace avdiag::eval;

namespace {

LabelMap fixture_labels(const std::vector<avtest::FixtureClip>& clips) {
    LabelMap labels;
    for (const auto& c : clips) {
        annot::EventTimeLabel l;
        l.clip_id = c.id;
        l.annotator_id = "consensus";
        l.visual_event = c.visual_event;
        l.visual_time_s = c.event_s;
        l.audio_event = c.audio_event;
        l.audio_time_s = c.event_s;
        labels[c.id] = l;
    }
    return labels;
}

std::vector<ManifestEntry> shift_manifest(const std::vector<avtest::FixtureClip>& clips) {
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 0; i < clips.size(); ++i) {
        const auto& c = clips[i];
        ManifestEntry orig;
        orig.id = c.id + "__orig";
        orig.clip_id = c.id;
        orig.kind = intervene::Original{};
        orig.ground_truth.condition = intervene::Condition::synced;
        orig.ground_truth.visual_time_s = c.event_s;
        orig.ground_truth.audio_time_s = c.event_s;
        orig.output_ref = "clips/" + orig.id + ".wav";
        entries.push_back(orig);

        ManifestEntry shift = orig;
        shift.id = c.id + "__shift";
        const double offset = i % 2 ? 1.5 : -1.5;
        shift.kind = intervene::Shift{offset};
        shift.ground_truth.condition = intervene::Condition::desynced;
        shift.ground_truth.direction =
            offset > 0 ? intervene::Direction::delayed : intervene::Direction::early;
        shift.ground_truth.offset_s = 1.5;
        shift.ground_truth.audio_time_s = c.event_s + offset;
        shift.ground_truth.band = "1.5-2.0";
        shift.output_ref = "clips/" + shift.id + ".wav";
        entries.push_back(shift);
    }
    return entries;
}

std::string serialize(const std::vector<ResponseRecord>& records) {
    std::string out;
    for (const auto& r : records) out += response_to_json(r).dump() + "\n";
    return out;
}

class FlakyBackend final : public ModelBackend {
public:
    explicit FlakyBackend(int failures_per_entry) : failures_(failures_per_entry) {}
    std::string id() const override { return "flaky"; }
    bool accepts_video_audio() const override { return true; }
    std::string query(const ManifestEntry& entry, const std::string&) override {
        const int n = ++calls_[entry.id];
        if (n <= failures_) throw Error("transient failure " + std::to_string(n));
        return "ok";
    }

private:
    int failures_;
    std::map<std::string, std::atomic<int>> calls_;
};

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("oracle stub answers every shift entry correctly by construction") {
    auto clips = avtest::fixture_clips(10);
    auto entries = shift_manifest(clips);
    auto backend = make_stub(StubBehavior::oracle, fixture_labels(clips));
    auto records = run_eval(entries, *backend, judge::Task::shift, 4);
    REQUIRE(records.size() == entries.size());

    std::map<std::string, const ManifestEntry*> by_id;
    for (const auto& e : entries) by_id[e.id] = &e;
    for (const auto& rec : records) {
        auto parsed = judge::rules_parse(judge::Task::shift, rec.raw_text);
        const auto& gt = by_id.at(rec.clip_id)->ground_truth;
        if (gt.condition == intervene::Condition::synced) {
            REQUIRE(parsed.synced);
        } else {
            REQUIRE_FALSE(parsed.synced);
            const auto expect = *gt.direction == intervene::Direction::delayed
                                    ? judge::Category::delay
                                    : judge::Category::early;
            REQUIRE(parsed.prediction == expect);
        }
    }
}

TEST_CASE("synced-prior stub always asserts synchronization") {
    auto clips = avtest::fixture_clips(6);
    auto entries = shift_manifest(clips);
    auto backend = make_stub(StubBehavior::synced_prior, fixture_labels(clips));
    auto records = run_eval(entries, *backend, judge::Task::shift, 2);
    for (const auto& rec : records)
        REQUIRE(rec.raw_text.find("synchronized") != std::string::npos);
}

TEST_CASE("output clip ids equal the manifest's, sorted") {
    auto clips = avtest::fixture_clips(7);
    auto entries = shift_manifest(clips);
    auto backend = make_stub(StubBehavior::dodger, fixture_labels(clips));
    auto records = run_eval(entries, *backend, judge::Task::shift, 3);

    std::multiset<std::string> want, got;
    for (const auto& e : entries) want.insert(e.id);
    for (const auto& r : records) got.insert(r.clip_id);
    CHECK(want == got);
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i - 1].clip_id < records[i].clip_id);
}

TEST_CASE("stub runs are bit-identical across parallelism levels") {
    auto clips = avtest::fixture_clips(12);
    auto entries = shift_manifest(clips);
    for (auto behavior : {StubBehavior::oracle, StubBehavior::synced_prior,
                          StubBehavior::hallucinator, StubBehavior::dodger}) {
        auto b1 = make_stub(behavior, fixture_labels(clips));
        auto b8 = make_stub(behavior, fixture_labels(clips));
        auto r1 = run_eval(entries, *b1, judge::Task::mute, 1);
        auto r8 = run_eval(entries, *b8, judge::Task::mute, 8);
        REQUIRE(serialize(r1) == serialize(r8));
    }
}

TEST_CASE("retries: attempts counted, cap respected") {
    auto clips = avtest::fixture_clips(4);
    auto entries = shift_manifest(clips);
    RetryPolicy fast{3, 1, 1.0};

    FlakyBackend twice(2);
    auto records = run_eval(entries, twice, judge::Task::shift, 2, fast);
    for (const auto& rec : records) {
        CHECK(rec.attempt_count == 3);
        CHECK_FALSE(rec.error.has_value());
        CHECK(rec.raw_text == "ok");
    }
}

TEST_CASE("harness aborts when more than half the entries fail") {
    auto clips = avtest::fixture_clips(4);
    auto entries = shift_manifest(clips);
    RetryPolicy fast{2, 1, 1.0};
    FlakyBackend never(1000);
    CHECK_THROWS_AS(run_eval(entries, never, judge::Task::shift, 2, fast),
                    BackendUnavailable);
}

TEST_CASE("http backend: reference transport, retry on 429, error marker on 500") {
    httplib::Server server;
    std::atomic<int> media_calls{0};
    server.Post("/v1/complete", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        const std::string ref = body.value("media_ref", std::string{});
        if (ref.find("__shift") != std::string::npos) {
            // first call rate-limited, then fine
            if (media_calls.fetch_add(1) == 0) {
                res.status = 429;
                return;
            }
        }
        if (ref.find("clip002") != std::string::npos) {
            res.status = 500;
            return;
        }
        res.set_content(nlohmann::json{{"text", "reply for " + ref}}.dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    EndpointConfig cfg;
    cfg.id = "local";
    cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/complete";
    cfg.rate_limit_rps = 0;  // unthrottled for the test
    cfg.timeout_s = 5;

    auto clips = avtest::fixture_clips(3);  // clip000..002
    auto entries = shift_manifest(clips);   // 6 entries, one hits 500 twice
    auto backend = make_http_backend(cfg);
    RetryPolicy fast{2, 1, 1.0};
    auto records = run_eval(entries, *backend, judge::Task::shift, 2, fast);

    int errors = 0, retried = 0;
    for (const auto& rec : records) {
        if (rec.error) ++errors;
        if (rec.attempt_count > 1 && !rec.error) ++retried;
        if (!rec.error) CHECK(rec.raw_text.rfind("reply for clips/", 0) == 0);
    }
    CHECK(errors == 2);   // both clip002 rows
    CHECK(retried >= 1);  // the 429 path recovered

    // the same endpoint contract serves llm-judge completions
    cfg.id = "judge-endpoint";
    CHECK(http_complete(cfg, "system prompt", "user text") == "reply for ");

    server.stop();
    server_thread.join();
}

TEST_CASE("http backend: inline transport uploads and enforces the size cap") {
    const auto dir = avtest::scratch_dir("http_inline");
    media::write_wav_file(dir / "clips" / "c__orig.wav",
                          media::AudioTrack::silence(8000, 1, 800));

    httplib::Server server;
    server.Post("/q", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        REQUIRE(body.contains("media_b64"));
        res.set_content(nlohmann::json{{"text", "got media"}}.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    EndpointConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/q";
    cfg.transport = "inline";
    cfg.rate_limit_rps = 0;
    cfg.media_root = dir.string();

    ManifestEntry entry;
    entry.id = "c__orig";
    entry.clip_id = "c";
    entry.output_ref = "clips/c__orig.wav";

    auto backend = make_http_backend(cfg);
    CHECK(backend->query(entry, "prompt") == "got media");

    EndpointConfig tiny = cfg;
    tiny.max_upload_bytes = 16;
    auto capped = make_http_backend(tiny);
    CHECK_THROWS_AS(capped->query(entry, "prompt"), PayloadTooLarge);

    server.stop();
    server_thread.join();
}

}  // TEST_SUITE
