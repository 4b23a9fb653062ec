#include "avdiag/eval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "avdiag/errors.hpp"
#include "avdiag/prompts.hpp"

namespace avdiag::eval {

nlohmann::json response_to_json(const ResponseRecord& r) {
    nlohmann::json row;
    row["clip_id"] = r.clip_id;
    row["model_id"] = r.model_id;
    row["task"] = judge::to_string(r.task);
    row["prompt_id"] = r.prompt_id;
    row["raw_text"] = r.raw_text;
    row["latency_ms"] = r.latency_ms;
    row["attempt_count"] = r.attempt_count;
    if (r.error) row["error"] = *r.error;
    if (r.no_audio_input) row["no_audio_input"] = true;
    return row;
}

ResponseRecord response_from_json(const nlohmann::json& row) {
    ResponseRecord r;
    r.clip_id = row.at("clip_id").get<std::string>();
    r.model_id = row.at("model_id").get<std::string>();
    r.task = judge::task_from_string(row.at("task").get<std::string>());
    r.prompt_id = row.value("prompt_id", std::string{});
    r.raw_text = row.value("raw_text", std::string{});
    r.latency_ms = row.value("latency_ms", std::int64_t{0});
    r.attempt_count = row.value("attempt_count", 1);
    if (row.contains("error")) r.error = row.at("error").get<std::string>();
    r.no_audio_input = row.value("no_audio_input", false);
    return r;
}

const std::string& task_prompt(judge::Task task) {
    static const std::string shift(prompts::shift_inference());
    static const std::string mute(prompts::mute_inference());
    static const std::string swap(prompts::swap_inference());
    switch (task) {
        case judge::Task::mute: return mute;
        case judge::Task::swap: return swap;
        case judge::Task::shift: return shift;
    }
    return shift;
}

const char* task_prompt_id(judge::Task task) {
    switch (task) {
        case judge::Task::mute: return "mute_inference";
        case judge::Task::swap: return "swap_inference";
        case judge::Task::shift: return "shift_inference";
    }
    return "?";
}

std::vector<ResponseRecord> run_eval(const std::vector<ManifestEntry>& entries,
                                     ModelBackend& backend, judge::Task task,
                                     int parallelism, const RetryPolicy& retry) {
    if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    if (retry.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");

    const std::string& prompt = task_prompt(task);
    const std::size_t n = entries.size();
    std::vector<ResponseRecord> out(n);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || abort.load()) return;
            const ManifestEntry& entry = entries[i];

            ResponseRecord rec;
            rec.clip_id = entry.id;
            rec.model_id = backend.id();
            rec.task = task;
            rec.prompt_id = task_prompt_id(task);
            rec.no_audio_input = !backend.accepts_video_audio();

            int backoff = retry.initial_backoff_ms;
            for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
                rec.attempt_count = attempt;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    rec.raw_text = backend.query(entry, prompt);
                    rec.error.reset();
                    // stubs keep latency at 0 so logs stay bit-reproducible
                    const auto elapsed = std::chrono::steady_clock::now() - t0;
                    rec.latency_ms =
                        rec.model_id.starts_with("stub:")
                            ? 0
                            : std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                                  .count();
                    break;
                } catch (const std::exception& e) {
                    rec.error = e.what();
                    rec.raw_text.clear();
                    if (attempt < retry.max_attempts) {
                        std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
                        backoff = static_cast<int>(backoff * retry.multiplier);
                    }
                }
            }
            if (rec.error) {
                const std::size_t bad = failed.fetch_add(1) + 1;
                if (bad * 2 > n) abort.store(true);
            }
            out[i] = std::move(rec);
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int threads = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(parallelism), std::max<std::size_t>(n, 1)));
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (abort.load())
        throw BackendUnavailable("backend " + backend.id() + " failed on " +
                                 std::to_string(failed.load()) + " of " + std::to_string(n) +
                                 " entries");

    std::sort(out.begin(), out.end(),
              [](const ResponseRecord& a, const ResponseRecord& b) {
                  return a.clip_id < b.clip_id;
              });
    return out;
}

}  // namespace avdiag::eval
