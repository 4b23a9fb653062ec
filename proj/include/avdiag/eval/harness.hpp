#pragma once

#include <vector>

#include "avdiag/eval/backend.hpp"

namespace avdiag::eval {

struct RetryPolicy {
    int max_attempts = 3;
    int initial_backoff_ms = 100;
    double multiplier = 2.0;
};

// Queries every entry with the task's inference prompt under bounded
// parallelism. Failed queries are retried per policy, then recorded with an
// error marker. Results are sorted by row id, so output never depends on
// completion order. Aborts with BackendUnavailable once more than half of
// the entries have exhausted their retries.
std::vector<ResponseRecord> run_eval(const std::vector<ManifestEntry>& entries,
                                     ModelBackend& backend, judge::Task task,
                                     int parallelism, const RetryPolicy& retry = {});

// The inference prompt and its resource id for a task.
const std::string& task_prompt(judge::Task task);
const char* task_prompt_id(judge::Task task);

}  // namespace avdiag::eval
