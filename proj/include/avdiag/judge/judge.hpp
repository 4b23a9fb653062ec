#pragma once

#include <functional>
#include <memory>
#include <string>

#include "avdiag/judge/prediction.hpp"

namespace avdiag::judge {

enum class JudgeMode { llm, rules };

// A judge converts one free-form response into a fixed-schema prediction.
// Rules mode is deterministic; llm mode drives an external completion
// endpoint with the per-task system prompt.
class JudgeBackend {
public:
    virtual ~JudgeBackend() = default;
    virtual std::string id() const = 0;
    virtual JudgeMode mode() const = 0;

    // llm mode only: returns the raw completion for (system, user).
    virtual std::string complete(const std::string& system_prompt,
                                 const std::string& user_text);
};

std::unique_ptr<JudgeBackend> make_rules_judge();

// Wraps any completion function as an llm judge.
using CompletionFn = std::function<std::string(const std::string& system_prompt,
                                               const std::string& user_text)>;
std::unique_ptr<JudgeBackend> make_llm_judge(std::string id, CompletionFn complete);

// Parses raw_text into a validated ParsedPrediction. Empty or error-marked
// responses map to the task default. llm mode sends the per-task system
// prompt plus raw_text, parses the returned JSON, and validates enumerations;
// one repair re-prompt is attempted on malformed JSON, after which the task
// default is returned with the `defaulted` flag set.
ParsedPrediction judge_parse(Task task, const std::string& raw_text, JudgeBackend& backend);

// Engagement classification for mute-task records: silence_claimed iff the
// prediction is muted; audio_described iff the prediction is
// synced/delay/early and the response concretely describes audio;
// visual_only otherwise.
Engagement classify_engagement(const std::string& raw_text, const ParsedPrediction& verdict);

}  // namespace avdiag::judge
