#include "avdiag/judge/judge.hpp"

#include <json.hpp>

#include "avdiag/errors.hpp"
#include "avdiag/judge/rules.hpp"
#include "avdiag/prompts.hpp"

namespace avdiag::judge {

std::string JudgeBackend::complete(const std::string&, const std::string&) {
    throw Error("backend " + id() + " does not implement completion");
}

namespace {

class RulesJudge final : public JudgeBackend {
public:
    std::string id() const override { return "rules"; }
    JudgeMode mode() const override { return JudgeMode::rules; }
};

class LlmJudge final : public JudgeBackend {
public:
    LlmJudge(std::string id, CompletionFn complete)
        : id_(std::move(id)), complete_(std::move(complete)) {}

    std::string id() const override { return id_; }
    JudgeMode mode() const override { return JudgeMode::llm; }
    std::string complete(const std::string& system_prompt,
                         const std::string& user_text) override {
        return complete_(system_prompt, user_text);
    }

private:
    std::string id_;
    CompletionFn complete_;
};

std::string system_prompt_for(Task task) {
    switch (task) {
        case Task::shift: return std::string(prompts::shift_judge_system());
        case Task::mute: return std::string(prompts::mute_judge_system());
        case Task::swap: return std::string(prompts::swap_judge_system());
    }
    throw Error("bad task");
}

ParsedPrediction from_judge_json(Task task, const nlohmann::json& obj) {
    ParsedPrediction p;
    p.task = task;
    if (task == Task::shift) {
        p.synced = obj.value("synced", true);
        const std::string dir = obj.value("direction", std::string("none"));
        if (dir == "delay")
            p.prediction = Category::delay;
        else if (dir == "early")
            p.prediction = Category::early;
        else
            p.prediction = Category::synced;
        p.offset_s = obj.value("offset_sec", 0.0);
        if (obj.contains("t_v") && obj.at("t_v").is_number())
            p.t_v = obj.at("t_v").get<double>();
        if (obj.contains("t_a") && obj.at("t_a").is_number())
            p.t_a = obj.at("t_a").get<double>();
    } else {
        p.prediction = category_from_string(obj.at("prediction").get<std::string>());
        if (!category_allowed(task, p.prediction))
            throw Error("category outside task enumeration");
    }
    p.explanation = obj.value("explanation", std::string{});
    return normalize(p);
}

ParsedPrediction llm_parse(Task task, const std::string& raw_text, JudgeBackend& backend) {
    const std::string system = system_prompt_for(task);
    std::string reply = backend.complete(system, raw_text);
    for (int attempt = 0;; ++attempt) {
        try {
            return from_judge_json(task, nlohmann::json::parse(reply));
        } catch (const std::exception&) {
            if (attempt >= 1) break;
            // one repair re-prompt, then the task default
            reply = backend.complete(system, raw_text + "\n\nReturn only the JSON object.");
        }
    }
    ParsedPrediction p = task_default(task);
    p.defaulted = true;
    return p;
}

}  // namespace

std::unique_ptr<JudgeBackend> make_rules_judge() { return std::make_unique<RulesJudge>(); }

std::unique_ptr<JudgeBackend> make_llm_judge(std::string id, CompletionFn complete) {
    return std::make_unique<LlmJudge>(std::move(id), std::move(complete));
}

ParsedPrediction judge_parse(Task task, const std::string& raw_text, JudgeBackend& backend) {
    if (raw_text.empty()) {
        ParsedPrediction p = task_default(task);
        p.defaulted = true;
        return p;
    }
    ParsedPrediction p = backend.mode() == JudgeMode::rules
                             ? rules_parse(task, raw_text)
                             : llm_parse(task, raw_text, backend);
    if (task == Task::mute) p.engagement = classify_engagement(raw_text, p);
    return p;
}

Engagement classify_engagement(const std::string& raw_text, const ParsedPrediction& verdict) {
    if (verdict.prediction == Category::muted) return Engagement::silence_claimed;
    const bool accepts_audio = verdict.prediction == Category::synced ||
                               verdict.prediction == Category::delay ||
                               verdict.prediction == Category::early;
    if (accepts_audio && mentions_concrete_audio(raw_text))
        return Engagement::audio_described;
    return Engagement::visual_only;
}

}  // namespace avdiag::judge
