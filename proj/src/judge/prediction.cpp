#include "avdiag/judge/prediction.hpp"

#include <cmath>

#include "avdiag/errors.hpp"

namespace avdiag::judge {

const char* to_string(Task t) {
    switch (t) {
        case Task::shift: return "shift";
        case Task::mute: return "mute";
        case Task::swap: return "swap";
    }
    return "?";
}

Task task_from_string(const std::string& s) {
    if (s == "shift") return Task::shift;
    if (s == "mute") return Task::mute;
    if (s == "swap") return Task::swap;
    throw Error("unknown task: " + s);
}

const char* to_string(Category c) {
    switch (c) {
        case Category::synced: return "synced";
        case Category::delay: return "delay";
        case Category::early: return "early";
        case Category::muted: return "muted";
        case Category::mismatched: return "mismatched";
    }
    return "?";
}

Category category_from_string(const std::string& s) {
    if (s == "synced") return Category::synced;
    if (s == "delay") return Category::delay;
    if (s == "early") return Category::early;
    if (s == "muted") return Category::muted;
    if (s == "mismatched") return Category::mismatched;
    throw Error("unknown category: " + s);
}

bool category_allowed(Task task, Category c) {
    switch (task) {
        case Task::shift:
            return c == Category::synced || c == Category::delay || c == Category::early;
        case Task::mute:
            return c != Category::mismatched;
        case Task::swap:
            return c != Category::muted;
    }
    return false;
}

const char* to_string(Engagement e) {
    switch (e) {
        case Engagement::audio_described: return "audio_described";
        case Engagement::visual_only: return "visual_only";
        case Engagement::silence_claimed: return "silence_claimed";
    }
    return "?";
}

Engagement engagement_from_string(const std::string& s) {
    if (s == "audio_described") return Engagement::audio_described;
    if (s == "visual_only") return Engagement::visual_only;
    if (s == "silence_claimed") return Engagement::silence_claimed;
    throw Error("unknown engagement: " + s);
}

ParsedPrediction normalize(ParsedPrediction p) {
    if (!category_allowed(p.task, p.prediction)) {
        ParsedPrediction d = task_default(p.task);
        d.defaulted = true;
        d.explanation = p.explanation;
        return d;
    }
    if (p.task == Task::shift) {
        // synced flag wins over direction and offset
        if (p.synced || p.prediction == Category::synced) {
            p.synced = true;
            p.prediction = Category::synced;
            p.offset_s = 0.0;
        } else {
            p.synced = false;
        }
        p.offset_s = std::abs(p.offset_s);
    } else {
        p.synced = p.prediction == Category::synced;
        p.offset_s = 0.0;
        p.t_v.reset();
        p.t_a.reset();
    }
    if (p.task == Task::mute && !p.engagement) {
        p.engagement = p.prediction == Category::muted ? Engagement::silence_claimed
                                                       : Engagement::visual_only;
    }
    if (p.task != Task::mute) p.engagement.reset();
    return p;
}

ParsedPrediction task_default(Task task) {
    ParsedPrediction p;
    p.task = task;
    p.prediction = Category::synced;
    p.synced = true;
    p.offset_s = 0.0;
    if (task == Task::mute) p.engagement = Engagement::visual_only;
    return p;
}

nlohmann::json prediction_to_json(const std::string& clip_id, const std::string& model_id,
                                  const ParsedPrediction& p) {
    nlohmann::json row;
    row["clip_id"] = clip_id;
    row["model_id"] = model_id;
    row["task"] = to_string(p.task);
    row["prediction"] = to_string(p.prediction);
    if (p.task == Task::shift) {
        row["synced"] = p.synced;
        row["offset_s"] = p.offset_s;
        if (p.t_v) row["t_v"] = *p.t_v;
        if (p.t_a) row["t_a"] = *p.t_a;
    }
    if (p.engagement) row["engagement"] = to_string(*p.engagement);
    if (!p.explanation.empty()) row["explanation"] = p.explanation;
    if (p.defaulted) row["defaulted"] = true;
    return row;
}

ParsedPrediction prediction_from_json(const nlohmann::json& row) {
    ParsedPrediction p;
    p.task = task_from_string(row.at("task").get<std::string>());
    p.prediction = category_from_string(row.at("prediction").get<std::string>());
    p.synced = row.value("synced", p.prediction == Category::synced);
    p.offset_s = row.value("offset_s", 0.0);
    if (row.contains("t_v")) p.t_v = row.at("t_v").get<double>();
    if (row.contains("t_a")) p.t_a = row.at("t_a").get<double>();
    if (row.contains("engagement"))
        p.engagement = engagement_from_string(row.at("engagement").get<std::string>());
    p.explanation = row.value("explanation", std::string{});
    p.defaulted = row.value("defaulted", false);
    return normalize(p);
}

}  // namespace avdiag::judge
