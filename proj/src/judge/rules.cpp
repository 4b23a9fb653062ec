#include "avdiag/judge/rules.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>

namespace avdiag::judge {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool contains_word(const std::string& text, const std::string& pattern) {
    const std::regex re("\\b" + pattern + "\\b");
    return std::regex_search(text, re);
}

bool contains_any(const std::string& text, std::initializer_list<const char*> patterns) {
    for (const char* p : patterns)
        if (contains_word(text, p)) return true;
    return false;
}

bool silence_claim(const std::string& t) {
    return contains_any(t, {"silent", "silence", "muted", "no audio", "no sound",
                            "nothing audible", "audio is absent", "no audible"});
}

bool mismatch_claim(const std::string& t) {
    return contains_any(t, {"mismatch(ed)?", "does not match", "doesn't match",
                            "do not match", "don't match", "unrelated", "inconsistent",
                            "does not correspond", "not correspond"});
}

bool delay_claim(const std::string& t) {
    return contains_any(t, {"delayed", "delay", "lag(s|ged|ging)?", "behind",
                            "after the visual", "comes after", "later than"});
}

bool early_claim(const std::string& t) {
    return contains_any(t, {"early", "ahead", "precedes?", "before the visual",
                            "comes before", "leads"});
}

bool explicit_desync(const std::string& t) {
    return contains_any(t, {"not synchronized", "not in sync", "out of sync",
                            "desynchronized", "unsynchronized",
                            "synchronization mismatch"});
}

std::optional<double> first_match_value(const std::string& t, const std::regex& re) {
    std::smatch m;
    if (std::regex_search(t, m, re)) return std::stod(m[1].str());
    return std::nullopt;
}

std::optional<double> parse_offset(const std::string& t) {
    static const std::regex cue(
        R"((?:by|about|approximately|roughly|offset of|around|~)\s*([0-9]+(?:\.[0-9]+)?)\s*(?:s\b|sec|second))");
    static const std::regex bare(R"(([0-9]+(?:\.[0-9]+)?)\s*(?:s\b|sec|second))");
    if (auto v = first_match_value(t, cue)) return v;
    return first_match_value(t, bare);
}

std::optional<double> parse_visual_time(const std::string& t) {
    static const std::regex re(
        R"((?:occurs at|visual event (?:occurs )?at|event at)\s*~?\s*([0-9]+(?:\.[0-9]+)?)\s*s)");
    return first_match_value(t, re);
}

std::optional<double> parse_audio_time(const std::string& t) {
    static const std::regex re(
        R"((?:heard at|sound at|audio at)\s*~?\s*([0-9]+(?:\.[0-9]+)?)\s*s)");
    return first_match_value(t, re);
}

}  // namespace

bool mentions_concrete_audio(const std::string& raw_text) {
    const std::string t = lower(raw_text);
    return contains_any(t, {"hear(s|d|ing)?", "sound(s|ed|ing)?", "audio", "music",
                            "speech", "noise", "thud", "bang", "crash", "splash",
                            "voice(s)?", "vocal(s)?", "audible"});
}

ParsedPrediction rules_parse(Task task, const std::string& raw_text) {
    const std::string t = lower(raw_text);
    ParsedPrediction p = task_default(task);
    p.explanation = "rules";

    if (task == Task::mute && silence_claim(t)) {
        p.prediction = Category::muted;
        return normalize(p);
    }
    if (task == Task::swap && mismatch_claim(t)) {
        p.prediction = Category::mismatched;
        return normalize(p);
    }

    const bool is_delay = delay_claim(t);
    const bool is_early = early_claim(t);
    if (explicit_desync(t) || is_delay || is_early) {
        if (is_delay != is_early) {  // a direction is required, and only one
            p.prediction = is_delay ? Category::delay : Category::early;
            p.synced = false;
            if (task == Task::shift) {
                p.offset_s = parse_offset(t).value_or(0.0);
                p.t_v = parse_visual_time(t);
                p.t_a = parse_audio_time(t);
            }
            if (task == Task::mute) {
                p.engagement = mentions_concrete_audio(t) ? Engagement::audio_described
                                                          : Engagement::visual_only;
            }
            return normalize(p);
        }
    }

    // synced default
    if (task == Task::mute) {
        p.engagement = mentions_concrete_audio(t) ? Engagement::audio_described
                                                  : Engagement::visual_only;
    }
    return normalize(p);
}

}  // namespace avdiag::judge
