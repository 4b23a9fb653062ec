#include "avdiag/prompts.hpp"

#include <fstream>

#include "avdiag/errors.hpp"

namespace avdiag::prompts {

namespace {

constexpr std::string_view kMuteInference = "Describe the audio you hear in this video.\n";

constexpr std::string_view kSwapInference =
    "Describe what you see in the video and what you hear in the audio.\n";

constexpr std::string_view kShiftInference =
    "Watch this video and listen to its audio carefully. Determine whether the audio and "
    "video tracks are synchronized. If they are not synchronized, identify the direction "
    "of the offset (audio delayed or audio early relative to video) and estimate the "
    "offset in seconds. Explain your reasoning.\n";

constexpr std::string_view kMuteJudgeSystem =
    R"(You are evaluating a model's response about a video whose audio has been secretly replaced with silence. The user will give you the model's response. Classify the model's assessment into exactly ONE of four categories and return ONLY valid JSON (no markdown, no explanation):

{"prediction": "synced"|"delay"|"early"|"muted", "explanation": "<one sentence>"}

Rules:
- "synced": the model claims audio and video are synchronized (it is hallucinating audio).
- "delay": the model claims audio is delayed relative to video (hallucinating audio + claiming offset).
- "early": the model claims audio is early relative to video (hallucinating audio + claiming offset).
- "muted": the model states there is no audio, the audio is silent, muted, or absent.
- If the model describes specific sounds (e.g. "thud", "music", "splash") but does not explicitly say the video is silent, classify based on its sync/desync conclusion, not as "muted".
- If the model is ambiguous or gives no clear answer, default to "synced".
)";

constexpr std::string_view kSwapJudgeSystem =
    R"(You are evaluating a model's response about a video whose audio has been secretly replaced with audio from a DIFFERENT unrelated video. The user will give you the model's response. Classify the model's assessment into exactly ONE of four categories and return ONLY valid JSON (no markdown, no explanation):

{"prediction": "synced"|"delay"|"early"|"mismatched", "explanation": "<one sentence>"}

Rules:
- "mismatched": the model says the audio does NOT match the visual content, or the audio and video are unrelated, or the sounds don't correspond to what's shown.
- "synced": the model claims audio and video are well synchronized and matching.
- "delay": the model claims audio is delayed (but still believes they match semantically).
- "early": the model claims audio is early (but still believes they match semantically).
- Prefer "mismatched" whenever the model expresses confusion, doubt about the audio matching the video, or says the audio seems unrelated.
- Default to "synced" if the answer is ambiguous.
)";

constexpr std::string_view kShiftJudgeSystem =
    R"(You are a structured-output extractor. The user will give you a model's free-text response about audio-video synchronization. Extract the following fields and return ONLY valid JSON (no markdown, no explanation):

{"synced": <bool>, "direction": "none"|"delay"|"early", "offset_sec": <float>, "t_v": <float or null>, "t_a": <float or null>, "explanation": "<one sentence>"}

Rules:
- synced: true if the model says audio and video are synchronized, false otherwise.
- direction: "delay" means audio comes AFTER the visual event; "early" means audio comes BEFORE the visual event; "none" if synced is true.
- offset_sec: estimated time gap in seconds. 0.0 if synced.
- t_v: the timestamp (in seconds) the model attributes to the VISUAL event. null if not mentioned.
- t_a: the timestamp (in seconds) the model attributes to the AUDIO event. null if not mentioned.
- If you cannot determine a field, use the default (true / "none" / 0.0 / null / "").
)";

}  // namespace

std::string_view mute_inference() { return kMuteInference; }
std::string_view swap_inference() { return kSwapInference; }
std::string_view shift_inference() { return kShiftInference; }
std::string_view mute_judge_system() { return kMuteJudgeSystem; }
std::string_view swap_judge_system() { return kSwapJudgeSystem; }
std::string_view shift_judge_system() { return kShiftJudgeSystem; }

std::string_view by_name(std::string_view name) {
    if (name == "mute_inference") return kMuteInference;
    if (name == "swap_inference") return kSwapInference;
    if (name == "shift_inference") return kShiftInference;
    if (name == "mute_judge_system") return kMuteJudgeSystem;
    if (name == "swap_judge_system") return kSwapJudgeSystem;
    if (name == "shift_judge_system") return kShiftJudgeSystem;
    throw Error("unknown prompt resource: " + std::string(name));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace avdiag::prompts
