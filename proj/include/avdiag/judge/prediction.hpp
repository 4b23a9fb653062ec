#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace avdiag::judge {

enum class Task { shift, mute, swap };

const char* to_string(Task t);
Task task_from_string(const std::string& s);

// Judge output categories. Per-task enumerations:
//   shift: synced | delay | early
//   mute:  synced | delay | early | muted
//   swap:  synced | delay | early | mismatched
enum class Category { synced, delay, early, muted, mismatched };

const char* to_string(Category c);
Category category_from_string(const std::string& s);
bool category_allowed(Task task, Category c);

// How a mute-task response engaged with the audio question.
enum class Engagement { audio_described, visual_only, silence_claimed };

const char* to_string(Engagement e);
Engagement engagement_from_string(const std::string& s);

// A judge-normalized prediction. For shift, `synced`, `direction` (via
// prediction), `offset_s` and the optional event timestamps are populated;
// for mute/swap only the categorical prediction and (mute) engagement are
// meaningful.
//
// Normalization invariants, enforced by normalize():
//   synced == true  => prediction == synced, offset_s == 0
//   prediction != synced => synced == false
// On contradictory judge output the synced flag wins; a desync claim without
// a direction collapses to the synced default.
struct ParsedPrediction {
    Task task = Task::shift;
    Category prediction = Category::synced;
    bool synced = true;
    double offset_s = 0.0;
    std::optional<double> t_v;
    std::optional<double> t_a;
    std::string explanation;
    std::optional<Engagement> engagement;  // mute task only
    bool defaulted = false;  // true when the judge output was unusable

    bool is_desync_claim() const {
        return prediction == Category::delay || prediction == Category::early;
    }
};

ParsedPrediction normalize(ParsedPrediction p);

// Per-task default ("gives no clear answer, default to synced").
ParsedPrediction task_default(Task task);

// Parsed-prediction log rows (JSON-lines), keyed by clip and model.
nlohmann::json prediction_to_json(const std::string& clip_id, const std::string& model_id,
                                  const ParsedPrediction& p);
ParsedPrediction prediction_from_json(const nlohmann::json& row);

}  // namespace avdiag::judge
