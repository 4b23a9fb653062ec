#include "avdiag/eval/stubs.hpp"

#include <cstdio>

#include "avdiag/errors.hpp"
#include "avdiag/prompts.hpp"

namespace avdiag::eval {

const char* to_string(StubBehavior b) {
    switch (b) {
        case StubBehavior::synced_prior: return "synced_prior";
        case StubBehavior::oracle: return "oracle";
        case StubBehavior::hallucinator: return "hallucinator";
        case StubBehavior::dodger: return "dodger";
    }
    return "?";
}

StubBehavior stub_behavior_from_string(const std::string& s) {
    if (s == "synced_prior") return StubBehavior::synced_prior;
    if (s == "oracle") return StubBehavior::oracle;
    if (s == "hallucinator") return StubBehavior::hallucinator;
    if (s == "dodger") return StubBehavior::dodger;
    throw Error("unknown stub behavior: " + s);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

judge::Task task_of_prompt(const std::string& prompt) {
    if (prompt == prompts::mute_inference()) return judge::Task::mute;
    if (prompt == prompts::swap_inference()) return judge::Task::swap;
    return judge::Task::shift;
}

class StubBackend final : public ModelBackend {
public:
    StubBackend(StubBehavior behavior, LabelMap labels)
        : behavior_(behavior), labels_(std::move(labels)) {}

    std::string id() const override { return std::string("stub:") + to_string(behavior_); }
    bool accepts_video_audio() const override { return true; }

    std::string query(const ManifestEntry& entry, const std::string& prompt) override {
        const annot::EventTimeLabel& label = label_for(entry.clip_id);
        const std::string e_v = label.visual_event.value_or("event");
        const std::string e_a = label.audio_event.value_or("sound");
        const judge::Task task = task_of_prompt(prompt);
        const intervene::GroundTruth& gt = entry.ground_truth;

        switch (behavior_) {
            case StubBehavior::dodger:
                return "The video shows " + e_v + ".";

            case StubBehavior::synced_prior:
                if (task == judge::Task::mute)
                    return "The audio is synchronized with the video; a " + e_a +
                           " can be heard as the " + e_v + " occurs.";
                if (task == judge::Task::swap)
                    return "The audio matches the video; a " + e_a + " accompanies the " +
                           e_v + " as expected.";
                return "The audio and video tracks are synchronized; the " + e_a +
                       " lines up with the " + e_v + ".";

            case StubBehavior::hallucinator:
                // always narrates the sound the visuals suggest
                if (task == judge::Task::shift)
                    return "The " + e_a + " happens right when the " + e_v +
                           " occurs; everything lines up.";
                return "I can hear a " + e_a + " as the " + e_v + " occurs in the video.";

            case StubBehavior::oracle:
                return oracle_answer(entry, task, e_v, e_a, gt);
        }
        throw Error("unreachable");
    }

private:
    const annot::EventTimeLabel& label_for(const std::string& clip_id) const {
        auto it = labels_.find(clip_id);
        if (it == labels_.end()) throw Error("stub has no label for clip " + clip_id);
        return it->second;
    }

    std::string oracle_answer(const ManifestEntry& entry, judge::Task task,
                              const std::string& e_v, const std::string& e_a,
                              const intervene::GroundTruth& gt) const {
        switch (gt.condition) {
            case intervene::Condition::desynced: {
                const bool delayed = *gt.direction == intervene::Direction::delayed;
                return std::string("The audio and video tracks are not synchronized. The ") +
                       e_a + " is " + (delayed ? "delayed" : "early") + " by about " +
                       fmt(*gt.offset_s) + "s relative to the " + e_v +
                       "; the visual event occurs at ~" + fmt(gt.visual_time_s) +
                       "s and the sound is heard at ~" + fmt(*gt.audio_time_s) + "s.";
            }
            case intervene::Condition::silent:
                return "The audio track is silent throughout the clip; nothing is audible.";
            case intervene::Condition::mismatched: {
                const std::string donor_ea = donor_audio_event(entry);
                return "The visuals show " + e_v + ", but the audio contains " + donor_ea +
                       ", indicating an audio-source mismatch.";
            }
            case intervene::Condition::synced:
                if (task == judge::Task::mute)
                    return "The audio contains a " + e_a + " heard at ~" +
                           fmt(gt.audio_time_s.value_or(gt.visual_time_s)) +
                           "s, matching the " + e_v + " in the video.";
                if (task == judge::Task::swap)
                    return "The audio matches the visuals: a " + e_a +
                           " is heard as the " + e_v + " occurs.";
                return "The audio and video tracks are synchronized; the " + e_a +
                       " lines up with the " + e_v + " at ~" + fmt(gt.visual_time_s) + "s.";
        }
        throw Error("unreachable");
    }

    std::string donor_audio_event(const ManifestEntry& entry) const {
        if (const auto* swap = std::get_if<intervene::Swap>(&entry.kind)) {
            auto it = labels_.find(swap->source_clip_id);
            if (it != labels_.end() && it->second.audio_event)
                return *it->second.audio_event;
        }
        return "an unrelated sound";
    }

    StubBehavior behavior_;
    LabelMap labels_;
};

}  // namespace

std::unique_ptr<ModelBackend> make_stub(StubBehavior behavior, LabelMap labels) {
    return std::make_unique<StubBackend>(behavior, std::move(labels));
}

}  // namespace avdiag::eval
