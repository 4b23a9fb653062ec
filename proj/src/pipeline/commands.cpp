#include "avdiag/pipeline/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "avdiag/annot/agreement.hpp"
#include "avdiag/errors.hpp"
#include "avdiag/eval/stubs.hpp"
#include "avdiag/intervene/ops.hpp"
#include "avdiag/intervene/validate.hpp"
#include "avdiag/jsonl.hpp"
#include "avdiag/judge/judge.hpp"
#include "avdiag/media/muxer.hpp"
#include "avdiag/media/wav.hpp"
#include "avdiag/metrics/report_io.hpp"
#include "avdiag/pipeline/svg.hpp"
#include "avdiag/prefs/builders.hpp"
#include "avdiag/prefs/mixer.hpp"
#include "avdiag/prefs/templates.hpp"
#include "avdiag/rng.hpp"

namespace avdiag::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_file(const fs::path& path) {
    if (path.empty() || !fs::exists(path)) throw MissingPrerequisite(path.string());
}

fs::path resolve(const fs::path& root, const fs::path& ref) {
    return ref.is_absolute() ? ref : root / ref;
}

struct SourceClipRow {
    std::string id;
    std::string media_ref;
    double duration_s = 0.0;
};

std::vector<SourceClipRow> read_source_manifest(const fs::path& path) {
    std::vector<SourceClipRow> clips;
    for (const auto& row : jsonl::read_file(path)) {
        SourceClipRow c;
        c.id = row.at("id").get<std::string>();
        c.media_ref = row.at("media_ref").get<std::string>();
        c.duration_s = row.at("duration_s").get<double>();
        clips.push_back(std::move(c));
    }
    std::sort(clips.begin(), clips.end(),
              [](const SourceClipRow& a, const SourceClipRow& b) { return a.id < b.id; });
    return clips;
}

// retained verdicts only: clip id -> consensus label
std::map<std::string, annot::EventTimeLabel> read_retained_labels(const fs::path& path) {
    std::map<std::string, annot::EventTimeLabel> labels;
    for (const auto& row : jsonl::read_file(path)) {
        annot::VerificationVerdict v = annot::verdict_from_json(row);
        if (v.status == annot::VerdictStatus::retained && v.consensus)
            labels[v.clip_id] = *v.consensus;
    }
    return labels;
}

std::vector<intervene::InterventionRecord> read_manifest(const fs::path& path) {
    std::vector<intervene::InterventionRecord> records;
    for (const auto& row : jsonl::read_file(path))
        records.push_back(intervene::record_from_json(row));
    return records;
}

media::AudioTrack load_clip_audio(const PipelineConfig& config, const SourceClipRow& clip) {
    fs::path path = resolve(config.media_root, clip.media_ref);
    if (config.muxer_binary.empty() || path.extension() == ".wav")
        return media::read_wav_file(path);
    // containers go through the external muxer
    media::Muxer muxer(config.muxer_binary);
    const fs::path tmp = config.out_dir / "demux" / (clip.id + ".wav");
    fs::create_directories(tmp.parent_path());
    muxer.demux(path, tmp);
    return media::read_wav_file(tmp);
}

bool wants(const std::vector<std::string>& operators, const char* op) {
    return std::find(operators.begin(), operators.end(), op) != operators.end();
}

}  // namespace

std::vector<fs::path> cmd_intervene(const PipelineConfig& config) {
    const auto& c = config.intervene;
    require_file(c.source_manifest);
    require_file(c.verdicts);

    const auto clips = read_source_manifest(c.source_manifest);
    const auto labels = read_retained_labels(c.verdicts);
    const fs::path clips_dir = config.out_dir / "clips";
    const fs::path manifest_path = config.out_dir / "manifest.jsonl";

    if (config.dry_run) {
        int planned = 0;
        for (const auto& clip : clips)
            if (labels.count(clip.id))
                planned += 1 + static_cast<int>(c.operators.size());
        std::cout << "dry-run: would write up to " << planned << " rows to "
                  << manifest_path.string() << "\n";
        return {};
    }

    // donor pool for swap: retained clips sorted by id
    std::vector<const SourceClipRow*> retained;
    for (const auto& clip : clips)
        if (labels.count(clip.id)) retained.push_back(&clip);

    std::mutex log_mu;
    std::vector<std::vector<intervene::InterventionRecord>> per_clip(retained.size());
    std::atomic<std::size_t> next{0};

    auto skip_log = [&](const std::string& id, const std::string& why) {
        std::lock_guard lock(log_mu);
        std::cerr << "skip " << id << ": " << why << "\n";
    };

    auto process = [&](std::size_t index) {
        const SourceClipRow& clip = *retained[index];
        const annot::EventTimeLabel& label = labels.at(clip.id);
        const std::uint64_t seed = derive_seed(config.seed, clip.id);
        Rng rng(seed);

        media::AudioTrack audio = load_clip_audio(config, clip);
        media::SourceClip source =
            media::make_source_clip(clip.id, clip.media_ref, clip.duration_s, audio);

        auto emit = [&](const char* suffix, intervene::InterventionKind kind,
                        intervene::GroundTruth gt, const media::AudioTrack& track) {
            intervene::InterventionRecord rec;
            rec.id = clip.id + "__" + suffix;
            rec.clip_id = clip.id;
            rec.kind = std::move(kind);
            rec.ground_truth = std::move(gt);
            rec.output_ref = "clips/" + rec.id + ".wav";
            rec.seed = seed;
            intervene::validate_record(rec);
            media::write_wav_file(config.out_dir / rec.output_ref, track);
            per_clip[index].push_back(std::move(rec));
        };

        intervene::GroundTruth orig_gt;
        orig_gt.condition = intervene::Condition::synced;
        orig_gt.visual_time_s = label.visual_time_s.value_or(0.0);
        orig_gt.audio_time_s = label.audio_time_s;
        emit("orig", intervene::Original{}, orig_gt, audio);

        if (wants(c.operators, "shift")) {
            double offset;
            if (!c.fixed_offsets_s.empty()) {
                offset = c.fixed_offsets_s[static_cast<std::size_t>(
                    rng.bounded(c.fixed_offsets_s.size()))];
            } else {
                offset = intervene::sample_shift_offset(rng.next_u64(), c.delta_max_s,
                                                        c.delta_min_s);
            }
            // quantize to frames, keeping the magnitude inside [min, max]
            double q = intervene::quantize_offset(offset, audio.sample_rate());
            const double sign = q < 0 ? -1.0 : 1.0;
            double mag = std::min(std::abs(q), c.delta_max_s);
            mag = std::max(mag, c.delta_min_s);
            q = sign * intervene::quantize_offset(mag, audio.sample_rate());

            const auto validation = intervene::validate_intervention(
                source, label, intervene::Shift{q}, {}, c.ambiguity_window_s);
            if (!validation.accepted) {
                skip_log(clip.id + "__shift", validation.reason);
            } else {
                intervene::GroundTruth gt;
                gt.condition = intervene::Condition::desynced;
                gt.direction = q > 0 ? intervene::Direction::delayed
                                     : intervene::Direction::early;
                gt.offset_s = std::abs(q);
                gt.visual_time_s = label.visual_time_s.value_or(0.0);
                gt.audio_time_s = label.audio_time_s.value_or(0.0) + q;
                gt.band = intervene::band_of(q, c.band_edges);
                emit("shift", intervene::Shift{q}, gt, intervene::apply_shift(audio, q));
            }
        }

        if (wants(c.operators, "mute")) {
            intervene::GroundTruth gt;
            gt.condition = intervene::Condition::silent;
            gt.visual_time_s = label.visual_time_s.value_or(0.0);
            emit("mute", intervene::Mute{}, gt, intervene::apply_mute(audio));
        }

        if (wants(c.operators, "swap")) {
            // donors: other retained clips with a different audio-event text
            std::vector<const SourceClipRow*> donors;
            for (const auto* other : retained) {
                if (other->id == clip.id) continue;
                const auto& other_label = labels.at(other->id);
                if (other_label.audio_event && label.audio_event &&
                    *other_label.audio_event == *label.audio_event)
                    continue;
                donors.push_back(other);
            }
            if (donors.empty()) {
                skip_log(clip.id + "__swap", "no donor with a different audio event");
            } else {
                const SourceClipRow& donor_row =
                    *donors[static_cast<std::size_t>(rng.bounded(donors.size()))];
                const auto& donor_label = labels.at(donor_row.id);
                const auto validation = intervene::validate_intervention(
                    source, label, intervene::Swap{donor_row.id}, donor_label,
                    c.ambiguity_window_s);
                if (!validation.accepted) {
                    skip_log(clip.id + "__swap", validation.reason);
                } else {
                    media::AudioTrack donor_audio = load_clip_audio(config, donor_row);
                    media::SourceClip donor = media::make_source_clip(
                        donor_row.id, donor_row.media_ref, donor_row.duration_s,
                        std::move(donor_audio));
                    intervene::GroundTruth gt;
                    gt.condition = intervene::Condition::mismatched;
                    gt.visual_time_s = label.visual_time_s.value_or(0.0);
                    if (donor_label.audio_time_s &&
                        *donor_label.audio_time_s <= clip.duration_s)
                        gt.audio_time_s = donor_label.audio_time_s;
                    emit("swap", intervene::Swap{donor_row.id}, gt,
                         intervene::apply_swap(source, donor));
                }
            }
        }
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= retained.size()) return;
            try {
                process(i);
            } catch (const std::exception& e) {
                skip_log(retained[i]->id, e.what());
            }
        }
    };

    fs::create_directories(clips_dir);
    const int threads = std::max(1, std::min<int>(config.parallelism,
                                                  static_cast<int>(retained.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<intervene::InterventionRecord> records;
    for (auto& group : per_clip)
        for (auto& rec : group) records.push_back(std::move(rec));
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });

    std::vector<json> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) rows.push_back(intervene::record_to_json(rec));
    jsonl::write_file(manifest_path, rows);
    return {manifest_path};
}

std::vector<fs::path> cmd_verify(const PipelineConfig& config) {
    const auto& c = config.verify;
    require_file(c.annotations);

    std::map<std::string, std::vector<annot::EventTimeLabel>> by_clip;
    for (const auto& row : jsonl::read_file(c.annotations)) {
        annot::EventTimeLabel label = annot::label_from_json(row);
        annot::validate_label(label);
        by_clip[label.clip_id].push_back(std::move(label));
    }

    const auto sets =
        annot::AnnotatorSets::make(c.visual_annotators, c.audio_annotators,
                                   c.reference_annotator);

    std::vector<json> verdict_rows;
    std::vector<json> review_rows;
    for (const auto& [clip_id, labels] : by_clip) {
        annot::VerificationVerdict verdict;
        try {
            verdict = annot::check_agreement(labels, sets, c.eps_v_s, c.eps_a_s);
        } catch (const MissingAnnotator& e) {
            verdict.clip_id = clip_id;
            verdict.status = annot::VerdictStatus::manual_review;
            verdict.reasons = {std::string("missing-annotator: ") + e.what()};
        }
        const annot::EventTimeLabel* flag_source = nullptr;
        if (verdict.consensus) {
            flag_source = &*verdict.consensus;
        } else {
            for (const auto& l : labels)
                if (l.annotator_id == sets.reference) flag_source = &l;
            if (!flag_source) flag_source = &labels.front();
        }
        verdict = annot::apply_retention_filters(std::move(verdict), *flag_source);
        verdict_rows.push_back(annot::verdict_to_json(verdict));

        if (verdict.status == annot::VerdictStatus::manual_review) {
            // queue rows mirror the annotation store format plus reasons
            for (const auto& l : labels) {
                json row = annot::label_to_json(l);
                row["reasons"] = verdict.reasons;
                review_rows.push_back(std::move(row));
            }
        }
    }

    const fs::path verdicts_path = config.out_dir / "verdicts.jsonl";
    const fs::path review_path = config.out_dir / "manual_review.jsonl";
    if (config.dry_run) {
        std::cout << "dry-run: would write " << verdict_rows.size() << " verdicts to "
                  << verdicts_path.string() << "\n";
        return {};
    }
    jsonl::write_file(verdicts_path, verdict_rows);
    jsonl::write_file(review_path, review_rows);
    return {verdicts_path, review_path};
}

namespace {

std::string reference_text_for(const intervene::InterventionRecord& rec,
                               const annot::EventTimeLabel& label,
                               const std::map<std::string, annot::EventTimeLabel>& labels) {
    const std::string e_v = label.visual_event.value_or("event");
    const std::string e_a = label.audio_event.value_or("sound");
    const double t_v = label.visual_time_s.value_or(0.0);
    const double t_a = label.audio_time_s.value_or(0.0);
    const auto& gt = rec.ground_truth;
    switch (gt.condition) {
        case intervene::Condition::synced:
            return prefs::synced_description(e_v, t_v, e_a, t_a);
        case intervene::Condition::desynced:
            return prefs::shifted_description(e_v, t_v, e_a, gt.audio_time_s.value_or(t_a),
                                              *gt.direction, *gt.offset_s);
        case intervene::Condition::silent:
            return prefs::mute_chosen();
        case intervene::Condition::mismatched: {
            std::string donor_ea = "an unrelated sound";
            if (const auto* swap = std::get_if<intervene::Swap>(&rec.kind)) {
                auto it = labels.find(swap->source_clip_id);
                if (it != labels.end() && it->second.audio_event)
                    donor_ea = *it->second.audio_event;
            }
            return prefs::swap_chosen(e_v, donor_ea);
        }
    }
    throw Error("unreachable");
}

std::optional<intervene::Condition> expected_condition(const prefs::PreferencePair& pair,
                                                       const intervene::Condition gt) {
    if (pair.task == prefs::PairTask::general) return std::nullopt;
    if (pair.recipe == prefs::Recipe::sp) return std::nullopt;  // chosen may be free-form
    return gt;
}

}  // namespace

std::vector<fs::path> cmd_build_prefs(const PipelineConfig& config) {
    const auto& c = config.build_prefs;
    require_file(c.manifest);
    require_file(c.verdicts);

    const auto records = read_manifest(c.manifest);
    const auto labels = read_retained_labels(c.verdicts);

    std::map<std::string, const intervene::InterventionRecord*> originals, shifts;
    std::map<std::string, const intervene::InterventionRecord*> by_id;
    for (const auto& rec : records) {
        by_id[rec.id] = &rec;
        if (std::holds_alternative<intervene::Original>(rec.kind))
            originals[rec.clip_id] = &rec;
        if (std::holds_alternative<intervene::Shift>(rec.kind)) shifts[rec.clip_id] = &rec;
    }

    std::map<prefs::Recipe, std::vector<prefs::PreferencePair>> pools;
    auto add = [&](prefs::PreferencePair pair, intervene::Condition gt) {
        prefs::verify_pair(pair, expected_condition(pair, gt));
        pools[pair.recipe].push_back(std::move(pair));
    };

    // intervention-derived pools, built per record in parallel; ordering is
    // irrelevant because mix_recipes sorts pools by pair id before sampling.
    // Per-record failures are skipped and logged.
    std::vector<std::vector<std::pair<prefs::PreferencePair, intervene::Condition>>>
        built(records.size());
    {
        std::atomic<std::size_t> next{0};
        std::mutex log_mu;
        auto worker = [&] {
            std::vector<std::string> other_visual, other_audio;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= records.size()) return;
                const auto& rec = records[i];
                auto label_it = labels.find(rec.clip_id);
                if (label_it == labels.end()) continue;  // unretained clip: no pairs
                const annot::EventTimeLabel& label = label_it->second;
                try {
                    if (std::holds_alternative<intervene::Shift>(rec.kind)) {
                        auto orig_it = originals.find(rec.clip_id);
                        if (orig_it != originals.end()) {
                            auto [a, b] = prefs::build_ctp_pairs(*orig_it->second, rec, label);
                            built[i].emplace_back(std::move(a), intervene::Condition::synced);
                            built[i].emplace_back(std::move(b),
                                                  intervene::Condition::desynced);
                        }
                    } else if (std::holds_alternative<intervene::Mute>(rec.kind)) {
                        built[i].emplace_back(prefs::build_mute_pair(rec, label),
                                              intervene::Condition::silent);
                    } else if (const auto* swap = std::get_if<intervene::Swap>(&rec.kind)) {
                        auto donor_it = labels.find(swap->source_clip_id);
                        std::optional<annot::EventTimeLabel> donor_label;
                        if (donor_it != labels.end()) donor_label = donor_it->second;
                        built[i].emplace_back(prefs::build_swap_pair(rec, label, donor_label),
                                              intervene::Condition::mismatched);
                    } else {
                        // original: OP pair, perturbing against other clips' events
                        other_visual.clear();
                        other_audio.clear();
                        for (const auto& [other_id, other_label] : labels) {
                            if (other_id == rec.clip_id) continue;
                            if (other_label.visual_event &&
                                other_label.visual_event != label.visual_event)
                                other_visual.push_back(*other_label.visual_event);
                            if (other_label.audio_event &&
                                other_label.audio_event != label.audio_event)
                                other_audio.push_back(*other_label.audio_event);
                        }
                        built[i].emplace_back(
                            prefs::build_op_pair(
                                rec.output_ref, label,
                                derive_seed(config.seed, "op:" + rec.clip_id), other_visual,
                                other_audio),
                            intervene::Condition::synced);
                    }
                } catch (const std::exception& e) {
                    std::lock_guard lock(log_mu);
                    std::cerr << "skip pair for " << rec.id << ": " << e.what() << "\n";
                }
            }
        };
        const int threads = std::max(1, std::min<int>(config.parallelism,
                                                      static_cast<int>(records.size())));
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
    for (auto& group : built)
        for (auto& [pair, gt] : group) add(std::move(pair), gt);

    // SP pool from a previous eval + judge run
    if (!c.sp_parsed.empty()) {
        require_file(c.sp_parsed);
        require_file(c.sp_responses);
        std::map<std::string, std::string> raw_by_key;
        for (const auto& row : jsonl::read_file(c.sp_responses))
            raw_by_key[row.at("clip_id").get<std::string>() + "\x1f" +
                       row.at("task").get<std::string>()] =
                row.value("raw_text", std::string{});
        for (const auto& row : jsonl::read_file(c.sp_parsed)) {
            const std::string clip_id = row.at("clip_id").get<std::string>();
            auto rec_it = by_id.find(clip_id);
            if (rec_it == by_id.end()) continue;
            auto label_it = labels.find(rec_it->second->clip_id);
            if (label_it == labels.end()) continue;
            const judge::ParsedPrediction parsed = judge::prediction_from_json(row);
            const std::string raw =
                raw_by_key[clip_id + "\x1f" + judge::to_string(parsed.task)];
            if (raw.empty()) continue;
            auto pair = prefs::build_sp_pair(
                reference_text_for(*rec_it->second, label_it->second, labels), parsed, raw,
                *rec_it->second);
            if (pair) add(std::move(*pair), rec_it->second->ground_truth.condition);
        }
    }

    // general-video pools from instruction files
    for (const auto& [recipe_tag, file] : c.instruction_files) {
        require_file(file);
        const prefs::Recipe recipe = prefs::recipe_from_string(recipe_tag);
        std::vector<prefs::InstructionRecord> instr;
        for (const auto& row : jsonl::read_file(file))
            instr.push_back(prefs::instruction_from_json(row));
        if ((recipe == prefs::Recipe::fv_avqa || recipe == prefs::Recipe::fv_avqa_l) &&
            !c.avqa_filter.empty()) {
            require_file(c.avqa_filter);
            std::vector<std::pair<std::string, bool>> verdicts;
            for (const auto& row : jsonl::read_file(c.avqa_filter))
                verdicts.emplace_back(row.at("record_id").get<std::string>(),
                                      row.at("text_only_correct").get<bool>());
            instr = prefs::filter_avqa(instr, verdicts);
        }
        for (auto& pair : prefs::build_instruction_pairs(instr, recipe, config.seed)) {
            prefs::verify_pair(pair, std::nullopt);
            pools[recipe].push_back(std::move(pair));
        }
    }

    prefs::RecipeMix mix;
    mix.seed = config.seed;
    if (c.mix.empty()) {
        for (const auto& [recipe, pool] : pools)
            if (!pool.empty())
                mix.components.emplace_back(recipe, static_cast<int>(pool.size()));
    } else {
        for (const auto& [tag, count] : c.mix)
            mix.components.emplace_back(prefs::recipe_from_string(tag), count);
    }

    const auto dataset = prefs::mix_recipes(pools, mix);
    const fs::path pairs_path = config.out_dir / "pairs.jsonl";
    const fs::path dpo_path = config.out_dir / "dpo.jsonl";
    const fs::path sft_path = config.out_dir / "sft.jsonl";
    if (config.dry_run) {
        std::cout << "dry-run: would write " << dataset.size() << " pairs to "
                  << pairs_path.string() << "\n";
        return {};
    }
    prefs::write_pair_file(dataset, pairs_path);
    prefs::emit_training_files(dataset, prefs::TrainingFormat::dpo, dpo_path);
    prefs::emit_training_files(dataset, prefs::TrainingFormat::sft, sft_path);
    return {pairs_path, dpo_path, sft_path};
}

namespace {

std::string sanitize(const std::string& id) {
    std::string out = id;
    for (char& ch : out)
        if (ch == ':' || ch == '/' || ch == ' ') ch = '_';
    return out;
}

intervene::Condition intervened_condition(judge::Task task) {
    switch (task) {
        case judge::Task::shift: return intervene::Condition::desynced;
        case judge::Task::mute: return intervene::Condition::silent;
        case judge::Task::swap: return intervene::Condition::mismatched;
    }
    throw Error("bad task");
}

}  // namespace

std::vector<fs::path> cmd_run_eval(const PipelineConfig& config) {
    const auto& c = config.run_eval;
    require_file(c.manifest);

    const auto records = read_manifest(c.manifest);

    std::unique_ptr<eval::ModelBackend> backend;
    if (c.backend.rfind("stub:", 0) == 0) {
        require_file(c.verdicts);
        eval::LabelMap labels = read_retained_labels(c.verdicts);
        backend = eval::make_stub(eval::stub_behavior_from_string(c.backend.substr(5)),
                                  std::move(labels));
    } else if (c.backend == "http") {
        if (!c.endpoint) throw Error("run_eval.backend=http needs an endpoint config");
        eval::EndpointConfig endpoint = *c.endpoint;
        if (endpoint.media_root.empty()) endpoint.media_root = config.out_dir.string();
        backend = eval::make_http_backend(std::move(endpoint));
    } else {
        throw Error("unknown backend: " + c.backend);
    }

    std::vector<eval::ResponseRecord> all;
    for (const auto& task_name : c.tasks) {
        const judge::Task task = judge::task_from_string(task_name);
        std::vector<eval::ManifestEntry> entries;
        for (const auto& rec : records) {
            const intervene::Condition cond = rec.ground_truth.condition;
            if (cond == intervene::Condition::synced || cond == intervened_condition(task))
                entries.push_back(rec);
        }
        if (config.dry_run) {
            std::cout << "dry-run: task " << task_name << " would query "
                      << entries.size() << " entries\n";
            continue;
        }
        auto results =
            eval::run_eval(entries, *backend, task, config.parallelism, c.retry);
        all.insert(all.end(), std::make_move_iterator(results.begin()),
                   std::make_move_iterator(results.end()));
    }
    if (config.dry_run) return {};

    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::pair(judge::to_string(a.task), a.clip_id) <
               std::pair(judge::to_string(b.task), b.clip_id);
    });
    std::vector<json> rows;
    rows.reserve(all.size());
    for (const auto& rec : all) rows.push_back(eval::response_to_json(rec));
    const fs::path out = config.out_dir / ("responses_" + sanitize(backend->id()) + ".jsonl");
    jsonl::write_file(out, rows);
    return {out};
}

std::vector<fs::path> cmd_judge(const PipelineConfig& config) {
    const auto& c = config.judge;
    require_file(c.responses);

    std::unique_ptr<judge::JudgeBackend> backend;
    if (c.backend == "rules") {
        backend = judge::make_rules_judge();
    } else if (c.backend == "llm") {
        if (!c.endpoint) throw Error("judge.backend=llm needs an endpoint config");
        const eval::EndpointConfig endpoint = *c.endpoint;
        backend = judge::make_llm_judge(
            endpoint.id, [endpoint](const std::string& system, const std::string& user) {
                return eval::http_complete(endpoint, system, user);
            });
    } else {
        throw Error("unknown judge backend: " + c.backend);
    }

    std::vector<json> rows;
    for (const auto& row : jsonl::read_file(c.responses)) {
        const eval::ResponseRecord rec = eval::response_from_json(row);
        const std::string raw = rec.error ? std::string{} : rec.raw_text;
        judge::ParsedPrediction parsed = judge::judge_parse(rec.task, raw, *backend);
        rows.push_back(judge::prediction_to_json(rec.clip_id, rec.model_id, parsed));
    }

    std::string stem = c.responses.stem().string();
    if (stem.rfind("responses_", 0) == 0) stem = stem.substr(10);
    const fs::path out = config.out_dir / ("parsed_" + stem + ".jsonl");
    if (config.dry_run) {
        std::cout << "dry-run: would write " << rows.size() << " parsed rows to "
                  << out.string() << "\n";
        return {};
    }
    jsonl::write_file(out, rows);
    return {out};
}

std::vector<fs::path> cmd_report(const PipelineConfig& config) {
    const auto& c = config.report;
    require_file(c.manifest);
    if (c.parsed_logs.empty()) throw Error("report needs at least one parsed log");

    const auto manifest = read_manifest(c.manifest);
    std::vector<json> parsed_rows;
    for (const auto& log : c.parsed_logs) {
        require_file(log);
        auto rows = jsonl::read_file(log);
        parsed_rows.insert(parsed_rows.end(), std::make_move_iterator(rows.begin()),
                           std::make_move_iterator(rows.end()));
    }

    const auto by_model = metrics::join_samples(parsed_rows, manifest);
    std::map<std::string, metrics::MetricsReport> reports;
    json report_json;
    for (const auto& [model, samples] : by_model) {
        metrics::MetricsReport report =
            metrics::compute_report(samples, c.localization_taus);
        report_json[model] = metrics::report_to_json(report);
        reports[model] = std::move(report);
    }

    const fs::path report_path = config.out_dir / "report.json";
    if (config.dry_run) {
        std::cout << "dry-run: would write report for " << reports.size() << " models to "
                  << report_path.string() << "\n";
        return {};
    }
    fs::create_directories(config.out_dir);
    {
        std::ofstream out(report_path, std::ios::trunc);
        if (!out) throw Error("cannot write " + report_path.string());
        out << report_json.dump(2) << "\n";
    }
    metrics::write_csv_tables(config.out_dir / "csv", reports);
    write_svg(config.out_dir / "svg" / "failure_heatmap.svg",
              render_failure_heatmap(reports));
    write_svg(config.out_dir / "svg" / "prediction_breakdown.svg",
              render_breakdown_bars(reports));
    write_svg(config.out_dir / "svg" / "band_accuracy.svg", render_band_lines(reports));
    write_svg(config.out_dir / "svg" / "tradeoff.svg", render_tradeoff_scatter(reports));
    return {report_path, config.out_dir / "csv", config.out_dir / "svg"};
}

}  // namespace avdiag::pipeline
