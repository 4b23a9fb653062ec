#include "avdiag/metrics/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "avdiag/errors.hpp"

namespace avdiag::metrics {

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json failures_to_json(const FailureRates& f) {
    return {
        {"mute_hallucination", opt_json(f.mute_hallucination)},
        {"swap_false_match", opt_json(f.swap_false_match)},
        {"false_silence", opt_json(f.false_silence)},
        {"swap_false_mismatch", opt_json(f.swap_false_mismatch)},
        {"audio_dodge", opt_json(f.audio_dodge)},
        {"offset_blindness", opt_json(f.offset_blindness)},
        {"direction_confusion", opt_json(f.direction_confusion)},
        {"false_sync_alarm", opt_json(f.false_sync_alarm)},
    };
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& report) {
    nlohmann::json out;
    for (const auto& [dim, pa] : report.paired)
        out["paired"][dim] = {{"orig", pa.orig}, {"interv", pa.interv}};
    out["avg_gap_points"] = opt_json(report.avg_gap_points);
    if (report.avg_gap_points)
        out["avg_gap_display"] = display_round(*report.avg_gap_points);
    out["failure_rates"] = failures_to_json(report.failures);
    out["prediction_breakdown"] = report.prediction_breakdown;
    out["band_accuracy"] = report.band_acc;
    out["sync_metrics"] = {
        {"binary_sync_acc", opt_json(report.sync.binary_sync_acc)},
        {"three_way_acc", opt_json(report.sync.three_way_acc)},
        {"direction_acc_on_desync", opt_json(report.sync.direction_acc_on_desync)},
    };
    out["localization_coverage"] = report.localization;
    for (const auto& [task, t] : report.tradeoff)
        out["tradeoff"][task] = {{"false_alarm_rate", t.false_alarm_rate},
                                 {"detection_rate", t.detection_rate},
                                 {"combined_accuracy", t.combined_accuracy}};
    out["combined_accuracy"] = report.combined;
    return out;
}

std::map<std::string, std::vector<EvalSample>> join_samples(
    const std::vector<nlohmann::json>& parsed_rows,
    const std::vector<intervene::InterventionRecord>& manifest) {
    std::map<std::string, const intervene::InterventionRecord*> by_id;
    for (const auto& rec : manifest) by_id[rec.id] = &rec;

    std::map<std::string, std::vector<EvalSample>> out;
    std::set<std::string> seen;
    for (const auto& row : parsed_rows) {
        const std::string clip_id = row.at("clip_id").get<std::string>();
        const std::string model_id = row.at("model_id").get<std::string>();
        const std::string task = row.at("task").get<std::string>();
        if (!seen.insert(clip_id + "\x1f" + model_id + "\x1f" + task).second) continue;

        auto it = by_id.find(clip_id);
        if (it == by_id.end())
            throw Error("parsed row references unknown manifest id " + clip_id);
        const intervene::InterventionRecord& rec = *it->second;

        EvalSample s;
        s.clip_id = clip_id;
        s.task = judge::task_from_string(task);
        s.gt_condition = rec.ground_truth.condition;
        s.gt_direction = rec.ground_truth.direction;
        s.gt_offset_s = rec.ground_truth.offset_s;
        s.band = rec.ground_truth.band;
        s.pred = judge::prediction_from_json(row);
        out[model_id].push_back(std::move(s));
    }
    for (auto& [model, samples] : out)
        std::sort(samples.begin(), samples.end(),
                  [](const EvalSample& a, const EvalSample& b) {
                      return a.clip_id < b.clip_id ||
                             (a.clip_id == b.clip_id && a.task < b.task);
                  });
    return out;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& dir, const char* name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
}

std::string cell(const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string("absent");
}

}  // namespace

void write_csv_tables(const std::filesystem::path& dir,
                      const std::map<std::string, MetricsReport>& by_model) {
    {
        auto out = open_csv(dir, "paired_accuracy.csv");
        out << "model,dimension,orig,interv\n";
        for (const auto& [model, report] : by_model)
            for (const auto& [dim, pa] : report.paired)
                out << model << ',' << dim << ',' << pa.orig << ',' << pa.interv << '\n';
    }
    {
        auto out = open_csv(dir, "avg_gap.csv");
        out << "model,avg_gap_points\n";
        for (const auto& [model, report] : by_model)
            out << model << ','
                << (report.avg_gap_points
                        ? std::to_string(display_round(*report.avg_gap_points))
                        : std::string("absent"))
                << '\n';
    }
    {
        auto out = open_csv(dir, "failure_rates.csv");
        out << "model,mute_hallucination,swap_false_match,false_silence,swap_false_mismatch,"
               "audio_dodge,offset_blindness,direction_confusion,false_sync_alarm\n";
        for (const auto& [model, report] : by_model) {
            const FailureRates& f = report.failures;
            out << model << ',' << cell(f.mute_hallucination) << ','
                << cell(f.swap_false_match) << ',' << cell(f.false_silence) << ','
                << cell(f.swap_false_mismatch) << ',' << cell(f.audio_dodge) << ','
                << cell(f.offset_blindness) << ',' << cell(f.direction_confusion) << ','
                << cell(f.false_sync_alarm) << '\n';
        }
    }
    {
        auto out = open_csv(dir, "band_accuracy.csv");
        out << "model,band,accuracy\n";
        for (const auto& [model, report] : by_model)
            for (const auto& [band, acc] : report.band_acc)
                out << model << ',' << band << ',' << acc << '\n';
    }
    {
        auto out = open_csv(dir, "sync_metrics.csv");
        out << "model,binary_sync_acc,three_way_acc,direction_acc_on_desync\n";
        for (const auto& [model, report] : by_model)
            out << model << ',' << cell(report.sync.binary_sync_acc) << ','
                << cell(report.sync.three_way_acc) << ','
                << cell(report.sync.direction_acc_on_desync) << '\n';
    }
    {
        auto out = open_csv(dir, "localization_coverage.csv");
        out << "model,tau_s,coverage\n";
        for (const auto& [model, report] : by_model)
            for (const auto& [tau, cov] : report.localization)
                out << model << ',' << tau << ',' << cov << '\n';
    }
    {
        auto out = open_csv(dir, "tradeoff.csv");
        out << "model,task,false_alarm_rate,detection_rate,combined_accuracy\n";
        for (const auto& [model, report] : by_model)
            for (const auto& [task, t] : report.tradeoff)
                out << model << ',' << task << ',' << t.false_alarm_rate << ','
                    << t.detection_rate << ',' << t.combined_accuracy << '\n';
    }
    {
        auto out = open_csv(dir, "prediction_breakdown.csv");
        out << "model,task,subset,prediction,count\n";
        for (const auto& [model, report] : by_model)
            for (const auto& [task, subsets] : report.prediction_breakdown)
                for (const auto& [subset, cats] : subsets)
                    for (const auto& [cat, count] : cats)
                        out << model << ',' << task << ',' << subset << ',' << cat << ','
                            << count << '\n';
    }
}

}  // namespace avdiag::metrics
