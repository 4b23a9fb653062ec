#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include <json.hpp>

#include "avdiag/metrics/metrics.hpp"

namespace avdiag::metrics {

nlohmann::json report_to_json(const MetricsReport& report);

// Joins parsed-prediction rows with manifest ground truth. Duplicate
// (clip_id, model_id, task) rows keep their first occurrence. Returns
// samples grouped by model id, ordered by clip id within each model.
std::map<std::string, std::vector<EvalSample>> join_samples(
    const std::vector<nlohmann::json>& parsed_rows,
    const std::vector<intervene::InterventionRecord>& manifest);

// Flat CSV tables, one file per metric family, keyed by model.
void write_csv_tables(const std::filesystem::path& dir,
                      const std::map<std::string, MetricsReport>& by_model);

}  // namespace avdiag::metrics
