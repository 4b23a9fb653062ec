#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "avdiag/metrics/metrics.hpp"

namespace avdiag::pipeline {

// Dependency-free SVG charts: plain rectangles, paths, and numeric labels,
// byte-stable for identical inputs.

// models x eight failure rates, absent cells hatched grey.
std::string render_failure_heatmap(const std::map<std::string, metrics::MetricsReport>& by_model);

// stacked prediction-category bars per model for the three intervention
// tasks (intervened subsets).
std::string render_breakdown_bars(const std::map<std::string, metrics::MetricsReport>& by_model);

// per-model accuracy over the shift difficulty bands.
std::string render_band_lines(const std::map<std::string, metrics::MetricsReport>& by_model);

// detection rate vs false alarm rate per model and task.
std::string render_tradeoff_scatter(const std::map<std::string, metrics::MetricsReport>& by_model);

void write_svg(const std::filesystem::path& path, const std::string& svg);

}  // namespace avdiag::pipeline
