#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "submod/pipeline.hpp"

namespace submod {

/// Writes violations.csv, daily_rates.csv, correlations.csv and summary.json
/// into `dir` (created if needed). Output depends only on the result, never
/// on wall-clock time or thread count.
void export_report(const PipelineResult& result, const std::filesystem::path& dir);

/// Summary document as written to summary.json.
std::string summary_json(const PipelineResult& result);

/// Reads back a violations.csv written by export_report.
std::vector<ViolationRecord> load_violations_csv(const std::filesystem::path& path);

}  // namespace submod
