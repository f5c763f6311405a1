#pragma once

#include <filesystem>

#include "json.hpp"

#include "firefront/estimation.hpp"
#include "firefront/solver.hpp"

namespace firefront {

// Writes out_dir/fronts/front_NNNN.asc (sign rasters), fronts/times.csv
// (index,time,filename) and out_dir/contours/contour_NNNN.csv polylines.
void write_run_artifacts(const std::filesystem::path& out_dir, const FrontSeries& series);

// Loads a directory written by write_run_artifacts (or hand-prepared in
// the same layout: times.csv + rasters). Values > 0 read as burnt; the
// result holds +1/-1 rasters. The grid must match `expected`.
FrontSeries load_measured_series(const std::filesystem::path& dir, const GridSpec& expected);

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

nlohmann::json estimation_report_json(const EstimationReport& report);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace firefront
