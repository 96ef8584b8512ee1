#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "pm25/synth.hpp"
#include "pm25cli/run_config.hpp"

namespace pm25::cli {

/// Messages a command produced, printed after all sites finish so output
/// order never depends on scheduling.
struct Log {
    std::ostream& out;
    std::ostream& err;
};

/// Parses, QC-filters and stores every site's inputs (or one site's).
/// Writes <site>/records.store.csv and <site>/ingest_report.json.
int cmd_ingest(const RunConfig& cfg, const std::optional<std::string>& site, Log log);

/// Per site: hourly.<ext>, daily.<ext>, diurnal.<ext>, seasonal.<ext>,
/// monthly.<ext>, summary.<ext>; plus correlation.<ext> over daily means
/// when there are at least two sites.
int cmd_analyze(const RunConfig& cfg, Log log);

/// Trains on the hourly ALT-CF3 series and writes model.txt,
/// eval_report.<ext> and forecast_trace.<ext>.
int cmd_forecast(const RunConfig& cfg, const std::optional<std::string>& site, Log log);

struct SynthRequest {
    synth::SiteProfile profile;
    Timestamp start;
    Timestamp end;
    std::filesystem::path out;
};

int cmd_synth(const SynthRequest& req, const CsvSchema& schema, Log log);

}  // namespace pm25::cli
