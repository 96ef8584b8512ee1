#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pm25/analytics.hpp"
#include "pm25/correction.hpp"
#include "pm25/export.hpp"
#include "pm25/forecast/trainer.hpp"
#include "pm25/ingest.hpp"
#include "pm25/kv_file.hpp"

namespace pm25::cli {

struct SiteConfig {
    std::string label;
    std::vector<std::filesystem::path> inputs;
};

/// Everything one run needs, read from a single key-value config file.
/// Relative paths in the file resolve against the file's directory.
///
/// Keys:
///   out_dir, format (csv|json), seed, utc_offset_hours, schema (schema file)
///   site.<label>.inputs            comma-separated CSV paths
///   correction.cf, correction.density, correction.diameter (geometric|midpoint),
///   correction.edges               four bin edges in um
///   qc.max_pm25, qc.max_count, qc.require_monotone
///   agg.hour_completeness, agg.day_completeness, agg.std (sample|population),
///   agg.guideline
///   train.cell (lstm|rnn), train.window, train.hidden, train.epochs,
///   train.batch_size, train.learning_rate, train.split, train.clip_norm
struct RunConfig {
    std::vector<SiteConfig> sites;  // sorted by label
    CsvSchema schema = CsvSchema::purpleair();
    CorrectionParams correction = CorrectionParams::standard();
    QcConfig qc;
    AggConfig agg;
    double guideline = kWhoDailyGuideline;
    forecast::TrainConfig train;
    std::filesystem::path out_dir = "pm25_out";
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 42;
    int utc_offset_hours = 2;

    /// Throws ConfigError on an unknown key, a malformed value or a site
    /// without inputs.
    static RunConfig from_kv(const KeyValueFile& kv, const std::filesystem::path& base_dir);
    static RunConfig load(const std::filesystem::path& path);

    const SiteConfig* find_site(std::string_view label) const;
    /// Directory holding one site's store and outputs.
    std::filesystem::path site_dir(std::string_view label) const { return out_dir / std::string(label); }
    /// Applies a seed to everything seeded.
    void set_seed(std::uint64_t s);
};

}  // namespace pm25::cli
