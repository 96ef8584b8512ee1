#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pm25/kv_file.hpp"
#include "pm25/timeseries.hpp"

namespace pm25 {

/// Cumulative optical channels, particles per deciliter above each threshold.
enum class CountChannel : std::size_t { Gt0_3 = 0, Gt0_5, Gt1_0, Gt2_5, Gt5_0 };
inline constexpr std::size_t kCumulativeChannels = 5;

/// One row of a PurpleAir-style log.
struct RawRecord {
    Timestamp time;
    std::array<double, kCumulativeChannels> counts_gt{};
    std::optional<double> count_gt10;
    double pm25_cf1 = 0.0;
    std::optional<double> pm25_atm;
    std::optional<double> temperature_c;
    std::optional<double> humidity_pct;
    std::optional<double> pressure_hpa;

    double count(CountChannel c) const { return counts_gt[static_cast<std::size_t>(c)]; }

    friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

/// Per-bin particle counts (particles/dL): x in 0.3-0.5 um, y in 0.5-1.0 um,
/// z in 1.0-2.5 um.
struct SizeBinCounts {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const SizeBinCounts&, const SizeBinCounts&) = default;
};

struct BinDifference {
    SizeBinCounts bins;
    bool clamped = false;  // at least one adjacent channel pair was inverted
};

/// Differences cumulative channels into the three bins. Negative differences
/// clamp to zero and set `clamped`.
BinDifference difference_bins(const RawRecord& r);

/// True when every present cumulative channel is non-increasing in size.
bool counts_monotone(const RawRecord& r);

// ---------------------------------------------------------------------------
// CSV schema

enum class Field : std::size_t {
    Timestamp = 0,
    CountGt0_3,
    CountGt0_5,
    CountGt1_0,
    CountGt2_5,
    CountGt5_0,
    CountGt10_0,
    Pm25Cf1,
    Pm25Atm,
    Temperature,
    Humidity,
    Pressure,
};
inline constexpr std::size_t kFieldCount = 12;

/// Logical key used in schema files, e.g. "count_gt_0_3".
std::string_view field_key(Field f);
bool field_required(Field f);

enum class OpticalChannel { A, B };

/// Maps logical fields to header names so a vendor rename only needs a new
/// schema file.
struct CsvSchema {
    std::array<std::string, kFieldCount> columns;

    const std::string& column(Field f) const { return columns[static_cast<std::size_t>(f)]; }
    std::string& column(Field f) { return columns[static_cast<std::size_t>(f)]; }

    /// PurpleAir SD-card style names. Channel B reads the "_b" columns.
    static CsvSchema purpleair(OpticalChannel channel = OpticalChannel::A);
    /// Starts from purpleair(channel) and overrides any key present.
    /// The key "channel" (a|b) selects the base channel.
    static CsvSchema from_kv(const KeyValueFile& kv);
    KeyValueFile to_kv() const;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace row_reason {
inline constexpr std::string_view kUnparseable = "unparseable_field";
inline constexpr std::string_view kMissing = "missing_field";
inline constexpr std::string_view kColumnCount = "column_count";
inline constexpr std::string_view kBadTimestamp = "bad_timestamp";
inline constexpr std::string_view kNegativeCount = "negative_count";
}  // namespace row_reason

struct RowError {
    std::size_t line = 0;  // 1-based, header is line 1
    std::string reason;    // one of row_reason::*
    std::string detail;
};

struct ParseResult {
    std::vector<RawRecord> records;
    std::vector<RowError> errors;
    std::size_t rows = 0;  // non-blank data rows seen
};

/// Single-pass CSV parse. A bad row becomes a RowError and parsing continues.
/// Timestamps without a 'Z' suffix are local and shifted by the offset.
/// Throws SchemaError when the header lacks a required column.
ParseResult parse_csv(std::istream& in, const CsvSchema& schema, int local_utc_offset_hours = 2);

/// Splits one CSV line; double-quoted fields may contain commas and "".
std::vector<std::string> split_csv_line(std::string_view line);

// ---------------------------------------------------------------------------
// Quality control

struct QcConfig {
    double max_pm25 = 1000.0;
    double max_count = 1.0e6;
    bool require_monotone_counts = true;
    int local_utc_offset_hours = 2;

    /// Throws std::invalid_argument when a limit is not positive.
    void validate() const;
};

namespace qc_reason {
inline constexpr std::string_view kCountRange = "count_range";
inline constexpr std::string_view kPm25Range = "pm25_range";
inline constexpr std::string_view kNonMonotone = "non_monotone";
}  // namespace qc_reason

struct IngestReport {
    std::size_t accepted = 0;
    std::map<std::string, std::size_t, std::less<>> rejected_by_reason;
    std::optional<Timestamp> first;
    std::optional<Timestamp> last;

    std::size_t rejected() const;
    std::size_t total() const { return accepted + rejected(); }

    /// Folds CSV row errors into the rejection tally under their reason.
    void add_row_errors(std::span<const RowError> errors);
    /// Sums two reports; first/last widen.
    void merge(const IngestReport& other);
};

struct QcResult {
    std::vector<RawRecord> records;
    IngestReport report;
};

/// Rejects records over the count or PM2.5 limits, or with non-monotone
/// cumulative channels when configured. The first failing check names the
/// reason. Input order is preserved.
QcResult qc_filter(std::vector<RawRecord> records, const QcConfig& cfg);

/// A QC-passed record reduced to what correction and comparison need.
struct BinnedRecord {
    Timestamp time;
    SizeBinCounts bins;
    double pm25_cf1 = 0.0;
    bool clamped = false;
};

std::vector<BinnedRecord> to_binned(std::span<const RawRecord> records);

}  // namespace pm25
