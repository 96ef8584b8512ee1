#include "pm25/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace pm25 {

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldKeys = {
    "timestamp",     "count_gt_0_3", "count_gt_0_5", "count_gt_1_0",
    "count_gt_2_5",  "count_gt_5_0", "count_gt_10_0", "pm25_cf1",
    "pm25_atm",      "temperature",  "humidity",      "pressure",
};

constexpr std::array<bool, kFieldCount> kFieldRequired = {
    true, true, true, true, true, true, false, true, false, false, false, false,
};

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

BinDifference difference_bins(const RawRecord& r) {
    BinDifference out;
    auto diff = [&](CountChannel lo, CountChannel hi) {
        const double d = r.count(lo) - r.count(hi);
        if (d < 0.0) {
            out.clamped = true;
            return 0.0;
        }
        return d;
    };
    out.bins.x = diff(CountChannel::Gt0_3, CountChannel::Gt0_5);
    out.bins.y = diff(CountChannel::Gt0_5, CountChannel::Gt1_0);
    out.bins.z = diff(CountChannel::Gt1_0, CountChannel::Gt2_5);
    return out;
}

bool counts_monotone(const RawRecord& r) {
    for (std::size_t i = 1; i < kCumulativeChannels; ++i) {
        if (r.counts_gt[i] > r.counts_gt[i - 1]) return false;
    }
    if (r.count_gt10 && *r.count_gt10 > r.counts_gt.back()) return false;
    return true;
}

std::string_view field_key(Field f) { return kFieldKeys[static_cast<std::size_t>(f)]; }
bool field_required(Field f) { return kFieldRequired[static_cast<std::size_t>(f)]; }

CsvSchema CsvSchema::purpleair(OpticalChannel channel) {
    const std::string sfx = channel == OpticalChannel::B ? "_b" : "";
    CsvSchema s;
    s.column(Field::Timestamp) = "UTCDateTime";
    s.column(Field::CountGt0_3) = "p_0_3_um" + sfx;
    s.column(Field::CountGt0_5) = "p_0_5_um" + sfx;
    s.column(Field::CountGt1_0) = "p_1_0_um" + sfx;
    s.column(Field::CountGt2_5) = "p_2_5_um" + sfx;
    s.column(Field::CountGt5_0) = "p_5_0_um" + sfx;
    s.column(Field::CountGt10_0) = "p_10_0_um" + sfx;
    s.column(Field::Pm25Cf1) = "pm2_5_cf_1" + sfx;
    s.column(Field::Pm25Atm) = "pm2_5_atm" + sfx;
    s.column(Field::Temperature) = "current_temp_c";
    s.column(Field::Humidity) = "current_humidity";
    s.column(Field::Pressure) = "pressure";
    return s;
}

CsvSchema CsvSchema::from_kv(const KeyValueFile& kv) {
    auto channel = OpticalChannel::A;
    if (auto c = kv.get("channel")) {
        if (*c == "b" || *c == "B") {
            channel = OpticalChannel::B;
        } else if (*c != "a" && *c != "A") {
            throw ConfigError("schema key 'channel' must be a or b");
        }
    }
    CsvSchema s = purpleair(channel);
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        if (auto v = kv.get(kFieldKeys[i])) s.columns[i] = *v;
    }
    return s;
}

KeyValueFile CsvSchema::to_kv() const {
    KeyValueFile kv;
    for (std::size_t i = 0; i < kFieldCount; ++i) kv.set(std::string(kFieldKeys[i]), columns[i]);
    return kv;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

ParseResult parse_csv(std::istream& in, const CsvSchema& schema, int local_utc_offset_hours) {
    ParseResult out;
    std::string line;
    std::size_t lineno = 0;

    // Header; a UTF-8 byte-order mark is tolerated.
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw SchemaError("missing header row");

    const auto header = split_csv_line(line);
    std::array<std::optional<std::size_t>, kFieldCount> index{};
    std::string missing;
    for (std::size_t f = 0; f < kFieldCount; ++f) {
        const auto& name = schema.columns[f];
        auto it = std::find_if(header.begin(), header.end(),
                               [&](const std::string& h) { return trim(h) == name; });
        if (it != header.end() && !name.empty()) {
            index[f] = static_cast<std::size_t>(it - header.begin());
        } else if (kFieldRequired[f]) {
            if (!missing.empty()) missing += ", ";
            missing += std::string(kFieldKeys[f]) + " ('" + name + "')";
        }
    }
    if (!missing.empty()) throw SchemaError("header missing required column(s): " + missing);

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        ++out.rows;

        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            out.errors.push_back({lineno, std::string(row_reason::kColumnCount),
                                  "expected " + std::to_string(header.size()) + " got " +
                                      std::to_string(cells.size())});
            continue;
        }

        RawRecord rec;
        std::optional<RowError> err;
        auto fail = [&](std::string_view reason, Field f) {
            if (!err) err = RowError{lineno, std::string(reason), std::string(field_key(f))};
        };
        auto numeric = [&](Field f) -> std::optional<double> {
            const auto& idx = index[static_cast<std::size_t>(f)];
            if (!idx) return std::nullopt;
            const std::string_view cell = trim(cells[*idx]);
            if (cell.empty()) {
                if (field_required(f)) fail(row_reason::kMissing, f);
                return std::nullopt;
            }
            auto v = parse_number(cell);
            if (!v || !std::isfinite(*v)) {
                fail(row_reason::kUnparseable, f);
                return std::nullopt;
            }
            return v;
        };

        const std::string_view ts_cell = trim(cells[*index[0]]);
        if (ts_cell.empty()) {
            fail(row_reason::kMissing, Field::Timestamp);
        } else if (auto ts = Timestamp::parse(ts_cell, local_utc_offset_hours)) {
            rec.time = *ts;
        } else {
            fail(row_reason::kBadTimestamp, Field::Timestamp);
        }

        for (std::size_t c = 0; c < kCumulativeChannels; ++c) {
            const auto f = static_cast<Field>(static_cast<std::size_t>(Field::CountGt0_3) + c);
            if (auto v = numeric(f)) {
                if (*v < 0.0) fail(row_reason::kNegativeCount, f);
                rec.counts_gt[c] = *v;
            }
        }
        rec.count_gt10 = numeric(Field::CountGt10_0);
        if (rec.count_gt10 && *rec.count_gt10 < 0.0) fail(row_reason::kNegativeCount, Field::CountGt10_0);
        if (auto v = numeric(Field::Pm25Cf1)) rec.pm25_cf1 = *v;
        rec.pm25_atm = numeric(Field::Pm25Atm);
        rec.temperature_c = numeric(Field::Temperature);
        rec.humidity_pct = numeric(Field::Humidity);
        rec.pressure_hpa = numeric(Field::Pressure);

        if (err) {
            out.errors.push_back(std::move(*err));
        } else {
            out.records.push_back(rec);
        }
    }
    return out;
}

void QcConfig::validate() const {
    if (!(max_pm25 > 0.0) || !(max_count > 0.0)) {
        throw std::invalid_argument("QC limits must be positive");
    }
}

std::size_t IngestReport::rejected() const {
    std::size_t n = 0;
    for (const auto& [_, count] : rejected_by_reason) n += count;
    return n;
}

void IngestReport::add_row_errors(std::span<const RowError> errors) {
    for (const auto& e : errors) ++rejected_by_reason[e.reason];
}

void IngestReport::merge(const IngestReport& other) {
    accepted += other.accepted;
    for (const auto& [reason, count] : other.rejected_by_reason) rejected_by_reason[reason] += count;
    if (other.first && (!first || *other.first < *first)) first = other.first;
    if (other.last && (!last || *last < *other.last)) last = other.last;
}

QcResult qc_filter(std::vector<RawRecord> records, const QcConfig& cfg) {
    cfg.validate();
    QcResult out;
    out.records.reserve(records.size());
    for (auto& r : records) {
        std::string_view reason;
        const bool count_over =
            std::any_of(r.counts_gt.begin(), r.counts_gt.end(), [&](double c) { return c > cfg.max_count; }) ||
            (r.count_gt10 && *r.count_gt10 > cfg.max_count);
        if (count_over) {
            reason = qc_reason::kCountRange;
        } else if (r.pm25_cf1 > cfg.max_pm25 || r.pm25_cf1 < 0.0) {
            reason = qc_reason::kPm25Range;
        } else if (cfg.require_monotone_counts && !counts_monotone(r)) {
            reason = qc_reason::kNonMonotone;
        }

        if (!reason.empty()) {
            ++out.report.rejected_by_reason[std::string(reason)];
            continue;
        }
        ++out.report.accepted;
        if (!out.report.first || r.time < *out.report.first) out.report.first = r.time;
        if (!out.report.last || *out.report.last < r.time) out.report.last = r.time;
        out.records.push_back(std::move(r));
    }
    return out;
}

std::vector<BinnedRecord> to_binned(std::span<const RawRecord> records) {
    std::vector<BinnedRecord> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        const auto d = difference_bins(r);
        out.push_back({r.time, d.bins, r.pm25_cf1, d.clamped});
    }
    return out;
}

}  // namespace pm25
