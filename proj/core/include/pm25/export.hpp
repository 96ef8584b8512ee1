#pragma once

#include <optional>
#include <ostream>
#include <string_view>

#include "pm25/analytics.hpp"
#include "pm25/correction.hpp"
#include "pm25/forecast/evaluate.hpp"
#include "pm25/ingest.hpp"

namespace pm25 {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view text);
std::string_view extension(OutputFormat f);

/// Version stamped into every JSON document as "schema_version".
inline constexpr int kOutputSchemaVersion = 1;

// CSV layouts (undefined values are written as NA):
//   series      timestamp,value
//   diurnal     hour,mean,std,n          (local hour of day)
//   seasonal    season,mean,std,n
//   monthly     month,mean,std,n         (month as YYYY-MM, local)
//   correlation site,<label>...          (square matrix of r)
//   summary     key,value
//   trace       timestamp,observed,predicted,persistence

void write_series(std::ostream& out, const TimeSeries& ts, OutputFormat f);
void write_diurnal(std::ostream& out, const DiurnalProfile& p, OutputFormat f);
void write_seasonal(std::ostream& out, const SeasonalSummary& s, OutputFormat f);
void write_monthly(std::ostream& out, const std::vector<MonthlyStats>& months, OutputFormat f);
void write_correlation(std::ostream& out, const CorrelationMatrix& m, OutputFormat f);

/// Per-site headline numbers: annual mean, exceedance and the CF1 comparison.
struct SiteSummary {
    std::string site;
    std::optional<AnnualMean> annual;
    ExceedanceReport exceedance;
    std::optional<ComparisonStats> comparison;
};
void write_summary(std::ostream& out, const SiteSummary& s, OutputFormat f);

void write_ingest_report(std::ostream& out, const IngestReport& r, std::size_t row_errors_logged = 0);
void write_eval_report(std::ostream& out, const forecast::EvalReport& r, OutputFormat f);
void write_trace(std::ostream& out, const forecast::ForecastTrace& t, OutputFormat f);

}  // namespace pm25
