#include "pm25/export.hpp"

#include <cstdio>
#include <json.hpp>

#include "pm25/number_format.hpp"

namespace pm25 {

namespace {

using nlohmann::ordered_json;

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json document(std::string_view kind) {
    ordered_json j;
    j["schema"] = "pm25." + std::string(kind);
    j["schema_version"] = kOutputSchemaVersion;
    return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

std::string month_label(int year, unsigned month) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
    return buf;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    return std::nullopt;
}

std::string_view extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

void write_series(std::ostream& out, const TimeSeries& ts, OutputFormat f) {
    if (f == OutputFormat::Csv) {
        out << "timestamp,value\n";
        for (const auto& p : ts.points()) out << p.time.to_iso() << ',' << format_double(p.value) << '\n';
        return;
    }
    auto j = document("series");
    j["resolution"] = to_string(ts.resolution());
    j["unit"] = ts.unit();
    auto& pts = j["points"] = ordered_json::array();
    for (const auto& p : ts.points()) pts.push_back({{"timestamp", p.time.to_iso()}, {"value", p.value}});
    emit(out, j);
}

void write_diurnal(std::ostream& out, const DiurnalProfile& p, OutputFormat f) {
    if (f == OutputFormat::Csv) {
        out << "hour,mean,std,n\n";
        for (std::size_t h = 0; h < 24; ++h) {
            const auto& s = p.hours[h];
            out << h << ',' << format_optional(s.mean) << ',' << format_optional(s.std) << ',' << s.count << '\n';
        }
        return;
    }
    auto j = document("diurnal");
    j["std_kind"] = p.std_kind == StdKind::Sample ? "sample" : "population";
    auto& rows = j["hours"] = ordered_json::array();
    for (std::size_t h = 0; h < 24; ++h) {
        const auto& s = p.hours[h];
        rows.push_back({{"hour", h}, {"mean", opt_json(s.mean)}, {"std", opt_json(s.std)}, {"n", s.count}});
    }
    emit(out, j);
}

void write_seasonal(std::ostream& out, const SeasonalSummary& s, OutputFormat f) {
    constexpr Season order[] = {Season::LongDry, Season::ShortWet, Season::ShortDry, Season::LongWet};
    if (f == OutputFormat::Csv) {
        out << "season,mean,std,n\n";
        for (Season season : order) {
            const auto& st = s[season];
            out << to_string(season) << ',' << format_optional(st.mean) << ',' << format_optional(st.std) << ','
                << st.count << '\n';
        }
        return;
    }
    auto j = document("seasonal");
    auto& rows = j["seasons"] = ordered_json::array();
    for (Season season : order) {
        const auto& st = s[season];
        rows.push_back({{"season", to_string(season)},
                        {"mean", opt_json(st.mean)},
                        {"std", opt_json(st.std)},
                        {"n", st.count}});
    }
    emit(out, j);
}

void write_monthly(std::ostream& out, const std::vector<MonthlyStats>& months, OutputFormat f) {
    if (f == OutputFormat::Csv) {
        out << "month,mean,std,n\n";
        for (const auto& m : months) {
            out << month_label(m.year, m.month) << ',' << format_double(m.mean) << ',' << format_optional(m.std) << ','
                << m.count << '\n';
        }
        return;
    }
    auto j = document("monthly");
    auto& rows = j["months"] = ordered_json::array();
    for (const auto& m : months) {
        rows.push_back({{"month", month_label(m.year, m.month)},
                        {"mean", m.mean},
                        {"std", opt_json(m.std)},
                        {"n", m.count}});
    }
    emit(out, j);
}

void write_correlation(std::ostream& out, const CorrelationMatrix& m, OutputFormat f) {
    const auto n = m.size();
    if (f == OutputFormat::Csv) {
        out << "site";
        for (const auto& l : m.labels) out << ',' << l;
        out << '\n';
        for (std::size_t i = 0; i < n; ++i) {
            out << m.labels[i];
            for (std::size_t k = 0; k < n; ++k) out << ',' << format_optional(m.r[i][k]);
            out << '\n';
        }
        return;
    }
    auto j = document("correlation");
    j["sites"] = m.labels;
    auto& r = j["r"] = ordered_json::array();
    for (const auto& row : m.r) {
        auto jr = ordered_json::array();
        for (const auto& v : row) jr.push_back(opt_json(v));
        r.push_back(std::move(jr));
    }
    j["overlap"] = m.overlap;
    emit(out, j);
}

void write_summary(std::ostream& out, const SiteSummary& s, OutputFormat f) {
    const auto& c = s.comparison;
    auto cmp = [&](auto field) -> std::optional<double> { return c ? (*c).*field : std::nullopt; };
    if (f == OutputFormat::Csv) {
        out << "key,value\n";
        out << "site," << s.site << '\n';
        out << "annual_mean," << (s.annual ? format_double(s.annual->mean) : std::string(kUndefined)) << '\n';
        out << "coverage," << (s.annual ? format_double(s.annual->coverage) : std::string(kUndefined)) << '\n';
        out << "guideline," << format_double(s.exceedance.guideline) << '\n';
        out << "days_over," << s.exceedance.days_over << '\n';
        out << "days_total," << s.exceedance.days_total << '\n';
        out << "exceedance_fraction," << format_double(s.exceedance.fraction) << '\n';
        out << "cf1_alt_pearson_r," << format_optional(cmp(&ComparisonStats::pearson_r)) << '\n';
        out << "cf1_alt_mean_ratio," << format_optional(cmp(&ComparisonStats::mean_ratio)) << '\n';
        out << "cf1_alt_ols_slope," << format_optional(cmp(&ComparisonStats::ols_slope)) << '\n';
        out << "cf1_alt_ols_intercept," << format_optional(cmp(&ComparisonStats::ols_intercept)) << '\n';
        out << "cf1_alt_n," << (c ? c->n : 0) << '\n';
        return;
    }
    auto j = document("summary");
    j["site"] = s.site;
    j["annual_mean"] = s.annual ? ordered_json(s.annual->mean) : ordered_json(nullptr);
    j["coverage"] = s.annual ? ordered_json(s.annual->coverage) : ordered_json(nullptr);
    j["exceedance"] = {{"guideline", s.exceedance.guideline},
                       {"days_over", s.exceedance.days_over},
                       {"days_total", s.exceedance.days_total},
                       {"fraction", s.exceedance.fraction}};
    j["cf1_vs_alt"] = {{"pearson_r", opt_json(cmp(&ComparisonStats::pearson_r))},
                       {"mean_ratio", opt_json(cmp(&ComparisonStats::mean_ratio))},
                       {"ols_slope", opt_json(cmp(&ComparisonStats::ols_slope))},
                       {"ols_intercept", opt_json(cmp(&ComparisonStats::ols_intercept))},
                       {"n", c ? c->n : 0}};
    emit(out, j);
}

void write_ingest_report(std::ostream& out, const IngestReport& r, std::size_t row_errors_logged) {
    auto j = document("ingest_report");
    j["total"] = r.total();
    j["accepted"] = r.accepted;
    j["rejected"] = r.rejected();
    auto& reasons = j["rejected_by_reason"] = ordered_json::object();
    for (const auto& [reason, count] : r.rejected_by_reason) reasons[reason] = count;
    j["first"] = r.first ? ordered_json(r.first->to_iso()) : ordered_json(nullptr);
    j["last"] = r.last ? ordered_json(r.last->to_iso()) : ordered_json(nullptr);
    j["row_errors_logged"] = row_errors_logged;
    emit(out, j);
}

void write_eval_report(std::ostream& out, const forecast::EvalReport& r, OutputFormat f) {
    if (f == OutputFormat::Csv) {
        out << "key,value\n"
            << "rmse," << format_double(r.rmse) << '\n'
            << "mae," << format_double(r.mae) << '\n'
            << "r2," << format_optional(r.r2) << '\n'
            << "baseline_rmse," << format_double(r.baseline_rmse) << '\n'
            << "n_test," << r.n_test << '\n'
            << "r2_determination," << format_optional(r.r2_determination) << '\n'
            << "baseline_mae," << format_double(r.baseline_mae) << '\n';
        return;
    }
    auto j = document("eval_report");
    j["rmse"] = r.rmse;
    j["mae"] = r.mae;
    j["r2"] = opt_json(r.r2);
    j["baseline_rmse"] = r.baseline_rmse;
    j["n_test"] = r.n_test;
    j["r2_determination"] = opt_json(r.r2_determination);
    j["baseline_mae"] = r.baseline_mae;
    emit(out, j);
}

void write_trace(std::ostream& out, const forecast::ForecastTrace& t, OutputFormat f) {
    if (f == OutputFormat::Csv) {
        out << "timestamp,observed,predicted,persistence\n";
        for (std::size_t i = 0; i < t.times.size(); ++i) {
            out << t.times[i].to_iso() << ',' << format_double(t.observed[i]) << ',' << format_double(t.predicted[i])
                << ',' << format_double(t.persistence[i]) << '\n';
        }
        return;
    }
    auto j = document("forecast_trace");
    auto& rows = j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        rows.push_back({{"timestamp", t.times[i].to_iso()},
                        {"observed", t.observed[i]},
                        {"predicted", t.predicted[i]},
                        {"persistence", t.persistence[i]}});
    }
    emit(out, j);
}

}  // namespace pm25
