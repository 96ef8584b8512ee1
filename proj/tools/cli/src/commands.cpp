#include "pm25cli/commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <future>
#include <sstream>

#include "pm25/forecast/evaluate.hpp"
#include "pm25/forecast/model_io.hpp"
#include "pm25/number_format.hpp"
#include "pm25cli/app.hpp"
#include "pm25cli/store.hpp"

namespace pm25::cli {

namespace fs = std::filesystem;

namespace {

struct SiteOutcome {
    int code = kOk;
    std::string out;
    std::string err;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string());
    body(f);
    if (!f) throw DataError("error writing " + path.string());
}

std::string ext(const RunConfig& cfg) { return std::string(extension(cfg.format)); }

/// Runs `work` for each selected site concurrently and prints the outcomes
/// in site order. Returns the worst exit code.
int for_each_site(const RunConfig& cfg, const std::optional<std::string>& only, Log log,
                  const std::function<void(const SiteConfig&, SiteOutcome&)>& work) {
    std::vector<const SiteConfig*> selected;
    if (only) {
        const auto* s = cfg.find_site(*only);
        if (!s) {
            log.err << "error: no site '" << *only << "' in the config\n";
            return kUsageError;
        }
        selected.push_back(s);
    } else {
        for (const auto& s : cfg.sites) selected.push_back(&s);
    }
    if (selected.empty()) {
        log.err << "error: the config defines no sites\n";
        return kUsageError;
    }

    std::vector<std::future<SiteOutcome>> jobs;
    for (const auto* s : selected) {
        jobs.push_back(std::async(std::launch::async, [s, &work] {
            SiteOutcome o;
            try {
                work(*s, o);
            } catch (const std::exception& e) {
                o.code = kDataError;
                o.err += "error: site " + s->label + ": " + e.what() + "\n";
            }
            return o;
        }));
    }
    int code = kOk;
    for (auto& j : jobs) {
        const auto o = j.get();
        log.out << o.out;
        log.err << o.err;
        code = std::max(code, o.code);
    }
    return code;
}

std::vector<BinnedRecord> load_site_store(const RunConfig& cfg, const std::string& label) {
    const auto path = cfg.site_dir(label) / kStoreFileName;
    if (!fs::exists(path)) throw DataError("no record store at " + path.string() + " (run ingest first)");
    auto records = read_store(path);
    if (records.empty()) throw DataError("record store is empty");
    return records;
}

TimeSeries hourly_alt(const RunConfig& cfg, std::span<const BinnedRecord> records) {
    return resample(correct_series(records, cfg.correction), Resolution::Hour, cfg.agg);
}

}  // namespace

int cmd_ingest(const RunConfig& cfg, const std::optional<std::string>& site, Log log) {
    return for_each_site(cfg, site, log, [&](const SiteConfig& s, SiteOutcome& o) {
        IngestReport report;
        std::vector<RawRecord> kept;
        std::ostringstream row_log;
        std::size_t row_errors = 0;
        for (const auto& input : s.inputs) {
            std::ifstream in(input, std::ios::binary);
            if (!in) throw DataError("cannot read " + input.string());
            ParseResult parsed;
            try {
                parsed = parse_csv(in, cfg.schema, cfg.utc_offset_hours);
            } catch (const SchemaError& e) {
                throw DataError(input.string() + ": " + e.what());
            }
            for (const auto& e : parsed.errors) {
                row_log << input.filename().string() << ',' << e.line << ',' << e.reason << ',' << e.detail << '\n';
            }
            row_errors += parsed.errors.size();
            report.add_row_errors(parsed.errors);
            auto qc = qc_filter(std::move(parsed.records), cfg.qc);
            report.merge(qc.report);
            kept.insert(kept.end(), qc.records.begin(), qc.records.end());
        }
        const auto binned = normalize(to_binned(kept));
        const auto dir = cfg.site_dir(s.label);
        write_file(dir / kStoreFileName, [&](std::ostream& f) { write_store(f, binned); });
        write_file(dir / "ingest_report.json", [&](std::ostream& f) { write_ingest_report(f, report, row_errors); });
        write_file(dir / "row_errors.csv", [&](std::ostream& f) { f << "file,line,reason,detail\n" << row_log.str(); });

        o.out += s.label + ": " + std::to_string(report.accepted) + " accepted, " + std::to_string(report.rejected()) +
                 " rejected of " + std::to_string(report.total()) + "\n";
        if (binned.size() < kept.size()) {
            o.err += "warning: site " + s.label + ": " + std::to_string(kept.size() - binned.size()) +
                     " duplicate timestamps dropped\n";
        }
    });
}

int cmd_analyze(const RunConfig& cfg, Log log) {
    std::map<std::string, TimeSeries> daily_by_site;
    std::mutex daily_mutex;
    const auto e = ext(cfg);

    const int code = for_each_site(cfg, std::nullopt, log, [&](const SiteConfig& s, SiteOutcome& o) {
        const auto records = load_site_store(cfg, s.label);
        const auto alt = correct_series(records, cfg.correction);
        const auto cf1 = cf1_series(records);
        const auto hourly = resample(alt, Resolution::Hour, cfg.agg);
        const auto daily = resample(hourly, Resolution::Day, cfg.agg);
        const auto dir = cfg.site_dir(s.label);

        write_file(dir / ("hourly" + e), [&](std::ostream& f) { write_series(f, hourly, cfg.format); });
        write_file(dir / ("daily" + e), [&](std::ostream& f) { write_series(f, daily, cfg.format); });
        write_file(dir / ("diurnal" + e), [&](std::ostream& f) { write_diurnal(f, diurnal_profile(hourly, cfg.agg), cfg.format); });
        write_file(dir / ("seasonal" + e), [&](std::ostream& f) { write_seasonal(f, seasonal_summary(daily, cfg.agg), cfg.format); });
        write_file(dir / ("monthly" + e), [&](std::ostream& f) { write_monthly(f, monthly_means(daily, cfg.agg), cfg.format); });

        SiteSummary summary;
        summary.site = s.label;
        if (!daily.empty()) summary.annual = annual_mean(daily);
        summary.exceedance = exceedance(daily, cfg.guideline);
        if (alt.size() >= 2) summary.comparison = compare_algorithms(alt, cf1);
        write_file(dir / ("summary" + e), [&](std::ostream& f) { write_summary(f, summary, cfg.format); });

        if (daily.empty()) o.err += "warning: site " + s.label + ": no complete days\n";
        o.out += s.label + ": " + std::to_string(hourly.size()) + " hours, " + std::to_string(daily.size()) + " days\n";
        std::lock_guard lock(daily_mutex);
        daily_by_site.emplace(s.label, daily);
    });
    if (code != kOk) return code;

    if (daily_by_site.size() < 2) {
        log.out << "correlation matrix skipped (needs two sites)\n";
        return kOk;
    }
    const auto m = correlation_matrix(daily_by_site);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!m.r[i][j]) {
                log.err << "warning: correlation " << m.labels[i] << "/" << m.labels[j] << " undefined ("
                        << m.overlap[i][j] << " shared days)\n";
            }
        }
    }
    try {
        write_file(cfg.out_dir / ("correlation" + e), [&](std::ostream& f) { write_correlation(f, m, cfg.format); });
    } catch (const DataError& err) {
        log.err << "error: " << err.what() << '\n';
        return kDataError;
    }
    return kOk;
}

int cmd_forecast(const RunConfig& cfg, const std::optional<std::string>& site, Log log) {
    const auto e = ext(cfg);
    return for_each_site(cfg, site, log, [&](const SiteConfig& s, SiteOutcome& o) {
        const auto hourly = hourly_alt(cfg, load_site_store(cfg, s.label));
        const auto L = cfg.train.window;
        const auto run = forecast::longest_contiguous_run(hourly);
        if (run < L + 2) {
            throw DataError("forecasting needs at least " + std::to_string(L + 2) +
                            " contiguous hourly values (window + 2); longest run is " + std::to_string(run));
        }
        const auto prep = forecast::prepare(hourly, L, cfg.train.split);
        if (prep.train.empty() || prep.test.empty()) {
            throw DataError("split " + format_double(cfg.train.split) + " leaves no complete " + std::to_string(L) +
                            "-hour window in the " + (prep.train.empty() ? "training" : "test") + " part");
        }
        const auto result = forecast::train(prep.train, prep.scaler, cfg.train);
        const auto ev = forecast::evaluate(result.model, prep.test);
        const auto dir = cfg.site_dir(s.label);
        write_file(dir / "model.txt", [&](std::ostream& f) { forecast::save_model(f, result.model); });
        write_file(dir / ("eval_report" + e), [&](std::ostream& f) { write_eval_report(f, ev.report, cfg.format); });
        write_file(dir / ("forecast_trace" + e), [&](std::ostream& f) { write_trace(f, ev.trace, cfg.format); });
        o.out += s.label + ": rmse " + format_double(ev.report.rmse) + " (persistence " +
                 format_double(ev.report.baseline_rmse) + "), n_test " + std::to_string(ev.report.n_test) + "\n";
    });
}

int cmd_synth(const SynthRequest& req, const CsvSchema& schema, Log log) {
    if (!(req.start < req.end)) {
        log.err << "error: synth needs end after start\n";
        return kUsageError;
    }
    try {
        req.profile.validate();
    } catch (const std::invalid_argument& e) {
        log.err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    const auto records = synth::generate(req.profile, req.start, req.end);
    try {
        if (req.out.has_parent_path()) fs::create_directories(req.out.parent_path());
        std::ofstream f(req.out, std::ios::binary);
        if (!f) throw DataError("cannot write " + req.out.string());
        synth::write_csv(f, records, schema);
    } catch (const std::exception& e) {
        log.err << "error: " << e.what() << '\n';
        return kDataError;
    }
    log.out << "wrote " << records.size() << " rows to " << req.out.string() << '\n';
    return kOk;
}

}  // namespace pm25::cli
