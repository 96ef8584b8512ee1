#include "pm25cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>

#include "pm25/forecast/model_io.hpp"
#include "pm25cli/commands.hpp"
#include "pm25cli/store.hpp"

namespace pm25::cli {

namespace {

struct GlobalFlags {
    std::string config;
    std::string out_dir;
    std::string format;
    std::optional<std::uint64_t> seed;
};

/// Loads the config (if any) and applies flag overrides.
RunConfig resolve_config(const GlobalFlags& g, bool required) {
    RunConfig cfg;
    if (!g.config.empty()) {
        cfg = RunConfig::load(g.config);
    } else if (required) {
        throw ConfigError("this command needs --config");
    }
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (!g.format.empty()) {
        const auto f = parse_output_format(g.format);
        if (!f) throw ConfigError("--format must be csv or json");
        cfg.format = *f;
    }
    if (g.seed) cfg.set_seed(*g.seed);
    return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"PM2.5 sensor pipeline: ingest, correct, analyze and forecast low-cost sensor logs", "pm25"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--config", g.config, "Run config file (key = value)");
    app.add_option("--out-dir", g.out_dir, "Output directory, overrides out_dir");
    app.add_option("--format", g.format, "Analysis output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", g.seed, "Seed for training and synthesis");

    std::string site;
    auto* ingest = app.add_subcommand("ingest", "Parse, QC and store each site's CSV logs");
    ingest->add_option("--site", site, "Only this site");
    auto* analyze = app.add_subcommand("analyze", "Diurnal, daily, seasonal, annual, exceedance and correlation outputs");
    auto* forecast_cmd = app.add_subcommand("forecast", "Train and evaluate the recurrent forecaster");
    forecast_cmd->add_option("--site", site, "Only this site");

    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic PurpleAir-style CSV");
    std::string start, end, out_path;
    synth::SiteProfile profile;
    synth_cmd->add_option("--start", start, "First minute, local time (YYYY-MM-DD[ HH:MM])")->required();
    synth_cmd->add_option("--end", end, "End of range, exclusive")->required();
    synth_cmd->add_option("--out", out_path, "Output CSV path")->required();
    synth_cmd->add_option("--base", profile.base_level, "Base level, ug/m3");
    synth_cmd->add_option("--morning-peak", profile.morning_peak_hour, "Local hour of the morning peak");
    synth_cmd->add_option("--evening-peak", profile.evening_peak_hour, "Local hour of the evening peak");
    synth_cmd->add_option("--amplitude", profile.peak_amplitude, "Peak height above base, ug/m3");
    synth_cmd->add_option("--peak-width", profile.peak_width_hours, "Peak sigma, hours");
    synth_cmd->add_option("--dry-multiplier", profile.dry_multiplier, "Factor applied in the dry seasons");
    synth_cmd->add_option("--noise", profile.noise_std, "Per-minute Gaussian noise sd, ug/m3");

    auto* version = app.add_subcommand("version", "Print version information");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const Log log{out, err};
    try {
        if (version->parsed()) {
            out << "pm25 " << PM25_VERSION << " (output schema " << kOutputSchemaVersion << ", model format "
                << forecast::kModelFormatVersion << ", store " << kStoreVersion << ")\n";
            return kOk;
        }
        if (synth_cmd->parsed()) {
            const auto cfg = resolve_config(g, false);
            SynthRequest req;
            req.profile = profile;
            req.profile.seed = cfg.seed;
            req.profile.utc_offset_hours = cfg.utc_offset_hours;
            const auto s = Timestamp::parse(start, cfg.utc_offset_hours);
            const auto e = Timestamp::parse(end, cfg.utc_offset_hours);
            if (!s || !e) {
                err << "error: cannot parse --start/--end\n";
                return kUsageError;
            }
            req.start = *s;
            req.end = *e;
            req.out = out_path;
            return cmd_synth(req, cfg.schema, log);
        }

        const auto cfg = resolve_config(g, true);
        const std::optional<std::string> only = site.empty() ? std::nullopt : std::optional<std::string>(site);
        if (ingest->parsed()) return cmd_ingest(cfg, only, log);
        if (analyze->parsed()) return cmd_analyze(cfg, log);
        if (forecast_cmd->parsed()) return cmd_forecast(cfg, only, log);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

}  // namespace pm25::cli
