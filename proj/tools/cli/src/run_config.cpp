#include "pm25cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace pm25::cli {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "out_dir", "format", "seed", "utc_offset_hours", "schema",
    "correction.cf", "correction.density", "correction.diameter", "correction.edges",
    "qc.max_pm25", "qc.max_count", "qc.require_monotone",
    "agg.hour_completeness", "agg.day_completeness", "agg.std", "agg.guideline",
    "train.cell", "train.window", "train.hidden", "train.epochs", "train.batch_size",
    "train.learning_rate", "train.split", "train.clip_norm",
};

std::size_t positive_size(const KeyValueFile& kv, std::string_view key, std::size_t fallback) {
    const auto v = kv.get_int(key);
    if (!v) return fallback;
    if (*v <= 0) throw ConfigError(std::string(key) + " must be positive");
    return static_cast<std::size_t>(*v);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

RunConfig RunConfig::from_kv(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
    RunConfig c;
    for (const auto& [key, value] : kv.entries()) {
        if (key.starts_with("site.")) {
            const auto dot = key.rfind('.');
            if (dot <= 5 || key.substr(dot) != ".inputs") {
                throw ConfigError("unknown key '" + key + "' (expected site.<label>.inputs)");
            }
            continue;
        }
        if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + key + "'");
    }

    if (auto v = kv.get("out_dir")) c.out_dir = resolve(base_dir, *v);
    if (auto v = kv.get("format")) {
        auto f = parse_output_format(*v);
        if (!f) throw ConfigError("format must be csv or json");
        c.format = *f;
    }
    if (auto v = kv.get_int("utc_offset_hours")) {
        if (*v < -12 || *v > 14) throw ConfigError("utc_offset_hours out of range");
        c.utc_offset_hours = static_cast<int>(*v);
    }
    if (auto v = kv.get("schema")) c.schema = CsvSchema::from_kv(KeyValueFile::load(resolve(base_dir, *v)));

    std::array<double, 4> edges{0.3, 0.5, 1.0, 2.5};
    if (kv.contains("correction.edges")) {
        const auto list = kv.get_list("correction.edges");
        if (list.size() != 4) throw ConfigError("correction.edges needs four values");
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& t = list[i];
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), edges[i]);
            if (ec != std::errc{} || ptr != t.data() + t.size()) {
                throw ConfigError("correction.edges: not a number: " + t);
            }
        }
    }
    auto rule = DiameterRule::GeometricMean;
    if (auto v = kv.get("correction.diameter")) {
        if (*v == "midpoint") {
            rule = DiameterRule::Midpoint;
        } else if (*v != "geometric") {
            throw ConfigError("correction.diameter must be geometric or midpoint");
        }
    }
    try {
        c.correction = CorrectionParams::from_edges(edges, kv.get_double("correction.cf").value_or(3.0),
                                                    kv.get_double("correction.density").value_or(1.0), rule);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("correction: ") + e.what());
    }

    c.qc.max_pm25 = kv.get_double("qc.max_pm25").value_or(c.qc.max_pm25);
    c.qc.max_count = kv.get_double("qc.max_count").value_or(c.qc.max_count);
    c.qc.require_monotone_counts = kv.get_bool("qc.require_monotone").value_or(true);

    c.agg.hour_completeness = kv.get_double("agg.hour_completeness").value_or(c.agg.hour_completeness);
    c.agg.day_completeness = kv.get_double("agg.day_completeness").value_or(c.agg.day_completeness);
    if (auto v = kv.get("agg.std")) {
        if (*v == "population") {
            c.agg.std_kind = StdKind::Population;
        } else if (*v != "sample") {
            throw ConfigError("agg.std must be sample or population");
        }
    }
    c.guideline = kv.get_double("agg.guideline").value_or(c.guideline);

    if (auto v = kv.get("train.cell")) {
        auto k = forecast::parse_cell_kind(*v);
        if (!k) throw ConfigError("train.cell must be lstm or rnn");
        c.train.cell = *k;
    }
    c.train.window = positive_size(kv, "train.window", c.train.window);
    c.train.hidden = positive_size(kv, "train.hidden", c.train.hidden);
    c.train.epochs = positive_size(kv, "train.epochs", c.train.epochs);
    c.train.batch_size = positive_size(kv, "train.batch_size", c.train.batch_size);
    c.train.learning_rate = kv.get_double("train.learning_rate").value_or(c.train.learning_rate);
    c.train.split = kv.get_double("train.split").value_or(c.train.split);
    c.train.clip_norm = kv.get_double("train.clip_norm").value_or(c.train.clip_norm);

    if (auto v = kv.get_int("seed")) {
        if (*v < 0) throw ConfigError("seed must be non-negative");
        c.set_seed(static_cast<std::uint64_t>(*v));
    } else {
        c.set_seed(c.seed);
    }

    for (const auto& key : kv.keys_with_prefix("site.")) {
        SiteConfig s;
        s.label = key.substr(5, key.rfind('.') - 5);
        if (s.label.empty() || s.label.find_first_of("/\\") != std::string::npos) {
            throw ConfigError("invalid site label in '" + key + "'");
        }
        for (const auto& p : kv.get_list(key)) s.inputs.push_back(resolve(base_dir, p));
        if (s.inputs.empty()) throw ConfigError("site '" + s.label + "' lists no inputs");
        c.sites.push_back(std::move(s));
    }
    std::sort(c.sites.begin(), c.sites.end(), [](const auto& a, const auto& b) { return a.label < b.label; });

    c.qc.local_utc_offset_hours = c.utc_offset_hours;
    c.agg.utc_offset_hours = c.utc_offset_hours;
    try {
        c.qc.validate();
        c.agg.validate();
        c.train.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(c.guideline > 0.0)) throw ConfigError("agg.guideline must be positive");
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    return from_kv(KeyValueFile::load(path), path.parent_path());
}

const SiteConfig* RunConfig::find_site(std::string_view label) const {
    for (const auto& s : sites) {
        if (s.label == label) return &s;
    }
    return nullptr;
}

void RunConfig::set_seed(std::uint64_t s) {
    seed = s;
    train.seed = s;
}

}  // namespace pm25::cli
