#include "pm25/forecast/model_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "pm25/number_format.hpp"

namespace pm25::forecast {

void save_model(std::ostream& out, const ForecastModel& model) {
    const auto& c = model.config();
    out << "pm25-forecast-model " << kModelFormatVersion << '\n'
        << "cell " << to_string(model.cell()) << '\n'
        << "hidden " << model.hidden() << '\n'
        << "window " << c.window << '\n'
        << "horizon " << c.horizon << '\n'
        << "epochs " << c.epochs << '\n'
        << "batch_size " << c.batch_size << '\n'
        << "learning_rate " << format_double(c.learning_rate) << '\n'
        << "split " << format_double(c.split) << '\n'
        << "clip_norm " << format_double(c.clip_norm) << '\n'
        << "seed " << c.seed << '\n'
        << "scaler_min " << format_double(model.scaler().min()) << '\n'
        << "scaler_max " << format_double(model.scaler().max()) << '\n';
    const auto flat = model.flat();
    out << "params " << flat.size() << '\n';
    for (double v : flat) out << format_double(v) << '\n';
    out << "end\n";
}

void save_model(const std::filesystem::path& path, const ForecastModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelFormatError("cannot write " + path.string());
    save_model(out, model);
}

namespace {

double to_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ModelFormatError("bad number for " + what + ": " + s);
    return v;
}

std::uint64_t to_uint(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ModelFormatError("bad integer for " + what + ": " + s);
    return v;
}

template <class Params>
NetworkParams fill(std::size_t hidden, const std::vector<double>& values) {
    Params p{hidden};
    if (values.size() != p.size()) {
        throw ModelFormatError("parameter count " + std::to_string(values.size()) + " does not match hidden size " +
                               std::to_string(hidden));
    }
    std::copy(values.begin(), values.end(), p.flat().begin());
    return p;
}

}  // namespace

ForecastModel load_model(std::istream& in) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "pm25-forecast-model") throw ModelFormatError("not a model file");
    if (version != kModelFormatVersion) {
        throw ModelFormatError("unsupported model format version " + std::to_string(version));
    }

    std::map<std::string, std::string> header;
    std::string key, value;
    while (in >> key) {
        if (!(in >> value)) throw ModelFormatError("truncated header at '" + key + "'");
        header[key] = value;
        if (key == "params") break;
    }
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = header.find(k);
        if (it == header.end()) throw ModelFormatError("missing header field '" + k + "'");
        return it->second;
    };

    TrainConfig cfg;
    auto cell = parse_cell_kind(need("cell"));
    if (!cell) throw ModelFormatError("unknown cell kind " + need("cell"));
    cfg.cell = *cell;
    cfg.hidden = to_uint(need("hidden"), "hidden");
    cfg.window = to_uint(need("window"), "window");
    cfg.horizon = to_uint(need("horizon"), "horizon");
    cfg.epochs = to_uint(need("epochs"), "epochs");
    cfg.batch_size = to_uint(need("batch_size"), "batch_size");
    cfg.learning_rate = to_double(need("learning_rate"), "learning_rate");
    cfg.split = to_double(need("split"), "split");
    cfg.clip_norm = to_double(need("clip_norm"), "clip_norm");
    cfg.seed = to_uint(need("seed"), "seed");
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ModelFormatError(std::string("invalid hyperparameters: ") + e.what());
    }

    const std::size_t count = to_uint(need("params"), "params");
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string tok;
        if (!(in >> tok)) throw ModelFormatError("truncated parameter block");
        values.push_back(to_double(tok, "parameter " + std::to_string(i)));
    }
    std::string tail;
    if (!(in >> tail) || tail != "end") throw ModelFormatError("missing 'end' marker");

    auto params = cfg.cell == CellKind::Rnn ? fill<RnnParams>(cfg.hidden, values) : fill<LstmParams>(cfg.hidden, values);
    try {
        Scaler scaler{to_double(need("scaler_min"), "scaler_min"), to_double(need("scaler_max"), "scaler_max")};
        return ForecastModel{cfg, scaler, std::move(params)};
    } catch (const std::invalid_argument& e) {
        throw ModelFormatError(std::string("invalid scaler: ") + e.what());
    }
}

ForecastModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFormatError("cannot open " + path.string());
    return load_model(in);
}

}  // namespace pm25::forecast
