#include "pm25cli/store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "pm25/number_format.hpp"

namespace pm25::cli {

namespace {

constexpr const char* kMagic = "# pm25-store 1";
constexpr const char* kHeader = "timestamp,bin_0_3_0_5,bin_0_5_1_0,bin_1_0_2_5,pm25_cf1,clamped";

double number(const std::string& cell, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw StoreError("store line " + std::to_string(line) + ": bad number '" + cell + "'");
    }
    return v;
}

}  // namespace

void write_store(std::ostream& out, std::span<const BinnedRecord> records) {
    out << kMagic << '\n' << kHeader << '\n';
    for (const auto& r : records) {
        out << r.time.to_iso() << ',' << format_double(r.bins.x) << ',' << format_double(r.bins.y) << ','
            << format_double(r.bins.z) << ',' << format_double(r.pm25_cf1) << ',' << (r.clamped ? 1 : 0) << '\n';
    }
}

std::vector<BinnedRecord> read_store(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw StoreError("not a pm25 store (bad first line)");
    if (!std::getline(in, line) || line != kHeader) throw StoreError("unexpected store header");
    std::vector<BinnedRecord> out;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) throw StoreError("store line " + std::to_string(lineno) + ": expected 6 fields");
        auto ts = Timestamp::parse(cells[0]);
        if (!ts) throw StoreError("store line " + std::to_string(lineno) + ": bad timestamp");
        BinnedRecord r;
        r.time = *ts;
        r.bins = {number(cells[1], lineno), number(cells[2], lineno), number(cells[3], lineno)};
        r.pm25_cf1 = number(cells[4], lineno);
        r.clamped = cells[5] == "1";
        if (!out.empty() && !(out.back().time < r.time)) {
            throw StoreError("store line " + std::to_string(lineno) + ": timestamps not increasing");
        }
        out.push_back(r);
    }
    return out;
}

std::vector<BinnedRecord> read_store(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StoreError("cannot open store " + path.string());
    return read_store(in);
}

std::vector<BinnedRecord> normalize(std::vector<BinnedRecord> records) {
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.time < b.time; });
    records.erase(std::unique(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.time == b.time; }),
                  records.end());
    return records;
}

}  // namespace pm25::cli
