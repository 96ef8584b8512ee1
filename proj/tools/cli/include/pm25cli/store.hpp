#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pm25/ingest.hpp"

namespace pm25::cli {

/// Intermediate record store written by `ingest` and read by the other
/// commands. Plain CSV with one comment line:
///
///   # pm25-store 1
///   timestamp,bin_0_3_0_5,bin_0_5_1_0,bin_1_0_2_5,pm25_cf1,clamped
///   2023-07-01T05:00:00Z,812.5,120,9.25,31.2,0
///
/// Bins are particles per deciliter after differencing; timestamps are UTC,
/// strictly increasing.
inline constexpr int kStoreVersion = 1;
inline constexpr const char* kStoreFileName = "records.store.csv";

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_store(std::ostream& out, std::span<const BinnedRecord> records);
/// Throws StoreError on a malformed file.
std::vector<BinnedRecord> read_store(std::istream& in);
std::vector<BinnedRecord> read_store(const std::filesystem::path& path);

/// Sorts by time and keeps the first of duplicate timestamps.
std::vector<BinnedRecord> normalize(std::vector<BinnedRecord> records);

}  // namespace pm25::cli
