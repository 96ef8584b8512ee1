#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pm25/forecast/trainer.hpp"

namespace pm25::forecast {

inline constexpr int kModelFormatVersion = 1;

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text model format, version 1:
///
///   pm25-forecast-model 1
///   cell lstm|rnn
///   hidden <m>
///   window <L>
///   horizon 1
///   epochs <n>
///   batch_size <n>
///   learning_rate <x>
///   split <x>
///   clip_norm <x>
///   seed <n>
///   scaler_min <x>
///   scaler_max <x>
///   params <count>
///   <one value per line, flat layout of RnnParams/LstmParams>
///   end
///
/// Numbers use the shortest representation that round-trips exactly.
void save_model(std::ostream& out, const ForecastModel& model);
void save_model(const std::filesystem::path& path, const ForecastModel& model);

/// Throws ModelFormatError on a malformed or inconsistent file.
ForecastModel load_model(std::istream& in);
ForecastModel load_model(const std::filesystem::path& path);

}  // namespace pm25::forecast
