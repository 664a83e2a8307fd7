#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace edgeboost {

/// Parameters for the bundled sample-data generator. It emits an hourly
/// urban air-quality table in the AirQualityUCI file dialect: semicolon
/// delimiters, comma decimals, -200 missing tags, two unnamed trailing
/// columns and a block of empty trailing rows. The simulation couples
/// traffic, weather and sensor responses so the analyzer columns are
/// genuinely learnable from the sensor columns. Output is a pure function
/// of this spec (fixed seed, fixed formatting).
struct SynthSpec {
    std::uint64_t seed = 20040310;
    std::size_t n_rows = 9358;
    std::size_t trailing_blank_rows = 114;
};

std::string generate_airquality_csv(const SynthSpec& spec = {});

/// Writes the generated CSV to a file. Throws IoError on failure.
void write_airquality_csv(const std::string& path, const SynthSpec& spec = {});

}  // namespace edgeboost
