#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bbm/semidisc.hpp"
#include "bbm/waves.hpp"

namespace bbm {

// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Plain-text column documentation emitted next to a CSV, one
// "name: description" line per column.
void write_schema(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& columns);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Wave files: <stem>.meta.csv holds scalar parameters (key,value), and
// <stem>.coeffs.csv the four coefficient vectors as (field,index,value).
void write_wave(const std::filesystem::path& dir, const std::string& stem,
                const TravellingWave& wave, BcKind bc);
TravellingWave read_wave(const std::filesystem::path& dir,
                         const std::string& stem, BcKind* bc_out = nullptr);

}  // namespace bbm
