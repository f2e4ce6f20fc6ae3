#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace tlsom::cli {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Fixed column order; an empty row list writes the header only. Throws
/// std::runtime_error when the file cannot be written.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// `key = value` lines.
void write_key_values(const std::filesystem::path& path, const KeyValues& entries,
                      const std::vector<std::string>& comments = {});

}  // namespace tlsom::cli
