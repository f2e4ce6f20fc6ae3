#include "tlsom/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tlsom::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_for_write(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_key_values(const std::filesystem::path& path, const KeyValues& entries,
                      const std::vector<std::string>& comments) {
  std::ofstream out = open_for_write(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace tlsom::cli
