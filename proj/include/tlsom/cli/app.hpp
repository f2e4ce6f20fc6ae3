#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tlsom/cli/report.hpp"
#include "tlsom/cli/scenario.hpp"

namespace tlsom::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_io = 1, exit_config = 2, exit_solver = 3, exit_regime = 4 };

struct RunOutput {
  std::vector<std::filesystem::path> files;
  Warnings warnings;
  KeyValues notes;  ///< cutoffs and tolerances recorded in the metadata
};

RunOutput run_coupling(const Scenario& s, const std::filesystem::path& dir);
RunOutput run_spectrum(const Scenario& s, const std::filesystem::path& dir);
RunOutput run_fullspectrum(const Scenario& s, const std::filesystem::path& dir);
RunOutput run_crossover(const Scenario& s, const std::filesystem::path& dir);
RunOutput run_g2map(const Scenario& s, const std::filesystem::path& dir);
RunOutput run_stateprep(const Scenario& s, const std::filesystem::path& dir);

/// Spectrum grid: one window of half-width `span` around each requested sideband.
std::vector<double> spectrum_grid(const Scenario& s);

/// Full command line (without the program name). Returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tlsom::cli
