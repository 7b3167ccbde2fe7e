#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "akcotton/soliton.hpp"

namespace akc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "akcotton.report/1";
inline constexpr const char* kToleranceEnv = "AKCOTTON_TOL";

enum class OutputFormat { Human, Machine };

struct RunConfig {
  std::string subcommand;  // curvature | structure | cotton | soliton | flow | verify-paper
  std::optional<std::filesystem::path> input_path;
  OutputFormat format = OutputFormat::Human;

  double tolerance = kDefaultTolerance;
  double structure_tol = 1e-8;
  double parallel_tol = 1e-10;

  Ansatz ansatz = Ansatz::General;

  double dt = 1e-3;
  int steps = 1000;
  int stride = 100;
  bool normalize = false;
  double fixed_point_tol = 1e-9;
  std::optional<std::filesystem::path> export_path;

  std::vector<double> grid{0.5, 1.0, 2.0};
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAssertion = 2;

/// Executes one subcommand, writing the report to `out` and diagnostics to
/// `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Value of AKCOTTON_TOL if set and parseable, else `fallback`.
double tolerance_from_env(double fallback);

/// Parses "0.5,1,2".
std::vector<double> parse_grid(const std::string& text);

}  // namespace akc
