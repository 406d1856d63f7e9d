#pragma once

// Command-line driver: configuration, the verification suite and the
// experiments, with report.json / CSV / gnuplot outputs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "razak/blocks.hpp"

namespace razak {

struct Tolerances {
  double hom_defect = 1e-8;
  double adjoint_defect = 1e-10;
  double boundary = 1e-9;
  double unitarity = 1e-10;
  double duality = 1e-9;
  double trace_norm = 1e-6;
  double gap_slack = 1e-6;
  double monotone = 1e-10;
  double approx_unit = 0.05;
  double norm_defect = 1e-9;
};

struct ExperimentConfig {
  BuildingBlock seed{1, 1};
  std::size_t depth = 3;
  std::size_t grid_size = 256;
  std::string experiment = "verify";  // verify | eig-density | trace-gap | approx-unit | central
  std::uint64_t rng_seed = 1;
  std::size_t sample_pairs = 20;      // element pairs per map for the homomorphism defect
  std::size_t adjoint_samples = 4;    // elements per map for the adjoint defect
  std::size_t trace_pairs = 50;       // (trace, element) pairs for duality
  std::size_t x_points = 16;
  std::vector<int> orders{1, 2, 4, 8, 16, 32, 64};
  std::size_t central_stage = 2;
  std::vector<std::size_t> factors{3, 3};
  std::size_t dense_limit = 512;      // largest stage n' handled with dense matrices
  std::size_t dimension_cap = 6000;
  std::filesystem::path out = "razak-out";
  std::filesystem::path tower_file;   // verify a stored tower instead of building one
  Tolerances tol;
};

/// Parses a JSON configuration; unknown keys and bad values throw ConfigError.
ExperimentConfig config_from_json(const std::string& text);

/// Grid a power of two, depth ≥ 1, known experiment; throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Column documentation for the CSV and data files.
std::string csv_schema();

/// Runs one command ("tower-build", "verify", "eig-density", "trace-gap",
/// "approx-unit", "central") and writes its outputs. Returns 0 when every
/// invariant holds and 1 otherwise; errors propagate as exceptions.
int run_command(const ExperimentConfig& config, const std::string& command, std::ostream& log);

/// Entry point with the exit-code contract: 0 pass, 1 invariant failure,
/// 2 configuration error, 3 resource limit.
int cli_main(int argc, char** argv);

}  // namespace razak
