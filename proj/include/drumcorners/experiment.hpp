#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/geometry.hpp"
#include "drumcorners/locality.hpp"
#include "drumcorners/trace.hpp"

namespace drumcorners {

inline constexpr const char* kVersion = "0.1.0";

struct RunContext {
  std::string out_dir = "out";
  double tol = 1e-10;
  int threads = 1;
  std::uint64_t seed = 12345;
};

/// Either the first `count` eigenvalues or all eigenvalues up to `lambda_max`.
struct SpectrumRequest {
  std::size_t count = 0;
  double lambda_max = 0.0;
  double h = 1.0 / 32;  // FEM mesh size when no closed form applies
};

/// Closed forms for axis-aligned rectangles (any condition) and disks (D/N); P1 FEM for other
/// polygons. `method` receives a short description of the route taken.
Spectrum acquire_spectrum(const Domain& domain, const BoundaryCondition& bc, const SpectrumRequest& req,
                          const RunContext& ctx, std::string* method = nullptr);

/// Area, perimeter and Euler characteristic of a polygon or smooth domain.
KnownGeometry known_geometry(const Domain& domain, const BoundaryCondition& bc);

// ---------------------------------------------------------------------------
// Isospectral drum pair.

struct GwwOptions {
  double h = 1.0 / 16;  // coarse level; the fine level halves it
  int count = 10;
  double classify_h = 1.0 / 32;
  int classify_count = 300;
  double t_min = 0.05, t_max = 0.2;
  int t_points = 12;
};

struct GwwRow {
  int index = 0;
  double drum1_coarse = 0.0, drum2_coarse = 0.0;
  double drum1_fine = 0.0, drum2_fine = 0.0;
  double error_band = 0.0;  // Richardson estimate of the fine-level discretization error
};

struct GwwReport {
  std::vector<GwwRow> rows;
  double max_diff_coarse = 0.0, max_diff_fine = 0.0;
  double roundoff_floor = 0.0;
  bool within_band = false;
  bool shrinks = false;
  std::array<CornerClassification, 2> classification;
  std::string verdict;
};

GwwReport gww_study(const GwwOptions& opts, const RunContext& ctx);

// ---------------------------------------------------------------------------
// Config-driven runs.

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

LocalityScenario scenario_from_json(const nlohmann::json& j);
std::vector<double> t_grid_from_json(const nlohmann::json& j);

/// Writes `run.json` into ctx.out_dir: tool version, command, input hash, context, outputs, status.
void write_manifest(const RunContext& ctx, const std::string& command, const std::string& input_hash,
                    const std::vector<std::string>& outputs, const nlohmann::json& status);

struct RunOutcome {
  nlohmann::json result;
  std::vector<std::string> outputs;  // file names relative to out_dir
};

/// Executes an experiment config (kinds: trace_fit, gww_isospectral, locality). Writes
/// result.json and CSVs into ctx.out_dir. Throws ParseError / ValidationError for bad configs.
RunOutcome run_experiment_json(const nlohmann::json& config, const RunContext& ctx);
RunOutcome run_experiment(const std::string& config_path, const RunContext& ctx);

}  // namespace drumcorners
