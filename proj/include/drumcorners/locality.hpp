#pragma once

#include <string>
#include <vector>

#include "drumcorners/geometry.hpp"

namespace drumcorners {

struct LocalityOptions {
  int sample_density = 21;        // n x n grid on omega0 (patch corners included)
  int digits = 160;               // minimum working precision; raised to resolve the expected difference
  bool skip_match_check = false;  // negative controls deliberately break the match
  bool compare_to_self = false;   // model = the big-domain kernel itself
};

struct LocalityReport {
  std::vector<double> t_grid;
  std::vector<double> sup_diff;      // 0 if below the double range; see log_sup_diff
  std::vector<double> log_sup_diff;  // natural log, -inf when the kernels agree exactly
  std::vector<double> model_fit;     // A e^{-c/t}
  double A = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  bool fit_ok = false;
  MatchReport match;
  int sample_density = 0;
  std::string note;
};

/// Sup over omega0 x omega0 of |H_big(t,x,y) - H_model(t,x,y)| on a sample grid, and the
/// regression of log(sup_diff) on 1/t. The big domain must be an axis-aligned rectangle
/// [0,a] x [0,b]; the model (free plane, half-plane, or a sector of angle pi/2 or pi) must be
/// placed with edges along the rectangle axes, so both kernels factor into 1-D kernels that are
/// evaluated in multiprecision. Throws KernelUnavailable, ValidationError (geometric mismatch),
/// FitFailure.
LocalityReport locality_study(const LocalityScenario& scenario, const std::vector<double>& t_grid,
                              const LocalityOptions& opts = {});

/// Geometric t grid with ratio sqrt(2) from 2e-3 up to 2e-2.
std::vector<double> default_locality_grid();

}  // namespace drumcorners
