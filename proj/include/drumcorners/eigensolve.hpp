#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "drumcorners/geometry.hpp"
#include "drumcorners/spectrum.hpp"

namespace drumcorners {

// ---------------------------------------------------------------------------
// Closed forms and root finding.

/// Rectangle [0,a] x [0,b]; the first `count` eigenvalues. Robin needs alpha/beta >= 0.
/// Throws InvalidDimensions.
Spectrum eigs_rectangle(double a, double b, const BoundaryCondition& bc, std::size_t count);
/// All rectangle eigenvalues <= lambda_max.
Spectrum eigs_rectangle_below(double a, double b, const BoundaryCondition& bc, double lambda_max);

/// Positive wavenumbers k_j (j = 0..count-1) of the Robin interval problem with coefficient c > 0:
/// k_j in (j pi/L, (j+1) pi/L). Throws RootBracketFailure.
std::vector<double> robin_interval_wavenumbers(double L, double c, std::size_t count);
/// Interval eigenvalues lambda = k^2 for alpha u + beta du/dnu = 0 at both ends, alpha/beta >= 0.
/// alpha == 0 gives the Neumann values (j pi/L)^2, j >= 0.
std::vector<double> eigs_1d_robin(double L, double alpha, double beta, std::size_t count);

/// Disk of the given radius, Dirichlet or Neumann, via zeros of J_nu or J'_nu.
Spectrum eigs_disk(double radius, const BoundaryCondition& bc, std::size_t count);

struct WeylReport {
  bool insufficient = false;
  bool flagged = false;
  double lambda = 0.0;
  double counted = 0.0;
  double predicted = 0.0;
  double rel_deviation = 0.0;
};

/// N(Lambda/2) against area*lambda/(4 pi) -+ perimeter*sqrt(lambda)/(4 pi) (minus for
/// Dirichlet); flagged if off by more than 10%.
WeylReport weyl_sanity(const Spectrum& spec, double area, double perimeter, bool dirichlet = true);

// ---------------------------------------------------------------------------
// P1 finite elements.

struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<double> boundary_edge_length;
  double h = 0.0;  // max element diameter
};

/// Coarse triangulation (the polygon's tiles, or ear clipping) refined by uniform n-fold
/// subdivision with n = ceil(longest coarse edge / h_target). Throws MeshFailure.
Mesh mesh_polygon(const Polygon& poly, double h_target);
/// Subdivision level used by mesh_polygon for this target.
int subdivision_level(const Polygon& poly, double h_target);
Mesh mesh_polygon_level(const Polygon& poly, int n);

struct GeneralizedEigenProblem {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::SparseMatrix<double> mass;
  Eigen::SparseMatrix<double> boundary_mass;
  std::vector<int> free_dofs;  // mesh vertex of each unknown (Dirichlet nodes removed)
  double robin_c = 0.0;

  /// stiffness + c * boundary_mass
  Eigen::SparseMatrix<double> operator_matrix() const;
};

GeneralizedEigenProblem assemble(const Mesh& mesh, const BoundaryCondition& bc);

struct LanczosOptions {
  int block_size = 4;
  int max_iterations = 400;  // block steps
  double tol = 1e-10;        // relative residual of the shift-invert Ritz values
  double shift = -1.0;       // sigma in (A - sigma M)^{-1} M; negative keeps the factorisation definite
  std::uint64_t seed = 12345;
};

/// Smallest `count` eigenvalues of A u = lambda M u. Dense (Eigen) for small systems, block
/// shift-invert Lanczos otherwise. Throws EigenIterationStall.
std::vector<double> smallest_eigenvalues(const GeneralizedEigenProblem& prob, int count, const LanczosOptions& opts = {});

struct RefinementRow {
  int index = 0;
  double coarse = 0.0;    // h
  double fine = 0.0;      // h/2
  double finer = 0.0;     // h/4 when requested, else NaN
  double ratio = 0.0;     // (coarse - fine) / (fine - finer), NaN without the third level
  double error_band = 0.0;  // Richardson estimate |coarse - fine| / 3 of the fine-level error
};

struct FemResult {
  Spectrum spectrum;  // at the finest level computed
  double h_used = 0.0;
  std::vector<double> coarse_eigenvalues;
  std::vector<RefinementRow> refinement;
};

struct FemOptions {
  int levels = 2;  // 1: no refinement report; 2: h and h/2; 3: h, h/2, h/4
  LanczosOptions lanczos{};
};

/// Smallest `count` eigenvalues on a P1 mesh of size ~h, with an h vs h/2 refinement report.
/// Throws MeshFailure, EigenIterationStall.
FemResult eigs_fem(const Polygon& poly, const BoundaryCondition& bc, double h, int count, const FemOptions& opts = {});

/// Mesh as JSON text ({"vertices":[[x,y],...],"triangles":[[i,j,k],...],"h":...}).
std::string mesh_to_json(const Mesh& mesh);

}  // namespace drumcorners
