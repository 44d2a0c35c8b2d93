#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drumcorners/geometry.hpp"

namespace drumcorners {

/// Free heat kernel in the plane, (4 pi t)^{-1} e^{-|z - z'|^2 / 4t}. Throws NonPositiveTime.
double heat_plane(double t, Point z, Point zp);

/// Half-plane y >= 0. Robin uses the outward normal -y and the coefficient c = alpha/beta.
/// Throws NonPositiveTime, PointOutsideDomain.
double heat_halfplane(double t, Point z, Point zp, const BoundaryCondition& bc);

/// Quadrant x >= 0, y >= 0 with Dirichlet/Neumann on each edge (bc_x on the edge x = 0).
/// Throws UnsupportedBC for Robin.
double heat_quarterplane(double t, Point z, Point zp, const BoundaryCondition& bc_x, const BoundaryCondition& bc_y);

/// Rectangle [0,a] x [0,b] by separable eigen-expansion; modes with lambda t <= decay_cutoff
/// are kept per axis. Robin uses interval Robin modes in each direction.
/// Throws NonPositiveTime, ToleranceNotMet (tail above abs_tol), PointOutsideDomain.
double heat_rectangle(double t, Point z, Point zp, double a, double b, const BoundaryCondition& bc,
                      double abs_tol = 1e-14);

/// Rectangle kernel by the method of images (sum over reflections, Dirichlet/Neumann only).
double heat_rectangle_images(double t, Point z, Point zp, double a, double b, const BoundaryCondition& bc);

/// Uniform (t, z, z') -> value interface.
class KernelEvaluator {
 public:
  using Fn = std::function<double(double, Point, Point)>;
  KernelEvaluator(std::string tag, BoundaryCondition bc, Fn fn) : tag_(std::move(tag)), bc_(bc), fn_(std::move(fn)) {}

  double operator()(double t, Point z, Point zp) const { return fn_(t, z, zp); }
  const std::string& tag() const { return tag_; }
  const BoundaryCondition& bc() const { return bc_; }

 private:
  std::string tag_;
  BoundaryCondition bc_;
  Fn fn_;
};

KernelEvaluator plane_kernel();
KernelEvaluator halfplane_kernel(const BoundaryCondition& bc);
KernelEvaluator quarterplane_kernel(const BoundaryCondition& bc_x, const BoundaryCondition& bc_y);
KernelEvaluator rectangle_kernel(double a, double b, const BoundaryCondition& bc);

// ---------------------------------------------------------------------------
// Robin kernels from Neumann kernels by the Duhamel series
//   k_0 = H_N,  k_m(t,x,y) = -c Int_0^t Int_boundary H_N(s,x,z) k_{m-1}(t-s,z,y) dz ds.
// The boundary is a straight line (the model half-plane edge); points are in the frame of
// the KernelEvaluator, the line given by a point and a unit tangent.

struct BoundaryLine {
  Point origin{0.0, 0.0};
  Point tangent{1.0, 0.0};
};

struct RobinSeriesOptions {
  int boundary_nodes = 81;
  int time_nodes = 16;
  int angle_nodes = 24;
  int spatial_nodes = 32;
  double tol = 1e-10;       // sets the boundary truncation width
  double gaussian_c2 = 4.0; // C2 in the Gaussian bound e^{-|x-y|^2 / (C2 t)}
};

struct RobinSeriesResult {
  double value = 0.0;
  std::vector<double> terms;            // k_m(t, x, y), m = 0..M
  std::vector<double> term_magnitudes;  // A_m: sup of |k_m(., z, y)| over the boundary grid and time grid
};

/// Throws NonConvergent if |k_M| has not decayed below |k_{M/2}|, QuadratureFailure if a
/// point lies on the boundary.
RobinSeriesResult robin_from_neumann(const KernelEvaluator& neumann, double c, const BoundaryLine& boundary, double t,
                                     Point x, Point y, int M, const RobinSeriesOptions& opts = {});

}  // namespace drumcorners
