#pragma once

// Property checks shared by the unit suites and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/kernels.hpp"
#include "drumcorners/specfun.hpp"

namespace props {

using namespace drumcorners;

struct Check {
  bool ok = true;
  std::string detail;
};

inline std::vector<std::pair<std::string, KernelEvaluator>> model_kernels() {
  const auto D = BoundaryCondition::dirichlet(), N = BoundaryCondition::neumann();
  return {{"plane", plane_kernel()},
          {"halfplane D", halfplane_kernel(D)},
          {"halfplane N", halfplane_kernel(N)},
          {"halfplane R", halfplane_kernel(BoundaryCondition::robin(1.0, 1.0))},
          {"quarterplane DD", quarterplane_kernel(D, D)},
          {"quarterplane NN", quarterplane_kernel(N, N)},
          {"rectangle D", rectangle_kernel(1.0, 0.7, D)},
          {"rectangle R", rectangle_kernel(1.0, 0.7, BoundaryCondition::robin(2.0, 1.0))}};
}

/// H(t,z,z') = H(t,z',z) on 100 random pairs per kernel.
inline Check kernel_symmetry() {
  Check c;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 0.7), tt(1e-3, 0.2);
  double worst = 0.0;
  for (const auto& [name, k] : model_kernels()) {
    for (int i = 0; i < 100; ++i) {
      const double t = tt(rng);
      const Point z{u(rng), u(rng)}, w{u(rng), u(rng)};
      const double a = k(t, z, w), b = k(t, w, z);
      // Relative 1e-12, with an absolute floor for the 1e-14 tail error of the series kernels.
      const double ratio = std::abs(a - b) / (1e-12 * std::abs(a) + 2e-14);
      worst = std::max(worst, ratio);
      if (ratio > 1.0) c.ok = false;
    }
  }
  std::ostringstream os;
  os << "max asymmetry / tolerance " << worst;
  c.detail = os.str();
  return c;
}

/// Chapman-Kolmogorov: Int H(t1,z,w) H(t2,w,z') dw = H(t1+t2,z,z') for plane and half-plane kernels.
inline Check semigroup() {
  Check c;
  double worst = 0.0;
  struct Case {
    KernelEvaluator k;
    bool half;
  };
  const std::vector<Case> cases{{plane_kernel(), false},
                                {halfplane_kernel(BoundaryCondition::dirichlet()), true},
                                {halfplane_kernel(BoundaryCondition::neumann()), true},
                                {halfplane_kernel(BoundaryCondition::robin(1.0, 1.0)), true}};
  const double t1 = 0.03, t2 = 0.05;
  const Point z{0.1, 0.2}, zp{-0.15, 0.35};
  const double reach = 12.0 * std::sqrt(t1 + t2);
  const int panels = 12;
  for (const Case& cs : cases) {
    const double x0 = -reach, x1 = reach, y0 = cs.half ? 0.0 : -reach, y1 = reach + 0.5;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i)
      for (int j = 0; j < panels; ++j) {
        const double ax = x0 + (x1 - x0) * i / panels, bx = x0 + (x1 - x0) * (i + 1) / panels;
        const double ay = y0 + (y1 - y0) * j / panels, by = y0 + (y1 - y0) * (j + 1) / panels;
        sum += gauss_integrate(
            [&](double x) {
              return gauss_integrate([&](double y) { return cs.k(t1, z, {x, y}) * cs.k(t2, {x, y}, zp); }, ay, by, 20);
            },
            ax, bx, 20);
      }
    const double ref = cs.k(t1 + t2, z, zp);
    const double rel = std::abs(sum / ref - 1.0);
    worst = std::max(worst, rel);
    if (rel > 1e-8) c.ok = false;
  }
  std::ostringstream os;
  os << "max relative defect " << worst;
  c.detail = os.str();
  return c;
}

/// Gaussian upper bound: H(t,x,y) t e^{|x-y|^2/(C2 t)} <= C1 with C2 = 4 and C1 = (number of
/// images)/(4 pi), on a point grid for t in [1e-3, 1e-1].
inline Check gaussian_bound() {
  Check c;
  const auto D = BoundaryCondition::dirichlet(), N = BoundaryCondition::neumann();
  struct Case {
    std::string name;
    KernelEvaluator k;
    double images;
  };
  const std::vector<Case> cases{{"plane", plane_kernel(), 1},
                                {"halfplane D", halfplane_kernel(D), 1},
                                {"halfplane N", halfplane_kernel(N), 2},
                                {"halfplane R", halfplane_kernel(BoundaryCondition::robin(3.0, 1.0)), 2},
                                {"quarterplane DD", quarterplane_kernel(D, D), 1},
                                {"quarterplane NN", quarterplane_kernel(N, N), 4}};
  std::ostringstream os;
  for (const Case& cs : cases) {
    double c1 = 0.0;
    for (double t : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1})
      for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
          const Point x{0.05 * i, 0.05 * j}, y{0.05 * (6 - j), 0.04 * i};
          const double d2 = std::pow(distance(x, y), 2);
          c1 = std::max(c1, cs.k(t, x, y) * t * std::exp(d2 / (4.0 * t)));
        }
    const double bound = cs.images / (4 * M_PI) * (1 + 1e-9);
    if (!(c1 <= bound)) c.ok = false;
    os << cs.name << " C1=" << c1 << " ";
  }
  c.detail = os.str();
  return c;
}

/// Two-term Weyl counts for closed-form spectra.
inline Check weyl() {
  Check c;
  const auto D = BoundaryCondition::dirichlet();
  const WeylReport sq = weyl_sanity(eigs_rectangle_below(1, 1, D, 8000.0), 1.0, 4.0);
  const WeylReport disk = weyl_sanity(eigs_disk(1.0, D, 2000), M_PI, 2 * M_PI);
  const WeylReport empty = weyl_sanity(Spectrum{}, 1.0, 4.0);
  c.ok = sq.rel_deviation < 0.02 && disk.rel_deviation < 0.02 && !sq.flagged && !disk.flagged && empty.insufficient;
  std::ostringstream os;
  os << "square dev " << sq.rel_deviation << ", disk dev " << disk.rel_deviation;
  c.detail = os.str();
  return c;
}

/// Conforming P1 eigenvalues bound the exact Dirichlet eigenvalues from above.
inline Check fem_upper_bound() {
  Check c;
  const auto exact = eigs_rectangle(1, 1, BoundaryCondition::dirichlet(), 10).eigenvalues;
  FemOptions fo;
  fo.levels = 1;
  const auto fem = eigs_fem(presets::unit_square(), BoundaryCondition::dirichlet(), 1.0 / 16, 10, fo).spectrum.eigenvalues;
  double margin = 1e300;
  for (std::size_t i = 0; i < 10; ++i) {
    margin = std::min(margin, fem.at(i) - exact[i]);
    if (!(fem.at(i) >= exact[i])) c.ok = false;
  }
  std::ostringstream os;
  os << "smallest lambda_FEM - lambda " << margin;
  c.detail = os.str();
  return c;
}

/// (lambda_h - lambda_{h/2}) / (lambda_{h/2} - lambda_{h/4}) = 4 +- 1 for the first five square eigenvalues.
inline Check fem_h2_rate() {
  Check c;
  FemOptions fo;
  fo.levels = 3;
  const FemResult r = eigs_fem(presets::unit_square(), BoundaryCondition::dirichlet(), 1.0 / 8, 5, fo);
  std::ostringstream os;
  os << "ratios";
  for (const RefinementRow& row : r.refinement) {
    os << " " << row.ratio;
    if (!(std::abs(row.ratio - 4.0) <= 1.0)) c.ok = false;
  }
  c.detail = os.str();
  return c;
}

}  // namespace props
