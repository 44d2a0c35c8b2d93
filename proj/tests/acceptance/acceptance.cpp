// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/experiment.hpp"
#include "drumcorners/kernels.hpp"
#include "drumcorners/locality.hpp"
#include "drumcorners/sector.hpp"
#include "drumcorners/trace.hpp"
#include "support/properties.hpp"

using namespace drumcorners;

namespace {

const auto D = BoundaryCondition::dirichlet();
const auto N = BoundaryCondition::neumann();

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

KnownGeometry known(const Polygon& p, const BoundaryCondition& bc) { return {p.area(), p.perimeter(), 1, bc}; }

void corner_identity(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  double worst = 0.0;
  bool positive = true;
  for (int i = 0; i < 1000; ++i) {
    double th = u(rng);
    if (th == 0.0) th = 1e-3;
    worst = std::max(worst, std::abs(corner_defect_expanded(th) - corner_defect(th)));
    if (std::abs(th - M_PI) > 1e-6 && !(corner_defect(th) > 0)) positive = false;
  }
  o.detail << "max identity gap " << worst << " ";
  o.require(worst <= 1e-13, "identity to 1e-13");
  o.require(positive, "positivity away from pi");
}

void square_constant(Outcome& o) {
  const auto grid = geometric_grid(2e-4, 5e-3, 12);
  const Polygon sq = presets::unit_square();
  for (const auto& bc : {D, N}) {
    const Spectrum s = eigs_rectangle_below(1, 1, bc, 2e5);
    const auto f = fit_trace_expansion(s, grid, known(sq, bc));
    o.detail << bc.label() << ": n=" << s.size() << " c_0=" << f.expansion.c_0 << " ";
    o.require(std::abs(f.expansion.c_0 - 0.25) <= 0.01, bc.label() + " c_0 within 0.01 of 1/4");
  }
}

void disk_constant(Outcome& o) {
  const Spectrum disk = eigs_disk(1, D, 6000);
  const KnownGeometry kd{M_PI, 2 * M_PI, 1, D};
  const auto gd = geometric_grid(1e-3, 1e-2, 12);
  const auto f = fit_trace_expansion(disk, gd, kd);
  o.detail << "disk n=" << disk.size() << " c_0=" << f.expansion.c_0 << " ";
  o.require(disk.size() >= 5000, "at least 5000 eigenvalues");
  o.require(std::abs(f.expansion.c_0 - 1.0 / 6) <= 0.01, "disk c_0 within 0.01 of 1/6");
  const auto cd = classify_corners(disk, kd, gd);
  o.detail << "disk " << to_string(cd.verdict) << " ";
  o.require(cd.verdict == CornerVerdict::Smooth, "disk classified Smooth");

  const auto cs = classify_corners(eigs_rectangle_below(1, 1, D, 2e5), known(presets::unit_square(), D),
                                   geometric_grid(2e-4, 5e-3, 12));
  o.detail << "square " << to_string(cs.verdict) << " excess=" << cs.excess << " ";
  o.require(cs.verdict == CornerVerdict::Polygonal, "square classified Polygonal");
  o.require(std::abs(cs.excess - 1.0 / 12) <= 0.02, "square excess within 0.02 of 1/12");
}

void triangle_constant(Outcome& o) {
  const Polygon tri = presets::equilateral_triangle();
  const double exact = polygon_trace_coeffs(tri, D).c_0;
  o.detail << "formula c_0=" << exact << " ";
  o.require(std::abs(exact - 1.0 / 3) <= 1e-15, "formula gives 1/3");
  const FemResult fem = eigs_fem(tri, D, 1.0 / 64, 300, {.levels = 1});
  const auto f = fit_trace_expansion(fem.spectrum, geometric_grid(0.02, 0.05, 12), known(tri, D), 1e-4);
  o.detail << "FEM h=" << fem.h_used << " c_0=" << f.expansion.c_0 << " ";
  o.require(std::abs(f.expansion.c_0 - 1.0 / 3) <= 0.02, "FEM fit within 0.02 of 1/3");
}

void robin_constant(Outcome& o) {
  const auto bc = BoundaryCondition::robin(1, 1);
  const Spectrum s = eigs_rectangle_below(1, 1, bc, 2e5);
  const auto f = fit_trace_expansion(s, geometric_grid(2e-4, 5e-3, 12), known(presets::unit_square(), bc));
  const double want = 0.25 - 2 / M_PI;
  o.detail << "n=" << s.size() << " c_0=" << f.expansion.c_0 << " expected " << want << " ";
  o.require(std::abs(f.expansion.c_0 - want) <= 0.02, "c_0 within 0.02 of 1/4 - 2/pi");
}

void duhamel_series(Outcome& o) {
  struct Cfg {
    double c, t;
    Point x, y;
  };
  const std::vector<Cfg> cfgs{{1, 0.1, {0, 0.5}, {0, 0.5}},       {1, 0.05, {0, 0.3}, {0.2, 0.6}},
                              {0.5, 0.2, {0, 0.5}, {0.1, 0.5}},    {1, 0.2, {0, 0.2}, {-0.3, 0.4}},
                              {2, 0.02, {0, 0.1}, {0.05, 0.1}},    {0.5, 0.1, {0, 0.1}, {0.3, 0.8}},
                              {1, 0.01, {0, 0.05}, {0, 0.1}},      {1.5, 0.05, {0.2, 0.4}, {0, 0.4}},
                              {1, 0.15, {0, 0.7}, {0.1, 0.3}},     {3, 0.01, {0, 0.2}, {0.1, 0.15}}};
  const auto hn = halfplane_kernel(N);
  double worst_rel = 0.0, worst_ratio = 0.0;
  for (const auto& cf : cfgs) {
    const auto r = robin_from_neumann(hn, cf.c, {}, cf.t, cf.x, cf.y, 12);
    const double exact = heat_halfplane(cf.t, cf.x, cf.y, BoundaryCondition::robin(cf.c, 1));
    worst_rel = std::max(worst_rel, std::abs(r.value - exact) / std::abs(exact));
    for (std::size_t m = 2; m + 1 < r.term_magnitudes.size(); ++m)
      if (r.term_magnitudes[m] > 0) worst_ratio = std::max(worst_ratio, r.term_magnitudes[m + 1] / r.term_magnitudes[m]);
  }
  o.detail << "max rel err " << worst_rel << " max term ratio " << worst_ratio << " ";
  o.require(worst_rel <= 1e-4, "Duhamel sum within 1e-4 relative");
  o.require(worst_ratio <= 0.5, "term ratio <= 1/2 beyond m = 2");
}

double image_green(double s, Point z, Point w, double sign) {
  const Point wb{w.x, -w.y};
  const double k = std::sqrt(s);
  return (std::cyl_bessel_k(0.0, k * distance(z, w)) + sign * std::cyl_bessel_k(0.0, k * distance(z, wb))) / (2 * M_PI);
}

void sector_reductions(Outcome& o) {
  const std::vector<std::pair<SectorPoint, SectorPoint>> pairs{
      {{1, M_PI / 2}, {1.5, M_PI / 2}}, {{0.5, 0.3}, {1.2, 2.0}}, {{2, 1}, {0.3, 0.2}}, {{0.8, 2.8}, {0.9, 0.4}}, {{1.1, 1.6}, {0.6, 1.5}}};
  const Sector sd(M_PI, D), sn(M_PI, N);
  double worst = 0.0;
  for (const auto& [p, q] : pairs) {
    const Point z = p.cartesian(), w = q.cartesian();
    const double ed = image_green(1, z, w, -1), en = image_green(1, z, w, 1);
    worst = std::max(worst, std::abs(green_sector(1, sd, p, q).value - ed) / std::abs(ed));
    worst = std::max(worst, std::abs(green_sector(1, sn, p, q).value - en) / std::abs(en));
  }
  o.detail << "straight-angle max rel " << worst << " ";
  o.require(worst <= 1e-6, "straight-angle D/N within 1e-6");

  const double r0 = green_sector(1, Sector(2.0, BoundaryCondition::robin(0, 1)), {1, 0.5}, {1.3, 1.1}).value;
  const double nn = green_sector(1, Sector(2.0, N), {1, 0.5}, {1.3, 1.1}).value;
  o.detail << "Robin(0) vs N " << std::abs(r0 - nn) / std::abs(nn) << " ";
  o.require(std::abs(r0 - nn) <= 1e-12 * std::abs(nn), "Robin alpha = 0 matches Neumann to 1e-12");

  const QuadratureBudget tight{1e-14, 1e-17, 4000, 2000};
  const Sector q(M_PI / 2, D);
  const std::vector<std::tuple<double, SectorPoint, SectorPoint>> heat{{0.1, {0.5, M_PI / 4}, {0.5, M_PI / 4}},
                                                                       {0.05, {0.3, 0.3}, {0.3, 0.3}},
                                                                       {0.2, {1.0, 1.2}, {1.0, 1.2}},
                                                                       {0.08, {0.6, 0.4}, {0.7, 1.0}},
                                                                       {0.15, {0.4, 1.0}, {0.9, 0.6}}};
  double worst_h = 0.0;
  for (const auto& [t, p, p0] : heat) {
    const double v = heat_sector(t, q, p, p0, tight).value;
    const double ex = heat_quarterplane(t, p.cartesian(), p0.cartesian(), D, D);
    worst_h = std::max(worst_h, std::abs(v - ex) / std::abs(ex));
  }
  o.detail << "right-angle heat max rel " << worst_h << " ";
  o.require(worst_h <= 1e-3, "right-angle heat within 1e-3");
}

LocalityScenario scenario(Polygon big, BoundaryCondition bc, ModelKind model, double gamma, Patch patch, double sep) {
  LocalityScenario s{std::move(big), bc};
  s.model = model;
  s.gamma = gamma;
  s.omega0 = patch;
  s.alpha_sep = sep;
  return s;
}

void locality(Outcome& o) {
  const auto grid = default_locality_grid();
  const std::vector<std::pair<std::string, LocalityScenario>> studies{
      {"square/quarter-plane D",
       scenario(presets::unit_square(), D, ModelKind::Sector, M_PI / 2, Patch::rectangle(0, 0.25, 0, 0.25), 0.7)},
      {"square/half-plane N",
       scenario(presets::unit_square(), N, ModelKind::HalfPlane, M_PI, Patch::rectangle(0.4, 0.6, 0, 0.1), 0.35)},
      {"rectangle/half-plane R",
       scenario(presets::rectangle(2, 1), BoundaryCondition::robin(1, 1), ModelKind::HalfPlane, M_PI,
                Patch::rectangle(0.9, 1.1, 0, 0.1), 0.8)}};
  for (const auto& [name, s] : studies) {
    const auto rep = locality_study(s, grid);
    o.detail << name << ": c=" << rep.c << " r2=" << rep.r_squared << " sup(2e-3)=" << rep.sup_diff.front() << "; ";
    o.require(rep.fit_ok && rep.r_squared > 0.99, name + " r^2 > 0.99");
    o.require(rep.c > 0, name + " c > 0");
    o.require(grid.front() == 2e-3 && rep.sup_diff.front() < 1e-8, name + " sup at 2e-3 below 1e-8");
  }
}

void gww(Outcome& o) {
  GwwOptions opts;
  opts.h = 1.0 / 32;
  RunContext ctx;
  const GwwReport rep = gww_study(opts, ctx);
  double worst_excess = 0.0;
  for (const auto& r : rep.rows) {
    const double diff = std::abs(r.drum1_fine - r.drum2_fine);
    worst_excess = std::max(worst_excess, diff - r.error_band);
  }
  o.detail << "max diff coarse " << rep.max_diff_coarse << " fine " << rep.max_diff_fine << " floor " << rep.roundoff_floor
           << " verdicts " << to_string(rep.classification[0].verdict) << "/" << to_string(rep.classification[1].verdict) << " ";
  o.require(rep.rows.size() == 10, "ten eigenvalue pairs");
  o.require(rep.within_band && worst_excess <= 0, "pairs within the error band");
  o.require(rep.shrinks, "disagreement shrinks under refinement");
  o.require(rep.classification[0].verdict == CornerVerdict::Polygonal &&
                rep.classification[1].verdict == CornerVerdict::Polygonal,
            "both drums Polygonal");
}

void properties(Outcome& o) {
  const std::vector<std::pair<std::string, props::Check>> checks{{"symmetry", props::kernel_symmetry()},
                                                                 {"semigroup", props::semigroup()},
                                                                 {"gaussian bound", props::gaussian_bound()},
                                                                 {"weyl", props::weyl()},
                                                                 {"fem upper bound", props::fem_upper_bound()},
                                                                 {"fem h^2 rate", props::fem_h2_rate()}};
  for (const auto& [name, c] : checks) {
    o.detail << name << ": " << c.detail << "; ";
    o.require(c.ok, name);
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "corner-defect identity", 1, corner_identity},
      {2, "square constant term (D and N)", 10, square_constant},
      {3, "disk constant term and corner classifier", 60, disk_constant},
      {4, "equilateral triangle constant term", 300, triangle_constant},
      {5, "Robin square constant term", 60, robin_constant},
      {6, "Robin half-plane Duhamel series", 60, duhamel_series},
      {7, "sector Green's reductions", 300, sector_reductions},
      {8, "locality decay", 300, locality},
      {9, "GWW isospectrality", 600, gww},
      {10, "property suites", 300, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "[exception: " << e.what() << "] ";
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.budget_s) o.require(false, "runtime over budget");
    if (!o.ok) ++failed;
    std::printf("[%s] criterion %d: %s (%.2f s of %.0f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), dt,
                c.budget_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
