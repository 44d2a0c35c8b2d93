#include <doctest.h>

#include <cmath>
#include <random>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/trace.hpp"

using namespace drumcorners;

namespace {

const auto D = BoundaryCondition::dirichlet();
const auto N = BoundaryCondition::neumann();

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("corner defect") {
  CHECK(corner_defect(M_PI / 2) == doctest::Approx(1.0 / 48).epsilon(1e-14));
  CHECK(corner_defect(M_PI / 3) == doctest::Approx(1.0 / 18).epsilon(1e-14));
  CHECK(corner_defect(M_PI) == 0.0);
  CHECK(corner_defect(3 * M_PI / 2) == doctest::Approx(1.0 / 144).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-3, 2 * M_PI - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const double th = u(rng);
    CHECK(std::abs(corner_defect(th) - corner_defect_expanded(th)) <= 1e-13 * std::max(1.0, corner_defect(th)));
    CHECK(corner_defect(th) >= 0.0);
  }
  CHECK(kind_of([] { corner_defect(0.0); }) == ErrorKind::AngleOutOfRange);
  CHECK(kind_of([] { corner_defect(2 * M_PI); }) == ErrorKind::AngleOutOfRange);
  CHECK(kind_of([] { corner_defect_expanded(-1.0); }) == ErrorKind::AngleOutOfRange);
}

TEST_CASE("expansion coefficients") {
  const auto sq = polygon_trace_coeffs(presets::unit_square(), D);
  CHECK(sq.c_m1 == doctest::Approx(1 / (4 * M_PI)).epsilon(1e-15));
  CHECK(sq.c_mhalf == doctest::Approx(-4 / (8 * std::sqrt(M_PI))).epsilon(1e-15));
  CHECK(sq.c_0 == doctest::Approx(0.25).epsilon(1e-15));

  const auto sqn = polygon_trace_coeffs(presets::unit_square(), N);
  CHECK(sqn.c_mhalf == doctest::Approx(-sq.c_mhalf).epsilon(1e-15));
  CHECK(sqn.c_0 == sq.c_0);

  CHECK(polygon_trace_coeffs(presets::equilateral_triangle(), D).c_0 == doctest::Approx(1.0 / 3).epsilon(1e-14));

  const auto rob = polygon_trace_coeffs(presets::unit_square(), BoundaryCondition::robin(1, 1));
  CHECK(rob.c_0 == doctest::Approx(0.25 - 2 / M_PI).epsilon(1e-14));
  CHECK(rob.c_mhalf == sqn.c_mhalf);
  const auto rob3 = polygon_trace_coeffs(presets::rectangle(2, 1), BoundaryCondition::robin(3, 2));
  const auto neu3 = polygon_trace_coeffs(presets::rectangle(2, 1), N);
  CHECK(neu3.c_0 - rob3.c_0 == doctest::Approx(1.5 * 6 / (2 * M_PI)).epsilon(1e-14));

  const auto disk = smooth_trace_coeffs(SmoothDomain::disk(1), D);
  CHECK(disk.c_m1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(disk.c_0 == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(smooth_trace_coeffs(SmoothDomain::disk(1), N).c_0 == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(smooth_trace_coeffs(SmoothDomain::disk(2), BoundaryCondition::robin(1, 2)).c_0 ==
        doctest::Approx(1.0 / 6 - 1.0).epsilon(1e-14));

  const auto g1 = polygon_trace_coeffs(presets::gww1(), D), g2 = polygon_trace_coeffs(presets::gww2(), D);
  CHECK(g1.c_m1 == doctest::Approx(g2.c_m1).epsilon(1e-14));
  CHECK(g1.c_mhalf == doctest::Approx(g2.c_mhalf).epsilon(1e-14));
  CHECK(g1.c_0 == doctest::Approx(g2.c_0).epsilon(1e-14));

  CHECK(kind_of([] { trace_coeffs(Sector(1.0, D), D); }) == ErrorKind::ValidationError);
}

TEST_CASE("heat trace from a spectrum") {
  const Spectrum one = make_spectrum({1.0, 2.0}, SpectrumSource::External, 1e6);
  CHECK(heat_trace_from_spectrum(one, 1.0).value == doctest::Approx(std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-15));
  const Spectrum sq = eigs_rectangle_below(1, 1, D, 2e5);
  const double t = 1e-3;
  CHECK(heat_trace_from_spectrum(sq, t).value == doctest::Approx(polygon_trace_coeffs(presets::unit_square(), D).evaluate(t)).epsilon(1e-6));
  const Spectrum short_spec = eigs_rectangle(1, 1, D, 10);
  CHECK(kind_of([&] { heat_trace_from_spectrum(short_spec, 1e-3); }) == ErrorKind::TailTooLarge);
  CHECK(kind_of([&] { heat_trace_from_spectrum(short_spec, 0.0); }) == ErrorKind::NonPositiveTime);
}

TEST_CASE("fitting synthetic traces") {
  const TraceExpansion e{0.3, -0.2, 0.17};
  const auto grid = geometric_grid(1e-4, 1e-2, 15);
  std::vector<double> y;
  for (double t : grid) y.push_back(e.evaluate(t) + 0.05 * std::sqrt(t));
  const auto f = fit_trace_values(grid, y);
  CHECK(std::abs(f.expansion.c_m1 - 0.3) < 1e-10);
  CHECK(std::abs(f.expansion.c_mhalf + 0.2) < 1e-10);
  CHECK(std::abs(f.expansion.c_0 - 0.17) < 1e-10);
  CHECK(std::abs(f.c_half - 0.05) < 1e-8);

  // Pinned round trip: exact trace of a known geometry reproduces its constant term.
  const Polygon tri = presets::equilateral_triangle();
  const auto ex = polygon_trace_coeffs(tri, N);
  std::vector<double> yt;
  for (double t : grid) yt.push_back(ex.evaluate(t));
  const auto fp = fit_trace_values(grid, yt, KnownGeometry{tri.area(), tri.perimeter(), 1, N});
  CHECK(fp.pinned);
  CHECK(std::abs(fp.expansion.c_0 - 1.0 / 3) < 1e-8);

  const std::vector<double> dup(6, 1e-3);
  CHECK(kind_of([&] { fit_trace_values(dup, std::vector<double>(6, 1.0)); }) == ErrorKind::IllConditionedFit);
  CHECK(kind_of([&] { fit_trace_values({1e-3, 2e-3}, {1.0, 2.0}); }) == ErrorKind::FitFailure);
}

TEST_CASE("constant terms from closed-form spectra") {
  const auto grid = geometric_grid(2e-4, 5e-3, 12);
  const Polygon sq = presets::unit_square();
  for (const auto& bc : {D, N}) {
    const auto f = fit_trace_expansion(eigs_rectangle_below(1, 1, bc, 2e5), grid, KnownGeometry{1, 4, 1, bc});
    CHECK(f.expansion.c_0 == doctest::Approx(0.25).epsilon(0.04));
  }
  const auto disk = eigs_disk(1, D, 3000);
  const auto gd = geometric_grid(2e-3, 1e-2, 12);
  const auto fd = fit_trace_expansion(disk, gd, KnownGeometry{M_PI, 2 * M_PI, 1, D});
  CHECK(std::abs(fd.expansion.c_0 - 1.0 / 6) < 0.01);
}

TEST_CASE("corner classification") {
  const auto grid = geometric_grid(2e-4, 5e-3, 12);
  const auto sq = classify_corners(eigs_rectangle_below(1, 1, D, 2e5), KnownGeometry{1, 4, 1, D}, grid);
  CHECK(sq.verdict == CornerVerdict::Polygonal);
  CHECK(sq.excess == doctest::Approx(1.0 / 12).epsilon(0.2));

  const auto disk = classify_corners(eigs_disk(1, D, 3000), KnownGeometry{M_PI, 2 * M_PI, 1, D}, geometric_grid(2e-3, 1e-2, 12));
  CHECK(disk.verdict == CornerVerdict::Smooth);

  const auto empty = classify_corners(Spectrum{}, KnownGeometry{1, 4, 1, D}, grid);
  CHECK(empty.verdict == CornerVerdict::Inconclusive);
  CHECK_FALSE(empty.note.empty());
}
