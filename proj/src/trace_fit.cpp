#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "drumcorners/errors.hpp"
#include "drumcorners/trace.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxCondition = 1e10;

struct LsqResult {
  Eigen::VectorXd coef;
  double c0_stderr = 0.0;
  double condition = 0.0;
};

// Least squares A x ~ b with column equilibration; `c0_col` selects the column whose
// standard error is reported.
LsqResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int c0_col) {
  const Eigen::Index n = A.rows(), p = A.cols();
  if (n < p) fail(ErrorKind::FitFailure, "fewer time points than fitted coefficients");
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j)
    if (scale(j) == 0) fail(ErrorKind::IllConditionedFit, "zero column in fit design");
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LsqResult r;
  r.condition = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(r.condition) || r.condition > kMaxCondition)
    fail(ErrorKind::IllConditionedFit, "trace fit design is ill-conditioned");
  const Eigen::VectorXd ys = svd.solve(b);
  r.coef = ys.cwiseQuotient(scale);
  if (n > p) {
    const double rss = (As * ys - b).squaredNorm();
    const double sigma2 = rss / double(n - p);
    // cov(ys) = sigma^2 V S^-2 V^T
    const Eigen::MatrixXd V = svd.matrixV();
    double var = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) var += V(c0_col, k) * V(c0_col, k) / (sv(k) * sv(k));
    r.c0_stderr = std::sqrt(sigma2 * var) / scale(c0_col);
  }
  return r;
}

struct CoreFit {
  TraceExpansion e;
  double c_half = 0.0;
  double stderr_c0 = 0.0;
  double condition = 0.0;
};

// extra_t adds a t^1 column (only used to probe basis sensitivity).
CoreFit core_fit(const std::vector<double>& t, const std::vector<double>& y, const std::optional<KnownGeometry>& known,
                 bool extra_t) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  CoreFit out;
  if (known) {
    out.e.c_m1 = known->area / (4 * kPi);
    const double edge = known->perimeter / (8 * std::sqrt(kPi));
    out.e.c_mhalf = known->bc.kind() == BCKind::Dirichlet ? -edge : edge;
    const int p = extra_t ? 3 : 2;
    Eigen::MatrixXd A(n, p);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = std::sqrt(t[i]);
      if (extra_t) A(i, 2) = t[i];
      b(i) = y[i] - out.e.c_m1 / t[i] - out.e.c_mhalf / std::sqrt(t[i]);
    }
    const LsqResult r = solve(A, b, 0);
    out.e.c_0 = r.coef(0);
    out.c_half = r.coef(1);
    out.stderr_c0 = r.c0_stderr;
    out.condition = r.condition;
    return out;
  }
  // Multiply through by t: y t = c_m1 + c_mhalf sqrt t + c_0 t + c_half t^{3/2}.
  const int p = extra_t ? 5 : 4;
  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = std::sqrt(t[i]);
    A(i, 0) = 1.0;
    A(i, 1) = s;
    A(i, 2) = t[i];
    A(i, 3) = t[i] * s;
    if (extra_t) A(i, 4) = t[i] * t[i];
    b(i) = y[i] * t[i];
  }
  const LsqResult r = solve(A, b, 2);
  out.e.c_m1 = r.coef(0);
  out.e.c_mhalf = r.coef(1);
  out.e.c_0 = r.coef(2);
  out.c_half = r.coef(3);
  out.stderr_c0 = r.c0_stderr;
  out.condition = r.condition;
  return out;
}

}  // namespace

TraceFit fit_trace_values(const std::vector<double>& t_grid, const std::vector<double>& trace,
                          const std::optional<KnownGeometry>& known) {
  if (t_grid.size() != trace.size()) fail(ErrorKind::FitFailure, "time grid and trace lengths differ");
  for (double t : t_grid)
    if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "fit times must be positive");
  const CoreFit base = core_fit(t_grid, trace, known, false);
  TraceFit f;
  f.expansion = base.e;
  f.c_half = base.c_half;
  f.c0_stderr = base.stderr_c0;
  f.condition = base.condition;
  f.pinned = known.has_value();
  f.t_grid = t_grid;
  f.trace = trace;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double v = base.e.evaluate(t_grid[i]) + base.c_half * std::sqrt(t_grid[i]);
    f.fitted.push_back(v);
    f.residuals.push_back(trace[i] - v);
  }
  // Systematic spread: an extra basis term, and the smaller-t two thirds of the window.
  const std::size_t p = known ? 2 : 4;
  double sys = 0.0;
  if (t_grid.size() >= p + 2) {
    try {
      sys = std::max(sys, std::abs(core_fit(t_grid, trace, known, true).e.c_0 - base.e.c_0));
    } catch (const Error&) {
    }
  }
  std::vector<std::size_t> order(t_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
  const std::size_t m = (2 * order.size() + 2) / 3;
  if (m >= p + 1) {
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < m; ++i) {
      ts.push_back(t_grid[order[i]]);
      ys.push_back(trace[order[i]]);
    }
    try {
      sys = std::max(sys, std::abs(core_fit(ts, ys, known, false).e.c_0 - base.e.c_0));
    } catch (const Error&) {
    }
  }
  f.c0_systematic = sys;
  return f;
}

TraceFit fit_trace_expansion(const Spectrum& spec, const std::vector<double>& t_grid,
                             const std::optional<KnownGeometry>& known, double tail_tol) {
  std::vector<double> y;
  y.reserve(t_grid.size());
  for (double t : t_grid) y.push_back(heat_trace_from_spectrum(spec, t, tail_tol).value);
  return fit_trace_values(t_grid, y, known);
}

std::string to_string(CornerVerdict v) {
  switch (v) {
    case CornerVerdict::Polygonal: return "Polygonal";
    case CornerVerdict::Smooth: return "Smooth";
    case CornerVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CornerClassification classify_corners(const Spectrum& spec, const KnownGeometry& known, const std::vector<double>& t_grid) {
  CornerClassification c;
  if (spec.size() < 10 || t_grid.size() < 3) {
    c.note = "spectrum or time grid too short";
    return c;
  }
  try {
    c.fit = fit_trace_expansion(spec, t_grid, known);
  } catch (const Error& e) {
    c.note = e.what();
    return c;
  }
  double smooth_c0 = known.euler_char / 6.0;
  if (known.bc.kind() == BCKind::Robin && !known.bc.acts_as_neumann())
    smooth_c0 -= known.perimeter * known.bc.robin_coefficient() / (2 * kPi);
  c.excess = c.fit->expansion.c_0 - smooth_c0;
  // The variant spread is a one-sided estimate of the truncation bias of c_0; it is doubled
  // so that the interval brackets the bias rather than sitting on it.
  c.ci = std::hypot(c.fit->c0_stderr, 2.0 * c.fit->c0_systematic);
  if (c.excess > 3 * c.ci) c.verdict = CornerVerdict::Polygonal;
  else if (std::abs(c.excess) < c.ci) c.verdict = CornerVerdict::Smooth;
  else c.verdict = CornerVerdict::Inconclusive;
  return c;
}

}  // namespace drumcorners
