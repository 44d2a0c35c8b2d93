#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"

namespace drumcorners {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Dense generalized solver below this many unknowns (or when most of the spectrum is wanted).
constexpr int kDenseLimit = 600;

std::vector<double> dense_smallest(const SpMat& A, const SpMat& M, int count) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(Mat(A), Mat(M), Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) fail(ErrorKind::EigenIterationStall, "dense generalized eigensolver failed");
  std::vector<double> out(ges.eigenvalues().data(), ges.eigenvalues().data() + count);
  return out;
}

// M-orthonormalizes the columns of W against V[:, :k] and each other. Returns R with W = Q R
// restricted to the new directions; rank-deficient columns are replaced by random ones (R column 0).
Mat orthonormalize(Mat& W, const Mat& V, int k, const SpMat& M, std::mt19937_64& rng) {
  const int b = static_cast<int>(W.cols());
  Mat R = Mat::Zero(b, b);
  std::normal_distribution<double> nd;
  for (int i = 0; i < b; ++i) {
    Vec w = W.col(i);
    const double norm0 = std::sqrt(std::max(0.0, w.dot(M * w)));
    bool random = false;
    for (int attempt = 0; attempt < 3; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        if (k > 0) {
          const Vec mw = M * w;
          w -= V.leftCols(k) * (V.leftCols(k).transpose() * mw);
        }
        for (int j = 0; j < i; ++j) {
          const double r = W.col(j).dot(M * w);
          if (!random) R(j, i) += r;
          w -= r * W.col(j);
        }
      }
      const double nrm = std::sqrt(std::max(0.0, w.dot(M * w)));
      if (nrm > 1e-10 * std::max(norm0, std::numeric_limits<double>::min()) && nrm > 0) {
        if (!random) R(i, i) = nrm;
        W.col(i) = w / nrm;
        break;
      }
      if (attempt == 2) fail(ErrorKind::EigenIterationStall, "could not extend the Krylov basis");
      random = true;
      for (int j = 0; j < i; ++j) R(j, i) = 0.0;
      for (Eigen::Index r = 0; r < w.size(); ++r) w(r) = nd(rng);
    }
  }
  return R;
}

std::vector<double> lanczos_smallest(const SpMat& A, const SpMat& M, int count, const LanczosOptions& o) {
  const int n = static_cast<int>(A.rows());
  const int b = std::max(1, o.block_size);
  const int kmax = std::min({n, b * (o.max_iterations + 1), 4 * count + 40 * b});
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(SpMat(A - o.shift * M));
  if (solver.info() != Eigen::Success) fail(ErrorKind::EigenIterationStall, "shifted factorization failed");

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> nd;
  Mat V = Mat::Zero(n, kmax);
  Mat T = Mat::Zero(kmax, kmax);
  Mat X(n, b);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = nd(rng);
  orthonormalize(X, V, 0, M, rng);
  V.leftCols(b) = X;

  Mat Bprev;
  int k = 0, next_check = std::max(count + b, 2 * b);
  while (true) {
    const Mat Vj = V.middleCols(k, b);
    Mat W = solver.solve(M * Vj);
    if (k > 0) W -= V.middleCols(k - b, b) * Bprev.transpose();
    Mat Aj = Vj.transpose() * (M * W);
    Aj = 0.5 * (Aj + Aj.transpose());
    W -= Vj * Aj;
    T.block(k, k, b, b) = Aj;
    const int kn = k + b;
    const bool exhausted = kn + b > kmax;
    Mat R = Mat::Zero(b, b);
    if (kn < n) R = orthonormalize(W, V, kn, M, rng);

    if (kn >= next_check || exhausted || kn >= n) {
      next_check = static_cast<int>(kn * 1.15) + b;
      Eigen::SelfAdjointEigenSolver<Mat> es(T.topLeftCorner(kn, kn));
      const Vec& theta = es.eigenvalues();  // ascending; wanted are the largest
      bool ok = kn >= count;
      for (int i = 0; i < count && ok && kn < n; ++i) {
        const int c = kn - 1 - i;
        const double res = (R * es.eigenvectors().col(c).tail(b)).norm();
        if (res > o.tol * std::abs(theta(c))) ok = false;
      }
      if (ok) {
        std::vector<double> out;
        for (int i = 0; i < count; ++i) out.push_back(o.shift + 1.0 / theta(kn - 1 - i));
        std::sort(out.begin(), out.end());
        return out;
      }
      if (exhausted || kn >= n)
        fail(ErrorKind::EigenIterationStall, "Lanczos did not converge within " + std::to_string(kmax) + " basis vectors");
    }
    T.block(kn, k, b, b) = R;
    T.block(k, kn, b, b) = R.transpose();
    V.middleCols(kn, b) = W;
    Bprev = R;
    k = kn;
  }
}

}  // namespace

SpMat GeneralizedEigenProblem::operator_matrix() const {
  if (robin_c == 0.0) return stiffness;
  return SpMat(stiffness + robin_c * boundary_mass);
}

GeneralizedEigenProblem assemble(const Mesh& mesh, const BoundaryCondition& bc) {
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<bool> on_boundary(nv, false);
  for (const auto& e : mesh.boundary_edges) on_boundary[e[0]] = on_boundary[e[1]] = true;

  GeneralizedEigenProblem prob;
  std::vector<int> dof(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (bc.kind() != BCKind::Dirichlet || !on_boundary[v]) {
      dof[v] = static_cast<int>(prob.free_dofs.size());
      prob.free_dofs.push_back(v);
    }
  const int nd = static_cast<int>(prob.free_dofs.size());
  if (nd == 0) fail(ErrorKind::MeshFailure, "mesh has no interior nodes");

  std::vector<Eigen::Triplet<double>> kt, mt, bt;
  for (const auto& tr : mesh.triangles) {
    const Point p[3] = {mesh.vertices[tr[0]], mesh.vertices[tr[1]], mesh.vertices[tr[2]]};
    const double area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    Point g[3];
    for (int i = 0; i < 3; ++i) {
      const Point a = p[(i + 1) % 3], c = p[(i + 2) % 3];
      g[i] = {(a.y - c.y) / (2 * area), (c.x - a.x) / (2 * area)};
    }
    for (int i = 0; i < 3; ++i) {
      const int di = dof[tr[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = dof[tr[j]];
        if (dj < 0) continue;
        kt.emplace_back(di, dj, area * dot(g[i], g[j]));
        mt.emplace_back(di, dj, area / 12.0 * (i == j ? 2.0 : 1.0));
      }
    }
  }
  if (bc.kind() == BCKind::Robin)
    for (std::size_t e = 0; e < mesh.boundary_edges.size(); ++e) {
      const double len = mesh.boundary_edge_length[e];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          bt.emplace_back(dof[mesh.boundary_edges[e][i]], dof[mesh.boundary_edges[e][j]], len / 6.0 * (i == j ? 2.0 : 1.0));
    }
  prob.stiffness.resize(nd, nd);
  prob.mass.resize(nd, nd);
  prob.boundary_mass.resize(nd, nd);
  prob.stiffness.setFromTriplets(kt.begin(), kt.end());
  prob.mass.setFromTriplets(mt.begin(), mt.end());
  prob.boundary_mass.setFromTriplets(bt.begin(), bt.end());
  prob.robin_c = bc.kind() == BCKind::Robin ? bc.robin_coefficient() : 0.0;
  return prob;
}

std::vector<double> smallest_eigenvalues(const GeneralizedEigenProblem& prob, int count, const LanczosOptions& opts) {
  const int nd = static_cast<int>(prob.free_dofs.size());
  if (count < 1 || count > nd) fail(ErrorKind::InvalidDimensions, "requested eigenvalue count exceeds the number of unknowns");
  const SpMat A = prob.operator_matrix();
  if (nd <= kDenseLimit || 4 * count + 40 * opts.block_size >= nd) return dense_smallest(A, prob.mass, count);
  return lanczos_smallest(A, prob.mass, count, opts);
}

FemResult eigs_fem(const Polygon& poly, const BoundaryCondition& bc, double h, int count, const FemOptions& opts) {
  if (opts.levels < 1 || opts.levels > 3) fail(ErrorKind::ValidationError, "levels must be 1, 2 or 3");
  if (count < 1) fail(ErrorKind::InvalidDimensions, "count must be positive");
  std::vector<std::vector<double>> levels;
  const int n0 = subdivision_level(poly, h);
  double h_last = 0.0;
  for (int l = 0; l < opts.levels; ++l) {
    const Mesh mesh = mesh_polygon_level(poly, n0 << l);
    h_last = mesh.h;
    levels.push_back(smallest_eigenvalues(assemble(mesh, bc), count, opts.lanczos));
  }
  FemResult res;
  res.h_used = h_last;
  res.coarse_eigenvalues = levels.front();
  res.spectrum = take_first(levels.back(), static_cast<std::size_t>(count), SpectrumSource::FEM);
  if (opts.levels >= 2)
    for (int i = 0; i < count; ++i) {
      RefinementRow row;
      row.index = i;
      row.coarse = levels[0][i];
      row.fine = levels[1][i];
      row.finer = opts.levels == 3 ? levels[2][i] : std::numeric_limits<double>::quiet_NaN();
      row.ratio = opts.levels == 3 ? (row.coarse - row.fine) / (row.fine - row.finer) : std::numeric_limits<double>::quiet_NaN();
      row.error_band = std::abs(row.coarse - row.fine) / 3.0;
      res.refinement.push_back(row);
    }
  return res;
}

}  // namespace drumcorners
