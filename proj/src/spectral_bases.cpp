#include "tvgs/spectral_bases.hpp"

#include <cmath>
#include <numbers>

#include "tvgs/error.hpp"

namespace tvgs {

namespace {

void apply_sign_convention(RealMatrix& vecs, double sign_tol) {
  for (Index c = 0; c < vecs.cols(); ++c) {
    for (Index r = 0; r < vecs.rows(); ++r) {
      if (std::abs(vecs(r, c)) > sign_tol) {
        if (vecs(r, c) < 0.0) vecs.col(c) = -vecs.col(c);
        break;
      }
    }
  }
}

// Orthonormal basis of span(group) chosen by pivoted Gram-Schmidt over P e_j.
RealMatrix canonical_group_basis(const RealMatrix& group, double pivot_tie_rtol) {
  const Index n = group.rows();
  const Index k = group.cols();
  RealMatrix residual = group * group.transpose();  // projector columns P e_j
  RealMatrix out(n, k);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index step = 0; step < k; ++step) {
    Index best = -1;
    double best_norm = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double nj = residual.col(j).norm();
      if (best < 0 || nj > best_norm * (1.0 + pivot_tie_rtol)) {
        best = j;
        best_norm = nj;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    RealVector q = residual.col(best) / best_norm;
    for (Index p = 0; p < step; ++p) q -= out.col(p) * out.col(p).dot(q);
    // Stay inside the eigenspace.
    q = group * (group.transpose() * q);
    q.normalize();
    out.col(step) = q;
    for (Index j = 0; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)]) residual.col(j) -= q * q.dot(residual.col(j));
    }
  }
  return out;
}

}  // namespace

void deterministic_eigen(const RealMatrix& symmetric, RealVector& eigvals, RealMatrix& eigvecs,
                         const NumericPolicy& policy) {
  const Index n = symmetric.rows();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::RankDeficient, "symmetric eigensolver did not converge");
  }
  eigvals = solver.eigenvalues();
  eigvecs = solver.eigenvectors();

  const double lmax = n > 0 ? std::max(std::abs(eigvals(0)), std::abs(eigvals(n - 1))) : 0.0;
  const double tie = policy.eigen_tie_tol * (lmax > 0.0 ? lmax : 1.0);
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && eigvals(stop) - eigvals(stop - 1) <= tie) ++stop;
    if (stop - start > 1) {
      eigvecs.middleCols(start, stop - start) =
          canonical_group_basis(eigvecs.middleCols(start, stop - start), policy.pivot_tie_rtol);
    }
    start = stop;
  }
  apply_sign_convention(eigvecs, policy.sign_tol);
}

Graph build_graph(const RealMatrix& weights, const NumericPolicy& policy) {
  if (weights.rows() != weights.cols()) {
    throw Error(ErrorCode::NonSquare, "weight matrix is " + std::to_string(weights.rows()) + "x" +
                                          std::to_string(weights.cols()));
  }
  if (weights.rows() == 0) throw Error(ErrorCode::Empty, "graph needs at least one vertex");
  if (!weights.allFinite()) throw Error(ErrorCode::NonNumeric, "weight matrix has non-finite entries");

  const Index n = weights.rows();
  const double scale = std::max(1.0, weights.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (weights(i, j) < 0.0) {
        throw Error(ErrorCode::NegativeWeight, "negative weight at (" + std::to_string(i + 1) + "," +
                                                   std::to_string(j + 1) + ")");
      }
      if (std::abs(weights(i, j) - weights(j, i)) > policy.symmetry_tol * scale) {
        throw Error(ErrorCode::Asymmetric, "weights differ at (" + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + ")");
      }
    }
  }

  Graph g;
  g.weights_ = 0.5 * (weights + weights.transpose());
  g.weights_.diagonal().setZero();
  const RealVector degree = g.weights_.rowwise().sum();
  g.laplacian_ = -g.weights_;
  g.laplacian_.diagonal() = degree;

  deterministic_eigen(g.laplacian_, g.eigvals_, g.eigvecs_, policy);
  // L is PSD; round-off can push the null eigenvalue slightly negative.
  g.eigvals_ = g.eigvals_.cwiseMax(0.0);
  g.basis_ = g.eigvecs_.cast<Complex>();
  return g;
}

TemporalBasis dft_basis(Index period) {
  if (period < 1) throw Error(ErrorCode::ZeroPeriod, "temporal period must be positive");
  TemporalBasis t;
  t.kind_ = TemporalKind::DftDirectedCycle;
  t.basis_.resize(period, period);
  t.eigvals_.resize(period);
  const double norm = 1.0 / std::sqrt(static_cast<double>(period));
  for (Index n = 0; n < period; ++n) {
    for (Index m = 0; m < period; ++m) {
      // Reduce n*m mod T first so large periods keep full phase accuracy.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((n * m) % period) /
                           static_cast<double>(period);
      t.basis_(n, m) = std::polar(norm, phase);
    }
    t.eigvals_(n) = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                          static_cast<double>(period));
  }
  return t;
}

TemporalBasis cycle_laplacian_basis(Index period, const NumericPolicy& policy) {
  if (period < 3) {
    throw Error(ErrorCode::PeriodTooSmall, "undirected cycle needs at least 3 nodes");
  }
  RealMatrix lap = RealMatrix::Zero(period, period);
  for (Index i = 0; i < period; ++i) {
    const Index next = (i + 1) % period;
    lap(i, next) = lap(next, i) = -1.0;
    lap(i, i) = 2.0;
  }
  TemporalBasis t;
  t.kind_ = TemporalKind::LaplacianUndirectedCycle;
  RealMatrix vecs;
  deterministic_eigen(lap, t.eigvals_, vecs, policy);
  t.eigvals_ = t.eigvals_.cwiseMax(0.0);
  t.basis_ = vecs.cast<Complex>();
  return t;
}

TemporalBasis make_temporal_basis(TemporalKind kind, Index period) {
  return kind == TemporalKind::DftDirectedCycle ? dft_basis(period) : cycle_laplacian_basis(period);
}

ComplexMatrix gft(const ComplexMatrix& x, const Graph& g) {
  if (x.rows() != g.n_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "signal has " + std::to_string(x.rows()) +
                                                  " rows, graph has " +
                                                  std::to_string(g.n_vertices()) + " vertices");
  }
  return g.basis().adjoint() * x;
}

ComplexMatrix igft(const ComplexMatrix& xhat, const Graph& g) {
  if (xhat.rows() != g.n_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum rows do not match graph size");
  }
  return g.basis() * xhat;
}

ComplexMatrix time_transform(const ComplexMatrix& x, const TemporalBasis& t) {
  if (x.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "signal has " + std::to_string(x.cols()) +
                                                  " columns, period is " +
                                                  std::to_string(t.period()));
  }
  return x * t.basis().conjugate();
}

ComplexMatrix inverse_time_transform(const ComplexMatrix& xhat, const TemporalBasis& t) {
  if (xhat.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum columns do not match period");
  }
  return xhat * t.basis().transpose();
}

}  // namespace tvgs
