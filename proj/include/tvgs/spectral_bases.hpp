#pragma once

#include "tvgs/linalg.hpp"

namespace tvgs {

/// Undirected weighted graph together with its combinatorial Laplacian
/// L = D - W and a deterministic orthonormal eigenbasis of L.
///
/// Eigenvalues are ascending. Within a group of tied eigenvalues the basis is
/// rebuilt from the group's projector so that it depends on the eigenspace
/// only. Every eigenvector is sign-normalised so that its first entry with
/// magnitude above the sign tolerance is positive.
class Graph {
 public:
  Index n_vertices() const { return weights_.rows(); }
  const RealMatrix& weights() const { return weights_; }
  const RealMatrix& laplacian() const { return laplacian_; }
  const RealMatrix& eigvecs() const { return eigvecs_; }
  const RealVector& eigvals() const { return eigvals_; }
  /// eigvecs() as a complex matrix, cached for the transform routines.
  const ComplexMatrix& basis() const { return basis_; }

 private:
  friend Graph build_graph(const RealMatrix& weights, const NumericPolicy& policy);
  RealMatrix weights_;
  RealMatrix laplacian_;
  RealMatrix eigvecs_;
  RealVector eigvals_;
  ComplexMatrix basis_;
};

/// Validates `weights` (square, symmetric within tolerance, nonnegative),
/// zeroes the diagonal and symmetrises exactly before decomposing.
Graph build_graph(const RealMatrix& weights, const NumericPolicy& policy = default_policy());

enum class TemporalKind { DftDirectedCycle, LaplacianUndirectedCycle };

/// T x T unitary time-domain basis U_T; forward time analysis is X * conj(U_T).
class TemporalBasis {
 public:
  Index period() const { return basis_.rows(); }
  TemporalKind kind() const { return kind_; }
  const ComplexMatrix& basis() const { return basis_; }
  /// Undirected-cycle Laplacian eigenvalue of each column. DFT columns are
  /// eigenvectors of that Laplacian too, with value 2 - 2cos(2 pi k / T).
  const RealVector& eigvals() const { return eigvals_; }

 private:
  friend TemporalBasis dft_basis(Index period);
  friend TemporalBasis cycle_laplacian_basis(Index period, const NumericPolicy& policy);
  TemporalKind kind_ = TemporalKind::DftDirectedCycle;
  ComplexMatrix basis_;
  RealVector eigvals_;
};

/// basis(n, m) = exp(+j 2 pi n m / T) / sqrt(T), 0-based n, m.
TemporalBasis dft_basis(Index period);

/// Eigenbasis of the unit-weight undirected cycle on `period` >= 3 nodes.
TemporalBasis cycle_laplacian_basis(Index period, const NumericPolicy& policy = default_policy());

TemporalBasis make_temporal_basis(TemporalKind kind, Index period);

/// Real symmetric eigendecomposition with the deterministic conventions used
/// by Graph: ascending eigenvalues, projector-based tie handling, sign rule.
void deterministic_eigen(const RealMatrix& symmetric, RealVector& eigvals, RealMatrix& eigvecs,
                         const NumericPolicy& policy = default_policy());

/// eigvecs^H * X.
ComplexMatrix gft(const ComplexMatrix& x, const Graph& g);
/// eigvecs * Xhat.
ComplexMatrix igft(const ComplexMatrix& xhat, const Graph& g);
/// X * conj(U_T).
ComplexMatrix time_transform(const ComplexMatrix& x, const TemporalBasis& t);
/// Xhat * U_T^T.
ComplexMatrix inverse_time_transform(const ComplexMatrix& xhat, const TemporalBasis& t);

}  // namespace tvgs
