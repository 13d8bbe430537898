#pragma once

#include <vector>

#include "tvgs/joint_spectrum.hpp"

namespace tvgs {

/// Rows (v, tau) for v in `row_verts` (vertex-major, tau = 0..T-1), columns
/// the support entries (i, f) in row-major order; entry U_G(v, i) U_T(tau, f).
/// `row_verts` must be a subset of `sg_prime`.
ComplexMatrix kron_selected_matrix(const Graph& g, const TemporalBasis& t, const IndexSet& row_verts,
                                   const SpectralSupport& supp, const IndexSet& sg_prime);

/// Lower bound on the sampling ratio of the vertices in theta.
struct SubsetBound {
  /// B - rank(...): the minimum number of samples on theta.
  std::int64_t samples = 0;
  /// samples / (|theta| T).
  Ratio ratio;
  /// samples / (N T), the same count normalised over the whole signal.
  Ratio ratio_over_all;
};

/// B - rank of the Kronecker-selected matrix over the complement of theta in sg_prime.
SubsetBound ftvgs_subset_bound(const Graph& g, const TemporalBasis& t, const SpectralSupport& supp,
                               const IndexSet& sg_prime, const IndexSet& theta,
                               const NumericPolicy& policy = default_policy());

/// Singleton bound for every vertex of sg_prime; vertices outside sg_prime get 0.
std::vector<SubsetBound> per_vertex_bounds(const Graph& g, const TemporalBasis& t,
                                           const SpectralSupport& supp, const IndexSet& sg_prime,
                                           const NumericPolicy& policy = default_policy());

/// Binned density bound: B - sum over active bins of rank U_G(theta^c, I_f),
/// each bin weighted 1/T.
SubsetBound discrete_density_bound(const Graph& g, const SpectralSupport& supp,
                                   const IndexSet& sg_prime, const IndexSet& theta,
                                   const NumericPolicy& policy = default_policy());

/// The rank sum used by discrete_density_bound.
Index binned_rank_sum(const Graph& g, const SpectralSupport& supp, const IndexSet& rows,
                      const NumericPolicy& policy = default_policy());

}  // namespace tvgs
