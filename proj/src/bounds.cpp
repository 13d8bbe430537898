#include "tvgs/bounds.hpp"

#include "tvgs/error.hpp"

namespace tvgs {

namespace {

void check_indices(const IndexSet& s, Index n, const char* what) {
  for (Index v : s) {
    if (v < 0 || v >= n) throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index out of range");
  }
}

void check_sg_prime(const Graph& g, const SpectralSupport& supp, const IndexSet& sg_prime,
                    const IndexSet& theta, const NumericPolicy& policy) {
  if (supp.rows() != g.n_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "support rows do not match graph size");
  }
  check_indices(sg_prime, g.n_vertices(), "sg_prime");
  check_indices(theta, g.n_vertices(), "theta");
  if (theta.empty()) throw Error(ErrorCode::EmptyTheta, "theta must be nonempty");
  if (supp.b_joint() == 0) return;
  if (!is_subset(theta, sg_prime)) throw Error(ErrorCode::VertexSetInvalid, "theta not within sg_prime");
  const auto& rows = supp.rows_active();
  if (basis_block_rank(submatrix(g.basis(), sg_prime, rows), policy) != static_cast<Index>(rows.size())) {
    throw Error(ErrorCode::VertexSetInvalid, "U_G(sg_prime, I) does not have full column rank");
  }
}

SubsetBound make_bound(std::int64_t samples, Index theta_size, Index n, Index period) {
  SubsetBound b;
  b.samples = samples;
  b.ratio = Ratio(samples, static_cast<std::int64_t>(theta_size) * period);
  b.ratio_over_all = Ratio(samples, static_cast<std::int64_t>(n) * period);
  return b;
}

}  // namespace

ComplexMatrix kron_selected_matrix(const Graph& g, const TemporalBasis& t, const IndexSet& row_verts,
                                   const SpectralSupport& supp, const IndexSet& sg_prime) {
  check_indices(row_verts, g.n_vertices(), "row vertex");
  check_indices(sg_prime, g.n_vertices(), "sg_prime");
  if (!is_subset(row_verts, sg_prime)) {
    throw Error(ErrorCode::IndexOutOfRange, "row vertices must lie in sg_prime");
  }
  if (supp.rows() != g.n_vertices() || supp.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "support shape does not match bases");
  }
  const Index period = t.period();
  const auto entries = supp.entries();
  ComplexMatrix m(static_cast<Index>(row_verts.size()) * period, static_cast<Index>(entries.size()));
  for (std::size_t a = 0; a < row_verts.size(); ++a) {
    for (Index tau = 0; tau < period; ++tau) {
      const Index r = static_cast<Index>(a) * period + tau;
      for (std::size_t c = 0; c < entries.size(); ++c) {
        const auto [i, f] = entries[c];
        m(r, static_cast<Index>(c)) = g.basis()(row_verts[a], i) * t.basis()(tau, f);
      }
    }
  }
  return m;
}

SubsetBound ftvgs_subset_bound(const Graph& g, const TemporalBasis& t, const SpectralSupport& supp,
                               const IndexSet& sg_prime, const IndexSet& theta,
                               const NumericPolicy& policy) {
  check_sg_prime(g, supp, sg_prime, theta, policy);
  if (supp.b_joint() == 0) {
    return make_bound(0, static_cast<Index>(theta.size()), g.n_vertices(), t.period());
  }
  const IndexSet complement = set_difference(sg_prime, theta);
  const Index r = basis_block_rank(kron_selected_matrix(g, t, complement, supp, sg_prime), policy);
  return make_bound(supp.b_joint() - r, static_cast<Index>(theta.size()), g.n_vertices(),
                    t.period());
}

std::vector<SubsetBound> per_vertex_bounds(const Graph& g, const TemporalBasis& t,
                                           const SpectralSupport& supp, const IndexSet& sg_prime,
                                           const NumericPolicy& policy) {
  std::vector<SubsetBound> out(static_cast<std::size_t>(g.n_vertices()),
                               make_bound(0, 1, g.n_vertices(), t.period()));
  for (Index v : sg_prime) {
    out[static_cast<std::size_t>(v)] = ftvgs_subset_bound(g, t, supp, sg_prime, {v}, policy);
  }
  return out;
}

Index binned_rank_sum(const Graph& g, const SpectralSupport& supp, const IndexSet& rows,
                      const NumericPolicy& policy) {
  if (rows.empty() || supp.b_joint() == 0) return 0;
  // The selected Kronecker matrix has a block-diagonal Gram matrix, one block
  // per bin, so its singular values are the union of the per-bin ones. The
  // threshold is the one that matrix would use.
  std::vector<RealVector> per_bin;
  double sigma_max = 1.0;
  for (Index f : supp.cols_active()) {
    per_bin.push_back(singular_values(submatrix(g.basis(), rows, supp.rows_in_col(f))));
    if (per_bin.back().size() > 0) sigma_max = std::max(sigma_max, per_bin.back()(0));
  }
  const double threshold = policy.rank_threshold(
      static_cast<Index>(rows.size()) * supp.cols(), supp.b_joint(), sigma_max);
  Index total = 0;
  for (const auto& sv : per_bin) total += static_cast<Index>((sv.array() > threshold).count());
  return total;
}

SubsetBound discrete_density_bound(const Graph& g, const SpectralSupport& supp,
                                   const IndexSet& sg_prime, const IndexSet& theta,
                                   const NumericPolicy& policy) {
  check_sg_prime(g, supp, sg_prime, theta, policy);
  if (supp.b_joint() == 0) {
    return make_bound(0, static_cast<Index>(theta.size()), g.n_vertices(), supp.cols());
  }
  const IndexSet complement = set_difference(sg_prime, theta);
  const Index r = binned_rank_sum(g, supp, complement, policy);
  return make_bound(supp.b_joint() - r, static_cast<Index>(theta.size()), g.n_vertices(),
                    supp.cols());
}

}  // namespace tvgs
