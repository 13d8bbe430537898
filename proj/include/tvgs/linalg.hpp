#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace tvgs {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Sorted, duplicate-free list of 0-based indices. Text formats convert to
/// 1-based at the I/O boundary.
using IndexSet = std::vector<Index>;

/// Exact sampling ratios and bounds.
using Ratio = boost::rational<std::int64_t>;

std::string format_ratio(const Ratio& r);  // "p/q"

/// Every numeric tolerance used by the library, in one record.
struct NumericPolicy {
  // Rank threshold: sigma counted when sigma > max(rows, cols) * eps * sigma_max * rank_safety.
  double rank_safety = 64.0;
  // When positive, replaces the threshold above with sigma > rank_rtol * sigma_max.
  double rank_rtol = 0.0;
  double symmetry_tol = 1e-9;
  double eigen_tie_tol = 1e-9;   // relative to max eigenvalue
  double sign_tol = 1e-12;
  double support_eps_rel = 1e-9;
  double pivot_tie_rtol = 1e-10;

  double rank_threshold(Index rows, Index cols, double sigma_max) const;

  /// Defaults with TVGS_RANK_RTOL applied when set.
  static NumericPolicy from_environment();
};

/// Process-wide policy, read from the environment once on first use.
const NumericPolicy& default_policy();

RealVector singular_values(const ComplexMatrix& a);

Index numeric_rank(const ComplexMatrix& a, const NumericPolicy& policy = default_policy());

/// Smallest singular value, 0 for empty matrices.
/// Rank of a block cut from a unitary basis. Entries are unit-scale, so the
/// threshold is taken relative to max(sigma_max, 1): an all-tiny block has
/// rank 0 rather than being judged against its own size.
Index basis_block_rank(const ComplexMatrix& a, const NumericPolicy& policy = default_policy());
double min_singular_value(const ComplexMatrix& a);

/// Greedy pivoted row selection: repeatedly takes the candidate row of `a`
/// with the largest residual norm (ties to the lower index) and projects it
/// out of the remaining rows. Returns the chosen row indices in pick order.
/// Stops early if every remaining residual is below the rank threshold.
std::vector<Index> pivoted_row_selection(const ComplexMatrix& a, std::span<const Index> candidates,
                                         Index count, const NumericPolicy& policy = default_policy());

/// a(rows, cols) as a dense copy.
ComplexMatrix submatrix(const ComplexMatrix& a, std::span<const Index> rows,
                        std::span<const Index> cols);

IndexSet iota_set(Index n);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);
IndexSet sorted_unique(std::vector<Index> v);

}  // namespace tvgs
