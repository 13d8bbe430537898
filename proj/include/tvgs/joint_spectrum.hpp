#pragma once

#include <vector>

#include "tvgs/spectral_bases.hpp"

namespace tvgs {

/// N x T time-vertex signal: rows are vertices, columns are time instants.
struct TvgSignal {
  ComplexMatrix data;

  Index n_vertices() const { return data.rows(); }
  Index period() const { return data.cols(); }
};

/// Joint time-vertex Fourier coefficients; rows are graph frequencies,
/// columns are time frequencies.
struct JointSpectrum {
  ComplexMatrix coeffs;
};

/// Nonzero pattern of a joint spectrum and the bandwidth statistics derived
/// from it. All index sets are 0-based and sorted.
class SpectralSupport {
 public:
  SpectralSupport() = default;
  explicit SpectralSupport(BoolMatrix mask);

  const BoolMatrix& mask() const { return mask_; }
  Index rows() const { return mask_.rows(); }
  Index cols() const { return mask_.cols(); }

  /// Active graph frequencies (rows with at least one nonzero).
  const IndexSet& rows_active() const { return rows_active_; }
  /// Active time frequencies (columns with at least one nonzero).
  const IndexSet& cols_active() const { return cols_active_; }
  /// Rows active in column f, for every column (empty when inactive).
  const IndexSet& rows_in_col(Index f) const { return per_col_[static_cast<std::size_t>(f)]; }
  /// Columns active in row i, for every row (empty when inactive).
  const IndexSet& cols_in_row(Index i) const { return per_row_[static_cast<std::size_t>(i)]; }

  Index b_joint() const { return b_joint_; }
  Index b_graph() const { return static_cast<Index>(rows_active_.size()); }
  Index b_time() const { return static_cast<Index>(cols_active_.size()); }

  /// Support entries (i, f) in row-major order.
  std::vector<std::pair<Index, Index>> entries() const;

  bool contains(const SpectralSupport& other) const;
  bool operator==(const SpectralSupport& other) const { return mask_ == other.mask_; }

 private:
  BoolMatrix mask_;
  IndexSet rows_active_;
  IndexSet cols_active_;
  std::vector<IndexSet> per_col_;
  std::vector<IndexSet> per_row_;
  Index b_joint_ = 0;
};

/// U_G^H * X * conj(U_T).
JointSpectrum jft(const TvgSignal& x, const Graph& g, const TemporalBasis& t);
/// U_G * S * U_T^T.
TvgSignal ijft(const JointSpectrum& s, const Graph& g, const TemporalBasis& t);

/// mask(i, f) = |coeffs(i, f)| > eps_rel * max|coeffs|.
SpectralSupport support_of(const JointSpectrum& s, double eps_rel = default_policy().support_eps_rel);

}  // namespace tvgs
