#include "tvgs/joint_spectrum.hpp"

#include "tvgs/error.hpp"

namespace tvgs {

SpectralSupport::SpectralSupport(BoolMatrix mask) : mask_(std::move(mask)) {
  per_col_.assign(static_cast<std::size_t>(mask_.cols()), {});
  per_row_.assign(static_cast<std::size_t>(mask_.rows()), {});
  for (Index i = 0; i < mask_.rows(); ++i) {
    for (Index f = 0; f < mask_.cols(); ++f) {
      if (!mask_(i, f)) continue;
      per_col_[static_cast<std::size_t>(f)].push_back(i);
      per_row_[static_cast<std::size_t>(i)].push_back(f);
      ++b_joint_;
    }
  }
  for (Index i = 0; i < mask_.rows(); ++i) {
    if (!per_row_[static_cast<std::size_t>(i)].empty()) rows_active_.push_back(i);
  }
  for (Index f = 0; f < mask_.cols(); ++f) {
    if (!per_col_[static_cast<std::size_t>(f)].empty()) cols_active_.push_back(f);
  }
}

std::vector<std::pair<Index, Index>> SpectralSupport::entries() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(static_cast<std::size_t>(b_joint_));
  for (Index i = 0; i < mask_.rows(); ++i) {
    for (Index f : per_row_[static_cast<std::size_t>(i)]) out.emplace_back(i, f);
  }
  return out;
}

bool SpectralSupport::contains(const SpectralSupport& other) const {
  if (other.rows() != rows() || other.cols() != cols()) return false;
  return ((other.mask_.array() && !mask_.array()).count()) == 0;
}

JointSpectrum jft(const TvgSignal& x, const Graph& g, const TemporalBasis& t) {
  if (x.n_vertices() != g.n_vertices() || x.period() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "signal is " + std::to_string(x.n_vertices()) + "x" +
                                                  std::to_string(x.period()) + ", bases are " +
                                                  std::to_string(g.n_vertices()) + "x" +
                                                  std::to_string(t.period()));
  }
  return JointSpectrum{g.basis().adjoint() * x.data * t.basis().conjugate()};
}

TvgSignal ijft(const JointSpectrum& s, const Graph& g, const TemporalBasis& t) {
  if (s.coeffs.rows() != g.n_vertices() || s.coeffs.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum shape does not match bases");
  }
  return TvgSignal{g.basis() * s.coeffs * t.basis().transpose()};
}

SpectralSupport support_of(const JointSpectrum& s, double eps_rel) {
  if (!(eps_rel >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_rel must be >= 0");
  const Eigen::ArrayXXd mag = s.coeffs.cwiseAbs().array();
  const double peak = mag.size() > 0 ? mag.maxCoeff() : 0.0;
  BoolMatrix mask = (mag > eps_rel * peak).matrix();
  if (peak == 0.0) mask.setConstant(false);
  return SpectralSupport(std::move(mask));
}

}  // namespace tvgs
