#include "tvgs/reconstruction.hpp"

#include "parallel.hpp"
#include "tvgs/error.hpp"

namespace tvgs {

namespace {

Eigen::PartialPivLU<ComplexMatrix> factor_square(const ComplexMatrix& m, const NumericPolicy& policy,
                                                 const char* which, std::size_t band) {
  if (m.rows() != m.cols() || basis_block_rank(m, policy) != m.rows()) {
    throw Error(ErrorCode::SingularBandSystem,
                std::string(which) + " system of band " + std::to_string(band + 1) +
                    " is not square and invertible");
  }
  return Eigen::PartialPivLU<ComplexMatrix>(m);
}

}  // namespace

TvgSignal reconstruct(const SampleSet& s, const SamplingPlan& p, const Graph& g,
                      const TemporalBasis& t, unsigned threads, const NumericPolicy& policy) {
  if (g.n_vertices() != p.n_vertices || t.period() != p.period) {
    throw Error(ErrorCode::DimensionMismatch, "bases do not match plan dimensions");
  }
  if (s.bands.size() != p.bands.size()) {
    throw Error(ErrorCode::ShapeMismatch, "sample set has " + std::to_string(s.bands.size()) +
                                              " bands, plan has " + std::to_string(p.bands.size()));
  }
  for (std::size_t k = 0; k < p.bands.size(); ++k) {
    const auto& band = p.bands[k];
    if (s.bands[k].rows() != static_cast<Index>(band.vertices.size()) ||
        s.bands[k].cols() != static_cast<Index>(band.times.size())) {
      throw Error(ErrorCode::ShapeMismatch, "samples of band " + std::to_string(k + 1) +
                                                " do not match the plan grid");
    }
  }

  std::vector<ComplexMatrix> parts(p.bands.size());
  const IndexSet all_vertices = iota_set(p.n_vertices);
  const IndexSet all_times = iota_set(p.period);
  detail::parallel_for(p.bands.size(), threads, [&](std::size_t k) {
    const auto& band = p.bands[k];
    const ComplexMatrix a = submatrix(g.basis(), band.vertices, band.rows);
    const ComplexMatrix b = submatrix(t.basis(), band.times, band.cols);
    const auto lu_a = factor_square(a, policy, "vertex", k);
    const auto lu_b = factor_square(b, policy, "time", k);
    // Y = A C B^T  =>  Z = A^{-1} Y,  C^T = B^{-1} Z^T.
    const ComplexMatrix z = lu_a.solve(s.bands[k]);
    const ComplexMatrix c = lu_b.solve(z.transpose()).transpose();
    parts[k] = submatrix(g.basis(), all_vertices, band.rows) * c *
               submatrix(t.basis(), all_times, band.cols).transpose();
  });

  TvgSignal out{ComplexMatrix::Zero(p.n_vertices, p.period)};
  for (const auto& part : parts) out.data += part;
  return out;
}

double nrmse(const TvgSignal& a, const TvgSignal& b) {
  if (a.data.rows() != b.data.rows() || a.data.cols() != b.data.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signals differ in shape");
  }
  const double ref = a.data.norm();
  if (ref == 0.0) throw Error(ErrorCode::ZeroReference, "reference signal has zero norm");
  return (a.data - b.data).norm() / ref;
}

}  // namespace tvgs
