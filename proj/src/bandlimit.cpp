#include "tvgs/bandlimit.hpp"

#include <algorithm>
#include <numeric>

#include "tvgs/error.hpp"

namespace tvgs {

namespace {

// Bins that must be kept or dropped together.
using BinGroup = std::vector<Index>;

std::vector<BinGroup> bin_groups(Index period, bool pair_conjugates) {
  std::vector<BinGroup> groups;
  if (!pair_conjugates) {
    for (Index f = 0; f < period; ++f) groups.push_back({f});
    return groups;
  }
  groups.push_back({0});
  for (Index f = 1; 2 * f < period; ++f) groups.push_back({f, period - f});
  if (period % 2 == 0 && period > 1) groups.push_back({period / 2});
  return groups;
}

bool is_real(const ComplexMatrix& x) {
  const double scale = x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
  return x.size() == 0 || x.imag().cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1e-300);
}

// Returns the kept bins of one spectrum row.
std::vector<Index> select_row_bins(const Eigen::RowVectorXcd& row, double keep,
                                   const std::vector<BinGroup>& groups, LowpassMode mode,
                                   TemporalKind kind) {
  const double total = row.squaredNorm();
  std::vector<Index> kept;
  if (total == 0.0) return kept;
  const double target = keep * total * (1.0 - 1e-12);
  const Index period = row.size();

  if (mode == LowpassMode::Contiguous) {
    if (kind == TemporalKind::DftDirectedCycle) {
      // Symmetric window {0, +-1, ..., +-w} around DC.
      double acc = 0.0;
      std::vector<bool> seen(static_cast<std::size_t>(period), false);
      for (Index w = 0; 2 * w <= period; ++w) {
        for (Index f : {w, (period - w) % period}) {
          if (seen[static_cast<std::size_t>(f)]) continue;
          seen[static_cast<std::size_t>(f)] = true;
          kept.push_back(f);
          acc += std::norm(row(f));
        }
        if (acc >= target) break;
      }
    } else {
      double acc = 0.0;
      for (Index f = 0; f < period && acc < target; ++f) {
        kept.push_back(f);
        acc += std::norm(row(f));
      }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
  }

  std::vector<double> peak(groups.size(), 0.0);
  std::vector<double> energy(groups.size(), 0.0);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (Index f : groups[k]) {
      peak[k] = std::max(peak[k], std::abs(row(f)));
      energy[k] += std::norm(row(f));
    }
  }
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return peak[a] > peak[b]; });
  double acc = 0.0;
  for (std::size_t k : order) {
    if (acc >= target) break;
    kept.insert(kept.end(), groups[k].begin(), groups[k].end());
    acc += energy[k];
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

TvgSignal project_to_support(const TvgSignal& x, const SpectralSupport& supp, const Graph& g,
                             const TemporalBasis& t) {
  JointSpectrum s = jft(x, g, t);
  if (supp.rows() != s.coeffs.rows() || supp.cols() != s.coeffs.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "support shape does not match signal");
  }
  for (Index i = 0; i < s.coeffs.rows(); ++i) {
    for (Index f = 0; f < s.coeffs.cols(); ++f) {
      if (!supp.mask()(i, f)) s.coeffs(i, f) = 0.0;
    }
  }
  return ijft(s, g, t);
}

CompressResult compress_to_jbl(const TvgSignal& x, const Graph& g, const TemporalBasis& t,
                               const CompressOptions& options) {
  if (!(options.energy_keep > 0.0 && options.energy_keep <= 1.0)) {
    throw Error(ErrorCode::BadFraction, "energy_keep must lie in (0, 1]");
  }
  if (options.b_graph_keep < 1 || options.b_graph_keep > g.n_vertices()) {
    throw Error(ErrorCode::BadRowCount, "b_graph_keep must lie in [1, N]");
  }
  const JointSpectrum full = jft(x, g, t);
  const Index n = full.coeffs.rows();
  const Index period = full.coeffs.cols();

  const RealVector row_energy = full.coeffs.rowwise().squaredNorm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return row_energy(a) > row_energy(b); });

  const bool pair = t.kind() == TemporalKind::DftDirectedCycle && is_real(x.data);
  const auto groups = bin_groups(period, pair);

  CompressResult out;
  out.spectrum.coeffs = ComplexMatrix::Zero(n, period);
  BoolMatrix mask = BoolMatrix::Constant(n, period, false);
  for (Index k = 0; k < options.b_graph_keep; ++k) {
    const Index i = order[static_cast<std::size_t>(k)];
    const auto bins = select_row_bins(full.coeffs.row(i), options.energy_keep, groups,
                                      options.mode, t.kind());
    for (Index f : bins) {
      if (full.coeffs(i, f) == Complex(0.0, 0.0)) continue;
      out.spectrum.coeffs(i, f) = full.coeffs(i, f);
      mask(i, f) = true;
    }
  }
  out.support = SpectralSupport(std::move(mask));
  out.signal = ijft(out.spectrum, g, t);
  out.input_energy = x.data.squaredNorm();
  out.output_energy = out.spectrum.coeffs.squaredNorm();
  return out;
}

}  // namespace tvgs
