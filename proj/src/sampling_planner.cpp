#include "tvgs/sampling_planner.hpp"

#include <algorithm>
#include <map>

#include "parallel.hpp"
#include "tvgs/error.hpp"

namespace tvgs {

Ratio SamplingPlan::ratio() const {
  const std::int64_t denom = static_cast<std::int64_t>(n_vertices) * period;
  if (denom == 0) return Ratio(0);
  return Ratio(static_cast<std::int64_t>(total_samples), denom);
}

IndexSet select_band_vertices(const Graph& g, const IndexSet& rows, const IndexSet& candidates,
                              const NumericPolicy& policy) {
  if (rows.empty()) return {};
  const ComplexMatrix cols_of_basis = submatrix(g.basis(), iota_set(g.n_vertices()), rows);
  auto picked = pivoted_row_selection(cols_of_basis, candidates, static_cast<Index>(rows.size()),
                                      policy);
  if (picked.size() != rows.size()) {
    throw Error(ErrorCode::RankDeficient,
                "vertex candidates span only " + std::to_string(picked.size()) + " of " +
                    std::to_string(rows.size()) + " graph frequencies");
  }
  return sorted_unique(std::move(picked));
}

IndexSet select_vertices(const Graph& g, const IndexSet& rows, const NumericPolicy& policy) {
  return select_band_vertices(g, rows, iota_set(g.n_vertices()), policy);
}

std::vector<BandPattern> partition_bands(const SpectralSupport& supp) {
  std::map<IndexSet, IndexSet> by_pattern;
  for (Index f : supp.cols_active()) by_pattern[supp.rows_in_col(f)].push_back(f);
  std::vector<BandPattern> bands;
  bands.reserve(by_pattern.size());
  for (auto& [rows, cols] : by_pattern) bands.push_back({rows, cols});
  std::sort(bands.begin(), bands.end(), [](const BandPattern& a, const BandPattern& b) {
    if (a.rows.size() != b.rows.size()) return a.rows.size() > b.rows.size();
    return a.cols.front() < b.cols.front();
  });
  return bands;
}

IndexSet select_band_times(const TemporalBasis& t, const IndexSet& cols,
                           const NumericPolicy& policy) {
  const Index period = t.period();
  const Index m = static_cast<Index>(cols.size());
  if (m == 0) return {};
  if (m > period) throw Error(ErrorCode::InvalidArgument, "band has more bins than the period");

  if (period % m == 0) {
    const Index stride = period / m;
    for (Index offset = 0; offset < stride; ++offset) {
      IndexSet grid(static_cast<std::size_t>(m));
      for (Index k = 0; k < m; ++k) grid[static_cast<std::size_t>(k)] = offset + k * stride;
      if (basis_block_rank(submatrix(t.basis(), grid, cols), policy) == m) return grid;
    }
  }
  const ComplexMatrix band_cols = submatrix(t.basis(), iota_set(period), cols);
  const IndexSet all = iota_set(period);
  auto picked = pivoted_row_selection(band_cols, all, m, policy);
  IndexSet times = sorted_unique(std::move(picked));
  if (static_cast<Index>(times.size()) != m ||
      basis_block_rank(submatrix(t.basis(), times, cols), policy) != m) {
    throw Error(ErrorCode::RankDeficient, "no full-rank time subset for band");
  }
  return times;
}

namespace {

SamplingPlan empty_plan(const SpectralSupport& supp) {
  SamplingPlan p;
  p.n_vertices = supp.rows();
  p.period = supp.cols();
  return p;
}

void check_shapes(const SpectralSupport& supp, const Graph& g, const TemporalBasis& t) {
  if (supp.rows() != g.n_vertices() || supp.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "support is " + std::to_string(supp.rows()) + "x" +
                                                  std::to_string(supp.cols()) + ", bases are " +
                                                  std::to_string(g.n_vertices()) + "x" +
                                                  std::to_string(t.period()));
  }
}

void finish(SamplingPlan& p) {
  std::vector<Index> used;
  p.total_samples = 0;
  for (const auto& band : p.bands) {
    used.insert(used.end(), band.vertices.begin(), band.vertices.end());
    p.total_samples += band.sample_count();
  }
  p.vertices_used = sorted_unique(std::move(used));
}

}  // namespace

SamplingPlan plan(const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                  const NumericPolicy& policy) {
  check_shapes(supp, g, t);
  SamplingPlan p = empty_plan(supp);
  if (supp.b_joint() == 0) return p;

  p.vertex_candidates = select_vertices(g, supp.rows_active(), policy);
  for (auto& pattern : partition_bands(supp)) {
    SubBand band;
    band.vertices = select_band_vertices(g, pattern.rows, p.vertex_candidates, policy);
    band.times = select_band_times(t, pattern.cols, policy);
    band.rows = std::move(pattern.rows);
    band.cols = std::move(pattern.cols);
    p.bands.push_back(std::move(band));
  }
  finish(p);
  return p;
}

SamplingPlan separate_plan(const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                           const NumericPolicy& policy) {
  check_shapes(supp, g, t);
  SamplingPlan p = empty_plan(supp);
  if (supp.b_joint() == 0) return p;

  p.vertex_candidates = select_vertices(g, supp.rows_active(), policy);
  SubBand band;
  band.rows = supp.rows_active();
  band.cols = supp.cols_active();
  band.vertices = p.vertex_candidates;
  band.times = select_band_times(t, band.cols, policy);
  p.bands.push_back(std::move(band));
  finish(p);
  return p;
}

SampleSet sample(const TvgSignal& x, const SamplingPlan& p, const Graph& g, const TemporalBasis& t,
                 unsigned threads) {
  if (x.n_vertices() != p.n_vertices || x.period() != p.period ||
      g.n_vertices() != p.n_vertices || t.period() != p.period) {
    throw Error(ErrorCode::DimensionMismatch, "signal, bases and plan disagree on N x T");
  }
  const JointSpectrum s = jft(x, g, t);
  SampleSet out;
  out.bands.resize(p.bands.size());
  const IndexSet all_rows = iota_set(p.n_vertices);
  detail::parallel_for(p.bands.size(), threads, [&](std::size_t k) {
    const SubBand& band = p.bands[k];
    // Band projection keeps every graph frequency in the band's bins, then
    // the result is restricted to the band's vertex x time grid.
    const ComplexMatrix band_coeffs = submatrix(s.coeffs, all_rows, band.cols);
    const ComplexMatrix ug = submatrix(g.basis(), band.vertices, all_rows);
    const ComplexMatrix ut = submatrix(t.basis(), band.times, band.cols);
    out.bands[k] = ug * band_coeffs * ut.transpose();
  });
  return out;
}

std::vector<SamplePosition> sample_positions(const SamplingPlan& p) {
  std::vector<SamplePosition> out;
  out.reserve(static_cast<std::size_t>(p.total_samples));
  for (std::size_t k = 0; k < p.bands.size(); ++k) {
    for (Index v : p.bands[k].vertices) {
      for (Index tau : p.bands[k].times) out.push_back({v, tau, static_cast<Index>(k)});
    }
  }
  return out;
}

void validate_plan(const SamplingPlan& p, const SpectralSupport& supp, const Graph& g,
                   const TemporalBasis& t, bool critical, const NumericPolicy& policy) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidArgument, "plan: " + why); };
  if (p.n_vertices != supp.rows() || p.period != supp.cols()) fail("shape differs from support");
  check_shapes(supp, g, t);

  std::vector<Index> all_cols;
  Index total = 0;
  for (const auto& band : p.bands) {
    if (band.vertices.size() != band.rows.size()) fail("|vertices| != |rows| in a band");
    if (band.times.size() != band.cols.size()) fail("|times| != |cols| in a band");
    if (!is_subset(band.vertices, p.vertex_candidates)) fail("band vertex outside candidate set");
    const Index nr = static_cast<Index>(band.rows.size());
    const Index nc = static_cast<Index>(band.cols.size());
    if (basis_block_rank(submatrix(g.basis(), band.vertices, band.rows), policy) != nr) {
      fail("vertex block is rank deficient");
    }
    if (basis_block_rank(submatrix(t.basis(), band.times, band.cols), policy) != nc) {
      fail("time block is rank deficient");
    }
    if (critical) {
      for (Index f : band.cols) {
        if (supp.rows_in_col(f) != band.rows) fail("bin pattern differs from band rows");
      }
    }
    all_cols.insert(all_cols.end(), band.cols.begin(), band.cols.end());
    total += band.sample_count();
  }
  const std::size_t n_cols = all_cols.size();
  const IndexSet cols = sorted_unique(std::move(all_cols));
  if (cols.size() != n_cols) fail("bands overlap in frequency");
  if (cols != supp.cols_active()) fail("bands do not cover the active bins");
  if (total != p.total_samples) fail("total_samples mismatch");
  if (critical && total != supp.b_joint()) fail("sample count differs from joint bandwidth");
  if (!is_subset(p.vertices_used, p.vertex_candidates)) fail("used vertices outside candidates");
  if (static_cast<Index>(p.vertices_used.size()) > supp.b_graph()) fail("too many vertices used");
}

}  // namespace tvgs
