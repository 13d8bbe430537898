#pragma once

#include <vector>

#include "tvgs/joint_spectrum.hpp"

namespace tvgs {

/// One stage of the multi-band scheme: a group of time-frequency bins that
/// share the same active graph-frequency rows, and the vertex/time indices
/// sampled for it.
struct SubBand {
  IndexSet rows;      // graph frequencies of the band
  IndexSet cols;      // time-frequency bins of the band
  IndexSet vertices;  // |vertices| == |rows|
  IndexSet times;     // |times| == |cols|

  Index sample_count() const { return static_cast<Index>(vertices.size() * times.size()); }
};

struct SamplingPlan {
  Index n_vertices = 0;
  Index period = 0;
  std::vector<SubBand> bands;
  IndexSet vertex_candidates;  // rank U_G(candidates, I) = |I|
  IndexSet vertices_used;      // union of the bands' vertices
  Index total_samples = 0;

  Ratio ratio() const;
};

/// Per-band sampled values, shape |vertices| x |times| for each band.
struct SampleSet {
  std::vector<ComplexMatrix> bands;
};

/// |rows| vertices whose rows of U_G(., rows) are linearly independent,
/// by pivoted elimination (largest residual row norm, lower index on ties).
/// Returned sorted.
IndexSet select_vertices(const Graph& g, const IndexSet& rows,
                         const NumericPolicy& policy = default_policy());

/// Same selection restricted to `candidates`; throws RankDeficient when the
/// candidates cannot reach full rank.
IndexSet select_band_vertices(const Graph& g, const IndexSet& rows, const IndexSet& candidates,
                              const NumericPolicy& policy = default_policy());

struct BandPattern {
  IndexSet rows;
  IndexSet cols;
};

/// Groups active bins by identical row pattern. Groups ordered by |rows|
/// descending, then by first bin.
std::vector<BandPattern> partition_bands(const SpectralSupport& supp);

/// Time indices for a band: the first uniform grid {o, o + T/m, ...} (when m
/// divides T) passing the rank test, otherwise pivoted row selection on
/// U_T(., cols).
IndexSet select_band_times(const TemporalBasis& t, const IndexSet& cols,
                           const NumericPolicy& policy = default_policy());

SamplingPlan plan(const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                  const NumericPolicy& policy = default_policy());

/// Baseline that samples the whole I x F rectangle as one band.
SamplingPlan separate_plan(const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                           const NumericPolicy& policy = default_policy());

/// Band-projects `x` once per band and restricts it to the band's grid.
/// Bands are independent; `threads` > 1 spreads them over worker threads.
SampleSet sample(const TvgSignal& x, const SamplingPlan& p, const Graph& g, const TemporalBasis& t,
                 unsigned threads = 1);

/// (vertex, time) positions of every sample, in band order then row-major.
struct SamplePosition {
  Index vertex = 0;
  Index time = 0;
  Index band = 0;
};
std::vector<SamplePosition> sample_positions(const SamplingPlan& p);

/// Throws unless every plan invariant holds against `supp`.
void validate_plan(const SamplingPlan& p, const SpectralSupport& supp, const Graph& g,
                   const TemporalBasis& t, bool critical = true,
                   const NumericPolicy& policy = default_policy());

}  // namespace tvgs
