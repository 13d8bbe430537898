#pragma once

#include "tvgs/sampling_planner.hpp"

namespace tvgs {

/// Recovers the signal band by band. For band k with A = U_G(vertices, rows)
/// and B = U_T(times, cols), solves Y = A C B^T for the band coefficients C
/// (both factors square by plan construction) and accumulates
/// U_G(., rows) C U_T(., cols)^T. Accumulation runs in band order whatever
/// the thread count, so the output is bit-stable.
TvgSignal reconstruct(const SampleSet& s, const SamplingPlan& p, const Graph& g,
                      const TemporalBasis& t, unsigned threads = 1,
                      const NumericPolicy& policy = default_policy());

/// ||a - b||_F / ||a||_F.
double nrmse(const TvgSignal& a, const TvgSignal& b);

}  // namespace tvgs
