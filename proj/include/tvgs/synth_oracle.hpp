#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tvgs/sampling_planner.hpp"

namespace tvgs {

/// Seeded generator with a fixed, platform-independent output stream:
/// std::mt19937_64 bits (fully specified by the standard) turned into
/// variates by hand rather than through the implementation-defined std
/// distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, 1) with 53 random mantissa bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [0, n).
  Index below(Index n);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<Index>(i)))]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Erdos-Renyi graph, weights uniform in (0, 1].
Graph random_graph(Index n, double edge_prob, std::uint64_t seed);

struct JblInstance {
  TvgSignal signal;
  JointSpectrum spectrum;
  SpectralSupport support;
};

/// Picks `b_graph` random rows; in each, every bin is active with
/// probability `fill` (at least one bin per row). Coefficients are standard
/// complex Gaussian on the support.
JblInstance random_jbl(const Graph& g, const TemporalBasis& t, Index b_graph, double fill,
                       std::uint64_t seed);

/// The 4 x 4 worked example: a fixed signal, a fixed spectrum and the
/// spectrum's support. The signal is not the inverse transform of the
/// spectrum; treat them as separate fixtures.
struct ExampleFixture {
  TvgSignal signal;
  JointSpectrum spectrum;
  SpectralSupport support;
};
ExampleFixture example_fixture();

/// A real N x L recording of a few shared smooth sources mixed into every
/// channel plus independent noise, so channels are correlated.
RealMatrix correlated_series(Index n, Index length, std::uint64_t seed);

/// One linear measurement of the joint coefficients: the value at (vertex,
/// time) of the signal projected onto `band_cols` (empty = no projection,
/// i.e. a raw sample of X).
struct OracleMeasurement {
  Index vertex = 0;
  Index time = 0;
  IndexSet band_cols;
};

struct OracleResult {
  TvgSignal signal;
  ComplexVector coefficients;  // support entries, row-major
  double residual = 0.0;       // ||M c - y|| / ||y||
};

/// Least-squares solve of the vectorised system over all B support
/// coefficients, then inverse transform. Throws RankDeficientSystem unless
/// the measurement matrix has full column rank B.
OracleResult oracle_recover(const ComplexVector& values, const std::vector<OracleMeasurement>& rows,
                            const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                            const NumericPolicy& policy = default_policy());

/// Measurement rows and stacked values matching a plan's samples.
std::vector<OracleMeasurement> oracle_measurements(const SamplingPlan& p);
ComplexVector flatten_samples(const SampleSet& s);

/// Rank by full Jacobi SVD at the shared tolerance.
Index oracle_rank(const ComplexMatrix& m, const NumericPolicy& policy = default_policy());

}  // namespace tvgs
