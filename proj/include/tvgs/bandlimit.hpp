#pragma once

#include "tvgs/joint_spectrum.hpp"

namespace tvgs {

/// Zeroes every joint coefficient outside `supp`.
TvgSignal project_to_support(const TvgSignal& x, const SpectralSupport& supp, const Graph& g,
                             const TemporalBasis& t);

enum class LowpassMode {
  /// Greedy by descending bin magnitude.
  Greedy,
  /// Smallest symmetric low-frequency window around DC.
  Contiguous,
};

struct CompressOptions {
  double energy_keep = 0.9;
  Index b_graph_keep = 1;
  LowpassMode mode = LowpassMode::Greedy;
};

struct CompressResult {
  TvgSignal signal;
  SpectralSupport support;
  JointSpectrum spectrum;
  double input_energy = 0.0;
  double output_energy = 0.0;
};

/// Builds a jointly bandlimited approximation: keeps the `b_graph_keep`
/// highest-energy spectrum rows, then within each kept row the fewest bins
/// whose energy reaches `energy_keep` of that row. Conjugate partners
/// (f, T - f) are kept together when the input is real and U_T is the DFT,
/// so real input yields real output.
CompressResult compress_to_jbl(const TvgSignal& x, const Graph& g, const TemporalBasis& t,
                               const CompressOptions& options);

}  // namespace tvgs
