#include <doctest.h>

#include "test_util.hpp"
#include "tvgs/bandlimit.hpp"
#include "tvgs/error.hpp"

using namespace tvgs;

namespace {

TvgSignal real_signal(Index n, Index t, std::uint64_t seed) {
  return TvgSignal{correlated_series(n, t, seed).cast<Complex>()};
}

}  // namespace

TEST_CASE("projection onto a support is idempotent and stays inside it") {
  Rng rng(21);
  const Graph g = random_graph(6, 0.5, 2);
  const TemporalBasis t = dft_basis(8);
  const SpectralSupport supp(test::random_mask(6, 8, 0.3, rng));
  const TvgSignal x{test::random_complex(6, 8, rng)};
  const TvgSignal p = project_to_support(x, supp, g, t);
  CHECK(supp.contains(support_of(jft(p, g, t))));
  CHECK((project_to_support(p, supp, g, t).data - p.data).norm() <= 1e-12 * x.data.norm());
  // The residual is orthogonal to the projection.
  CHECK(std::abs((x.data - p.data).cwiseProduct(p.data.conjugate()).sum()) <= 1e-10);
  CHECK_THROWS_AS(project_to_support(x, SpectralSupport(BoolMatrix::Constant(5, 8, true)), g, t),
                  Error);
}

TEST_CASE("compress option validation") {
  const Graph g = test::path_graph(4);
  const TemporalBasis t = dft_basis(8);
  const TvgSignal x = real_signal(4, 8, 1);
  for (double keep : {0.0, -0.1, 1.5}) {
    CompressOptions o;
    o.energy_keep = keep;
    CHECK_THROWS_AS(compress_to_jbl(x, g, t, o), Error);
  }
  for (Index bg : {0, 5}) {
    CompressOptions o;
    o.b_graph_keep = bg;
    CHECK_THROWS_AS(compress_to_jbl(x, g, t, o), Error);
  }
}

TEST_CASE("keeping everything reproduces the input") {
  const Graph g = random_graph(5, 0.7, 9);
  const TemporalBasis t = dft_basis(12);
  const TvgSignal x = real_signal(5, 12, 3);
  CompressOptions o;
  o.energy_keep = 1.0;
  o.b_graph_keep = 5;
  const CompressResult r = compress_to_jbl(x, g, t, o);
  CHECK((r.signal.data - x.data).norm() <= 1e-12 * x.data.norm());
  CHECK(r.output_energy == doctest::Approx(r.input_energy).epsilon(1e-12));
}

TEST_CASE("compressed signals are jointly bandlimited as requested") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 3 + rng.below(8), period = 4 + rng.below(24);
    const Graph g = random_graph(n, 0.5, 200 + trial);
    const auto kind = trial % 2 == 0 ? TemporalKind::DftDirectedCycle
                                     : TemporalKind::LaplacianUndirectedCycle;
    const TemporalBasis t = make_temporal_basis(kind, period);
    const TvgSignal x = real_signal(n, period, 300 + trial);
    CompressOptions o;
    o.b_graph_keep = 1 + rng.below(n);
    o.energy_keep = 0.5 + 0.5 * rng.uniform();
    o.mode = trial % 3 == 0 ? LowpassMode::Contiguous : LowpassMode::Greedy;
    const CompressResult r = compress_to_jbl(x, g, t, o);

    CHECK(r.support.b_graph() == o.b_graph_keep);
    // The output is supported where it says it is.
    const JointSpectrum s = jft(r.signal, g, t);
    CHECK(r.support.contains(support_of(s)));
    CHECK((s.coeffs - r.spectrum.coeffs).norm() <= 1e-10 * (1.0 + r.spectrum.coeffs.norm()));
    // Each kept row retains at least the requested share of its energy.
    const JointSpectrum full = jft(x, g, t);
    for (Index i : r.support.rows_active()) {
      const double kept = r.spectrum.coeffs.row(i).squaredNorm();
      CHECK(kept >= o.energy_keep * full.coeffs.row(i).squaredNorm() * (1.0 - 1e-9));
    }
    // Kept rows are the most energetic ones.
    const RealVector energy = full.coeffs.rowwise().squaredNorm();
    double weakest_kept = 1e300, strongest_dropped = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (r.support.cols_in_row(i).empty()) {
        strongest_dropped = std::max(strongest_dropped, energy(i));
      } else {
        weakest_kept = std::min(weakest_kept, energy(i));
      }
    }
    CHECK(weakest_kept >= strongest_dropped);
    if (kind == TemporalKind::DftDirectedCycle) {
      // Conjugate bins travel together, so a real input stays real.
      CHECK(r.signal.data.imag().norm() <= 1e-10 * x.data.norm());
    }
    CHECK(r.output_energy <= r.input_energy * (1.0 + 1e-12));
  }
}

TEST_CASE("contiguous low-pass keeps a window around DC") {
  const Graph g = random_graph(4, 0.8, 3);
  const Index period = 16;
  const TvgSignal x = real_signal(4, period, 5);
  CompressOptions o;
  o.b_graph_keep = 4;
  o.energy_keep = 0.6;
  o.mode = LowpassMode::Contiguous;
  const CompressResult dft = compress_to_jbl(x, g, dft_basis(period), o);
  for (Index i : dft.support.rows_active()) {
    const IndexSet& bins = dft.support.cols_in_row(i);
    Index w = 0;
    for (Index f : bins) w = std::max(w, std::min(f, period - f));
    // Every bin within the window radius is present (unless exactly zero).
    for (Index f = 0; f < period; ++f) {
      if (std::min(f, period - f) <= w) {
        CHECK(std::find(bins.begin(), bins.end(), f) != bins.end());
      }
    }
  }
  const CompressResult cyc = compress_to_jbl(x, g, cycle_laplacian_basis(period), o);
  for (Index i : cyc.support.rows_active()) {
    const IndexSet& bins = cyc.support.cols_in_row(i);
    CHECK(bins == iota_set(bins.back() + 1));
  }
}

TEST_CASE("greedy mode keeps the largest coefficients of a row") {
  // One graph row with a clear ranking of time bins.
  const Graph g = build_graph(RealMatrix::Zero(1, 1));
  const TemporalBasis t = cycle_laplacian_basis(6);
  JointSpectrum s{ComplexMatrix::Zero(1, 6)};
  s.coeffs << 0.1, 3.0, 0.2, 2.0, 1.0, 0.05;
  const TvgSignal x = ijft(s, g, t);
  CompressOptions o;
  o.energy_keep = 13.0 / s.coeffs.squaredNorm();
  const CompressResult r = compress_to_jbl(x, g, t, o);
  CHECK(r.support.cols_in_row(0) == IndexSet{1, 3});
  o.energy_keep = 13.5 / s.coeffs.squaredNorm();
  CHECK(compress_to_jbl(x, g, t, o).support.cols_in_row(0) == IndexSet{1, 3, 4});
}

TEST_CASE("projection corner cases and a rank-one signal") {
  Rng rng(91);
  const Graph g = random_graph(4, 0.6, 2);
  const TemporalBasis t = dft_basis(6);
  const TvgSignal x{test::random_complex(4, 6, rng)};
  CHECK((project_to_support(x, SpectralSupport(BoolMatrix::Constant(4, 6, true)), g, t).data - x.data)
            .norm() <= 1e-12 * x.data.norm());
  CHECK(project_to_support(x, SpectralSupport(BoolMatrix::Constant(4, 6, false)), g, t).data.norm() <=
        1e-14);

  // u_1 s^T keeps all its energy with one graph row.
  const ComplexMatrix profile = test::random_complex(1, 6, rng).real().cast<Complex>();
  const TvgSignal r1{g.basis().col(1) * profile};
  CompressOptions o;
  o.energy_keep = 1.0;
  o.b_graph_keep = 1;
  const CompressResult r = compress_to_jbl(r1, g, t, o);
  CHECK(r.output_energy == doctest::Approx(r.input_energy).epsilon(1e-12));
  CHECK(r.support.rows_active() == IndexSet{1});
}

TEST_CASE("energy accounting on a random real 8 x 16 signal") {
  Rng rng(93);
  const Graph g = random_graph(8, 0.5, 14);
  const TemporalBasis t = dft_basis(16);
  RealMatrix data(8, 16);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 16; ++j) data(i, j) = rng.normal();
  }
  const TvgSignal x{data.cast<Complex>()};
  CompressOptions o;
  o.energy_keep = 0.9;
  o.b_graph_keep = 4;
  const CompressResult r = compress_to_jbl(x, g, t, o);
  RealVector energy = jft(x, g, t).coeffs.rowwise().squaredNorm();
  std::sort(energy.data(), energy.data() + energy.size(), std::greater<>());
  CHECK(r.output_energy >= 0.9 * energy.head(4).sum() * (1 - 1e-12));
  CHECK(r.signal.data.imag().cwiseAbs().maxCoeff() <= 1e-10);
}
