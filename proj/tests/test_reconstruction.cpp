#include <doctest.h>

#include "test_util.hpp"
#include "tvgs/error.hpp"
#include "tvgs/reconstruction.hpp"
#include "tvgs/sampling_planner.hpp"

using namespace tvgs;

TEST_CASE("nrmse") {
  ComplexMatrix a(1, 2);
  a << 3.0, 4.0;
  ComplexMatrix b(1, 2);
  b << 3.0, 3.0;
  CHECK(nrmse(TvgSignal{a}, TvgSignal{a}) == 0.0);
  CHECK(nrmse(TvgSignal{a}, TvgSignal{b}) == doctest::Approx(0.2));
  CHECK_THROWS_AS(nrmse(TvgSignal{ComplexMatrix::Zero(1, 2)}, TvgSignal{b}), Error);
  CHECK_THROWS_AS(nrmse(TvgSignal{a}, TvgSignal{ComplexMatrix::Zero(2, 2)}), Error);
}

TEST_CASE("exact recovery of the fixture signal class") {
  Rng rng(51);
  const ExampleFixture fx = example_fixture();
  const Graph g = test::path_graph(4);
  const TemporalBasis t = dft_basis(4);
  const SamplingPlan p = plan(fx.support, g, t);
  for (int trial = 0; trial < 10; ++trial) {
    const TvgSignal x = ijft(test::spectrum_on(fx.support, rng), g, t);
    CHECK(nrmse(x, reconstruct(sample(x, p, g, t), p, g, t)) <= 1e-12);
  }
}

TEST_CASE("exact recovery on random instances, both temporal bases") {
  Rng rng(53);
  for (int trial = 0; trial < 80; ++trial) {
    const Index n = 2 + rng.below(9), period = 4 + rng.below(13);
    const auto kind = trial % 2 ? TemporalKind::DftDirectedCycle
                                : TemporalKind::LaplacianUndirectedCycle;
    const Graph g = random_graph(n, 0.5, 2000 + trial);
    const TemporalBasis t = make_temporal_basis(kind, period);
    const JblInstance inst = random_jbl(g, t, 1 + rng.below(n), 0.1 + 0.4 * rng.uniform(), 3000 + trial);
    const SamplingPlan p = plan(inst.support, g, t);
    const TvgSignal xr = reconstruct(sample(inst.signal, p, g, t), p, g, t, 1 + trial % 3);
    CHECK(nrmse(inst.signal, xr) <= 1e-9);
    // The separate plan over-samples but also recovers.
    const SamplingPlan sep = separate_plan(inst.support, g, t);
    CHECK(nrmse(inst.signal, reconstruct(sample(inst.signal, sep, g, t), sep, g, t)) <= 1e-9);
  }
}

TEST_CASE("reconstruction rejects mismatched inputs") {
  const ExampleFixture fx = example_fixture();
  const Graph g = test::path_graph(4);
  const TemporalBasis t = dft_basis(4);
  const SamplingPlan p = plan(fx.support, g, t);
  Rng rng(55);
  const TvgSignal x = ijft(test::spectrum_on(fx.support, rng), g, t);
  SampleSet s = sample(x, p, g, t);

  SampleSet missing = s;
  missing.bands.pop_back();
  CHECK_THROWS_AS(reconstruct(missing, p, g, t), Error);

  SampleSet wrong = s;
  wrong.bands[0] = ComplexMatrix::Zero(2, 1);
  CHECK_THROWS_AS(reconstruct(wrong, p, g, t), Error);

  SamplingPlan singular = p;
  singular.bands[1].times = {0, 2};
  try {
    reconstruct(s, singular, g, t);
    FAIL("singular system accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularBandSystem);
  }
  CHECK_THROWS_AS(reconstruct(s, p, test::path_graph(3), t), Error);
}

TEST_CASE("recovery error scales with sample noise") {
  Rng rng(57);
  const Graph g = random_graph(8, 0.5, 77);
  const TemporalBasis t = dft_basis(16);
  const JblInstance inst = random_jbl(g, t, 4, 0.3, 78);
  const SamplingPlan p = plan(inst.support, g, t);
  SampleSet s = sample(inst.signal, p, g, t);
  for (auto& band : s.bands) band += 1e-9 * test::random_complex(band.rows(), band.cols(), rng);
  const double err = nrmse(inst.signal, reconstruct(s, p, g, t));
  CHECK(err > 0.0);
  CHECK(err < 1e-5);
}

TEST_CASE("nrmse identities and zero samples") {
  Rng rng(103);
  const ComplexMatrix a = test::random_complex(3, 4, rng);
  CHECK(nrmse(TvgSignal{a}, TvgSignal{ComplexMatrix::Zero(3, 4)}) == doctest::Approx(1.0));
  CHECK(nrmse(TvgSignal{a}, TvgSignal{a + 0.1 * a}) == doctest::Approx(0.1).epsilon(1e-12));

  const Graph g = random_graph(4, 0.6, 6);
  const TemporalBasis t = dft_basis(4);
  const SpectralSupport supp(test::random_mask(4, 4, 0.5, rng));
  const SamplingPlan p = plan(supp, g, t);
  SampleSet zero;
  for (const auto& b : p.bands) zero.bands.push_back(ComplexMatrix::Zero(Index(b.vertices.size()), Index(b.times.size())));
  CHECK(reconstruct(zero, p, g, t).data.isZero());
}
