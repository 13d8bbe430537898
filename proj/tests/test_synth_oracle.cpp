#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "tvgs/error.hpp"
#include "tvgs/reconstruction.hpp"
#include "tvgs/sampling_planner.hpp"
#include "tvgs/signal_io.hpp"
#include "tvgs/synth_oracle.hpp"

using namespace tvgs;

TEST_CASE("rng is seeded and roughly calibrated") {
  Rng a(1), b(1), c(2);
  CHECK(a.bits() == b.bits());
  CHECK(a.bits() != c.bits());
  Rng r(3);
  double sum = 0.0, sq = 0.0, usum = 0.0;
  const int count = 20000;
  std::vector<int> hist(5, 0);
  for (int k = 0; k < count; ++k) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    usum += u;
    ++hist[static_cast<std::size_t>(r.below(5))];
  }
  CHECK(std::abs(sum / count) < 0.05);
  CHECK(std::abs(sq / count - 1.0) < 0.05);
  CHECK(std::abs(usum / count - 0.5) < 0.02);
  for (int h : hist) CHECK(std::abs(h - count / 5) < count / 25);

  std::vector<int> v{0, 1, 2, 3, 4, 5};
  r.shuffle(v);
  CHECK(std::set<int>(v.begin(), v.end()).size() == 6);
}

TEST_CASE("random graphs are valid and reproducible") {
  const Graph a = random_graph(7, 0.5, 10);
  const Graph b = random_graph(7, 0.5, 10);
  CHECK(a.weights() == b.weights());
  CHECK((a.weights() - a.weights().transpose()).norm() == 0.0);
  CHECK(a.weights().minCoeff() >= 0.0);
  CHECK(a.weights().diagonal().isZero());
  CHECK(random_graph(5, 0.0, 1).weights().isZero());
  const Graph full = random_graph(5, 1.0, 1);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      if (i != j) CHECK(full.weights()(i, j) > 0.0);
    }
  }
}

TEST_CASE("random JBL instances have the requested graph bandwidth") {
  Rng rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + rng.below(9), period = 4 + rng.below(13);
    const Graph g = random_graph(n, 0.5, 4000 + trial);
    const TemporalBasis t = dft_basis(period);
    const Index bg = 1 + rng.below(n);
    const JblInstance inst = random_jbl(g, t, bg, 0.3, 5000 + trial);
    CHECK(inst.support.b_graph() == bg);
    CHECK(support_of(inst.spectrum) == inst.support);
    CHECK((jft(inst.signal, g, t).coeffs - inst.spectrum.coeffs).norm() <= 1e-10 * inst.spectrum.coeffs.norm());
    for (auto [i, f] : inst.support.entries()) CHECK(std::abs(inst.spectrum.coeffs(i, f)) >= 1e-3);
  }
}

TEST_CASE("fixture signal and spectrum") {
  const ExampleFixture fx = example_fixture();
  CHECK(fx.signal.data.rows() == 4);
  CHECK(fx.signal.data.cols() == 4);
  CHECK(fx.spectrum.coeffs.rows() == 4);
  CHECK(fx.support.b_joint() == 7);
}

TEST_CASE("correlated series are reproducible and correlated") {
  const RealMatrix a = correlated_series(6, 200, 3);
  CHECK(a == correlated_series(6, 200, 3));
  CHECK(a.rows() == 6);
  CHECK(a.cols() == 200);
  const Graph g = correlation_graph(a);
  CHECK(g.weights().maxCoeff() > 0.3);
}

TEST_CASE("oracle recovery agrees with the band-wise solver") {
  Rng rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + rng.below(7), period = 4 + rng.below(9);
    const Graph g = random_graph(n, 0.5, 6000 + trial);
    const TemporalBasis t = dft_basis(period);
    const JblInstance inst = random_jbl(g, t, 1 + rng.below(n), 0.3, 7000 + trial);
    const SamplingPlan p = plan(inst.support, g, t);
    const SampleSet s = sample(inst.signal, p, g, t);
    const auto rows = oracle_measurements(p);
    CHECK(static_cast<Index>(rows.size()) == p.total_samples);
    const OracleResult o = oracle_recover(flatten_samples(s), rows, inst.support, g, t);
    CHECK(o.residual <= 1e-10);
    CHECK((o.signal.data - reconstruct(s, p, g, t).data).norm() <= 1e-8 * inst.signal.data.norm());
    CHECK(nrmse(inst.signal, o.signal) <= 1e-9);
  }
}

TEST_CASE("oracle with raw samples on a full grid") {
  Rng rng(71);
  const Graph g = random_graph(4, 0.6, 5);
  const TemporalBasis t = dft_basis(5);
  const JblInstance inst = random_jbl(g, t, 2, 0.5, 6);
  std::vector<OracleMeasurement> rows;
  ComplexVector y(20);
  for (Index v = 0; v < 4; ++v) {
    for (Index tau = 0; tau < 5; ++tau) {
      rows.push_back({v, tau, {}});
      y(v * 5 + tau) = inst.signal.data(v, tau);
    }
  }
  const OracleResult o = oracle_recover(y, rows, inst.support, g, t);
  CHECK(nrmse(inst.signal, o.signal) <= 1e-10);
}

TEST_CASE("oracle detects too few or rank-deficient measurements") {
  const ExampleFixture fx = example_fixture();
  const Graph g = test::path_graph(4);
  const TemporalBasis t = dft_basis(4);
  const SamplingPlan p = plan(fx.support, g, t);
  Rng rng(73);
  const TvgSignal x = ijft(test::spectrum_on(fx.support, rng), g, t);
  const ComplexVector y = flatten_samples(sample(x, p, g, t));
  auto rows = oracle_measurements(p);
  auto code_of = [&](const ComplexVector& values, const std::vector<OracleMeasurement>& r) {
    try {
      oracle_recover(values, r, fx.support, g, t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  auto fewer = rows;
  fewer.pop_back();
  CHECK(code_of(y.head(6), fewer) == ErrorCode::RankDeficientSystem);
  auto duplicated = rows;
  duplicated.back() = duplicated.front();
  CHECK(code_of(y, duplicated) == ErrorCode::RankDeficientSystem);
  CHECK(code_of(y.head(6), rows) == ErrorCode::ShapeMismatch);
  auto bad = rows;
  bad[0].vertex = 7;
  CHECK(code_of(y, bad) == ErrorCode::IndexOutOfRange);
  CHECK(oracle_rank(ComplexMatrix::Identity(3, 3)) == 3);
}

TEST_CASE("random JBL corner cases") {
  const Graph g = random_graph(5, 0.6, 7);
  const TemporalBasis t = dft_basis(6);
  const JblInstance full = random_jbl(g, t, 3, 1.0, 8);
  CHECK(full.support.b_joint() == 3 * 6);
  const JblInstance one = random_jbl(g, t, 1, 0.5, 9);
  CHECK(numeric_rank(one.signal.data) == 1);
  CHECK(oracle_rank(ComplexMatrix::Zero(3, 3)) == 0);
}
