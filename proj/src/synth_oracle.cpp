#include "tvgs/synth_oracle.hpp"

#include <cmath>
#include <numbers>

#include "tvgs/error.hpp"

namespace tvgs {

double Rng::uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Index Rng::below(Index n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "Rng::below needs n > 0");
  const auto range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x = bits();
  while (x >= limit) x = bits();
  return static_cast<Index>(x % range);
}

Graph random_graph(Index n, double edge_prob, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "random_graph needs n >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "edge_prob must lie in [0, 1]");
  }
  Rng rng(seed);
  RealMatrix w = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double coin = rng.uniform();
      const double weight = 1.0 - rng.uniform();  // (0, 1]
      if (coin < edge_prob) w(i, j) = w(j, i) = weight;
    }
  }
  return build_graph(w);
}

JblInstance random_jbl(const Graph& g, const TemporalBasis& t, Index b_graph, double fill,
                       std::uint64_t seed) {
  const Index n = g.n_vertices();
  const Index period = t.period();
  if (b_graph < 1 || b_graph > n) throw Error(ErrorCode::BadRowCount, "b_graph must lie in [1, N]");
  if (!(fill > 0.0 && fill <= 1.0)) throw Error(ErrorCode::BadFraction, "fill must lie in (0, 1]");

  Rng rng(seed);
  std::vector<Index> rows(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
  rng.shuffle(rows);
  rows.resize(static_cast<std::size_t>(b_graph));

  JblInstance out;
  out.spectrum.coeffs = ComplexMatrix::Zero(n, period);
  BoolMatrix mask = BoolMatrix::Constant(n, period, false);
  const double sd = std::sqrt(0.5);
  for (Index i : rows) {
    bool any = false;
    for (Index f = 0; f < period; ++f) {
      if (fill >= 1.0 || rng.uniform() < fill) {
        mask(i, f) = true;
        any = true;
      }
    }
    if (!any) mask(i, rng.below(period)) = true;
    for (Index f = 0; f < period; ++f) {
      if (!mask(i, f)) continue;
      Complex c(sd * rng.normal(), sd * rng.normal());
      // Keep coefficients away from zero so the support is unambiguous.
      while (std::abs(c) < 1e-3) c = Complex(sd * rng.normal(), sd * rng.normal());
      out.spectrum.coeffs(i, f) = c;
    }
  }
  out.support = SpectralSupport(std::move(mask));
  out.signal = ijft(out.spectrum, g, t);
  return out;
}

ExampleFixture example_fixture() {
  using C = Complex;
  ExampleFixture fx;
  RealMatrix x(4, 4);
  x << 0.4190, 0.3120, 0.4382, 0.5452,  //
      0.3459, 0.2389, 0.3651, 0.4722,   //
      0.3785, 0.2767, 0.4194, 0.5212,   //
      0.2403, 0.1281, 0.2378, 0.3501;
  fx.signal.data = x.cast<Complex>();

  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 1) = C(-0.0384, -0.4665);
  s(0, 2) = C(2.8443, 0.0);
  s(0, 3) = C(-0.0384, 0.4665);
  s(1, 1) = C(0.0306, 0.0159);
  s(1, 2) = C(-0.4522, 0.0);
  s(1, 3) = C(0.0306, -0.0159);
  s(2, 2) = C(0.3579, 0.0);
  fx.spectrum.coeffs = s;
  fx.support = support_of(fx.spectrum, 1e-9);
  return fx;
}

RealMatrix correlated_series(Index n, Index length, std::uint64_t seed) {
  if (n < 1 || length < 1) throw Error(ErrorCode::InvalidArgument, "series needs n, length >= 1");
  Rng rng(seed);
  constexpr Index kSources = 3;
  RealMatrix sources(kSources, length);
  for (Index k = 0; k < kSources; ++k) {
    const double cycles = 1.0 + 4.0 * rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    double ar = 0.0;
    for (Index tau = 0; tau < length; ++tau) {
      ar = 0.9 * ar + 0.3 * rng.normal();
      sources(k, tau) = std::sin(2.0 * std::numbers::pi * cycles * static_cast<double>(tau) /
                                     static_cast<double>(length) +
                                 phase) +
                        ar;
    }
  }
  RealMatrix loadings(n, kSources);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < kSources; ++k) loadings(i, k) = rng.normal();
  }
  RealMatrix out = loadings * sources;
  for (Index i = 0; i < n; ++i) {
    for (Index tau = 0; tau < length; ++tau) out(i, tau) += 0.1 * rng.normal();
  }
  return out;
}

Index oracle_rank(const ComplexMatrix& m, const NumericPolicy& policy) {
  if (m.size() == 0) return 0;
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
  const double threshold = policy.rank_threshold(m.rows(), m.cols(), std::max(sv(0), 1.0));
  return static_cast<Index>((sv.array() > threshold).count());
}

OracleResult oracle_recover(const ComplexVector& values, const std::vector<OracleMeasurement>& rows,
                            const SpectralSupport& supp, const Graph& g, const TemporalBasis& t,
                            const NumericPolicy& policy) {
  if (supp.rows() != g.n_vertices() || supp.cols() != t.period()) {
    throw Error(ErrorCode::DimensionMismatch, "support shape does not match bases");
  }
  if (values.size() != static_cast<Index>(rows.size())) {
    throw Error(ErrorCode::ShapeMismatch, "one value per measurement row is required");
  }
  const auto entries = supp.entries();
  const Index b = static_cast<Index>(entries.size());

  OracleResult out;
  out.coefficients = ComplexVector::Zero(b);
  JointSpectrum spectrum{ComplexMatrix::Zero(supp.rows(), supp.cols())};
  if (b == 0) {
    out.signal = ijft(spectrum, g, t);
    return out;
  }

  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(rows.size()), b);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.vertex < 0 || row.vertex >= g.n_vertices() || row.time < 0 || row.time >= t.period()) {
      throw Error(ErrorCode::IndexOutOfRange, "measurement position out of range");
    }
    std::vector<bool> in_band(static_cast<std::size_t>(t.period()), row.band_cols.empty());
    for (Index f : row.band_cols) in_band[static_cast<std::size_t>(f)] = true;
    for (Index c = 0; c < b; ++c) {
      const auto [i, f] = entries[static_cast<std::size_t>(c)];
      if (in_band[static_cast<std::size_t>(f)]) {
        m(static_cast<Index>(r), c) = g.basis()(row.vertex, i) * t.basis()(row.time, f);
      }
    }
  }
  if (static_cast<Index>(rows.size()) < b || oracle_rank(m, policy) != b) {
    throw Error(ErrorCode::RankDeficientSystem,
                "measurement matrix has rank below B=" + std::to_string(b));
  }
  out.coefficients = m.colPivHouseholderQr().solve(values);
  const double scale = values.norm();
  out.residual = (m * out.coefficients - values).norm() / (scale > 0.0 ? scale : 1.0);
  for (Index c = 0; c < b; ++c) {
    const auto [i, f] = entries[static_cast<std::size_t>(c)];
    spectrum.coeffs(i, f) = out.coefficients(c);
  }
  out.signal = ijft(spectrum, g, t);
  return out;
}

std::vector<OracleMeasurement> oracle_measurements(const SamplingPlan& p) {
  std::vector<OracleMeasurement> out;
  for (const auto& band : p.bands) {
    for (Index v : band.vertices) {
      for (Index tau : band.times) out.push_back({v, tau, band.cols});
    }
  }
  return out;
}

ComplexVector flatten_samples(const SampleSet& s) {
  Index total = 0;
  for (const auto& y : s.bands) total += y.size();
  ComplexVector out(total);
  Index k = 0;
  for (const auto& y : s.bands) {
    for (Index r = 0; r < y.rows(); ++r) {
      for (Index c = 0; c < y.cols(); ++c) out(k++) = y(r, c);
    }
  }
  return out;
}

}  // namespace tvgs
