#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "tvgs/error.hpp"
#include "tvgs/spectral_bases.hpp"

using namespace tvgs;
using std::numbers::pi;

namespace {

bool is_unitary(const ComplexMatrix& u, double tol = 1e-12) {
  const Index n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() <= tol * n;
}

}  // namespace

TEST_CASE("path graph Laplacian spectrum matches the closed form") {
  const Graph g = test::path_graph(4);
  CHECK(g.n_vertices() == 4);
  const RealVector& lam = g.eigvals();
  CHECK(lam(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lam(1) == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(lam(2) == doctest::Approx(2.0));
  CHECK(lam(3) == doctest::Approx(2.0 + std::sqrt(2.0)));

  // Eigenvector k of the path: cos(pi k (j + 1/2) / n), first entry positive.
  for (Index n : {2, 5, 9}) {
    const Graph p = test::path_graph(n);
    for (Index k = 0; k < n; ++k) {
      CHECK(p.eigvals()(k) == doctest::Approx(2.0 - 2.0 * std::cos(pi * k / n)));
      RealVector ref(n);
      for (Index j = 0; j < n; ++j) ref(j) = std::cos(pi * k * (j + 0.5) / n);
      ref.normalize();
      CHECK((p.eigvecs().col(k) - ref).norm() <= 1e-10);
    }
  }
}

TEST_CASE("Laplacian is D - W with zeroed diagonal") {
  RealMatrix w(3, 3);
  w << 5.0, 1.0, 2.0,  //
      1.0, 0.0, 0.5,   //
      2.0, 0.5, 7.0;
  const Graph g = build_graph(w);
  CHECK(g.weights()(0, 0) == 0.0);
  CHECK(g.weights()(2, 2) == 0.0);
  RealMatrix l(3, 3);
  l << 3.0, -1.0, -2.0,  //
      -1.0, 1.5, -0.5,   //
      -2.0, -0.5, 2.5;
  CHECK((g.laplacian() - l).norm() <= 1e-14);
  const RealMatrix& v = g.eigvecs();
  CHECK((g.laplacian() * v - v * g.eigvals().asDiagonal()).norm() <= 1e-12);
  CHECK(is_unitary(g.basis()));
}

TEST_CASE("graph validation errors") {
  auto code_of = [](const RealMatrix& w) {
    try {
      build_graph(w);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of(RealMatrix::Zero(2, 3)) == ErrorCode::NonSquare);
  RealMatrix asym = test::path_weights(3);
  asym(0, 1) = 2.0;
  CHECK(code_of(asym) == ErrorCode::Asymmetric);
  RealMatrix neg = test::path_weights(3);
  neg(0, 1) = neg(1, 0) = -1.0;
  CHECK(code_of(neg) == ErrorCode::NegativeWeight);
  RealMatrix nan = test::path_weights(3);
  nan(0, 2) = nan(2, 0) = std::nan("");
  CHECK(code_of(nan) == ErrorCode::NonNumeric);
  CHECK(code_of(RealMatrix()) == ErrorCode::Empty);

  // Tiny asymmetry within tolerance is symmetrised away.
  RealMatrix near = test::path_weights(3);
  near(0, 1) += 1e-12;
  const Graph g = build_graph(near);
  CHECK(g.weights()(0, 1) == g.weights()(1, 0));
}

TEST_CASE("edgeless graph keeps the standard basis") {
  const Graph g = build_graph(RealMatrix::Zero(3, 3));
  CHECK(g.eigvals().isZero());
  CHECK((g.eigvecs() - RealMatrix::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("DFT basis entries and unitarity") {
  for (Index t : {1, 2, 4, 7, 16}) {
    const TemporalBasis b = dft_basis(t);
    CHECK(b.period() == t);
    CHECK(b.kind() == TemporalKind::DftDirectedCycle);
    CHECK(is_unitary(b.basis()));
    for (Index n = 0; n < t; ++n) {
      for (Index m = 0; m < t; ++m) {
        const Complex ref = std::polar(1.0 / std::sqrt(double(t)), 2.0 * pi * n * m / t);
        CHECK(std::abs(b.basis()(n, m) - ref) <= 1e-12);
      }
      CHECK(b.eigvals()(n) == doctest::Approx(2.0 - 2.0 * std::cos(2.0 * pi * n / t)));
    }
  }
  // T = 4 is the matrix of powers of j.
  const ComplexMatrix& f = dft_basis(4).basis();
  CHECK(std::abs(f(1, 1) - Complex(0.0, 0.5)) <= 1e-15);
  CHECK(std::abs(f(2, 1) - Complex(-0.5, 0.0)) <= 1e-15);
  CHECK(std::abs(f(3, 3) - Complex(0.0, 0.5)) <= 1e-15);
  CHECK_THROWS_AS(dft_basis(0), Error);
}

TEST_CASE("undirected cycle basis, including tied eigenvalues") {
  const TemporalBasis c4 = cycle_laplacian_basis(4);
  CHECK(c4.kind() == TemporalKind::LaplacianUndirectedCycle);
  RealVector lam(4);
  lam << 0.0, 2.0, 2.0, 4.0;
  CHECK((c4.eigvals() - lam).norm() <= 1e-12);
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v1(4), v2(4);
  v1 << r, 0.0, -r, 0.0;
  v2 << 0.0, r, 0.0, -r;
  CHECK((c4.basis().col(1) - v1).norm() <= 1e-12);
  CHECK((c4.basis().col(2) - v2).norm() <= 1e-12);
  CHECK(is_unitary(c4.basis()));

  const TemporalBasis c3 = cycle_laplacian_basis(3);
  CHECK(c3.eigvals()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c3.eigvals()(1) == doctest::Approx(3.0));
  CHECK(c3.eigvals()(2) == doctest::Approx(3.0));
  CHECK_THROWS_AS(cycle_laplacian_basis(2), Error);
  CHECK(make_temporal_basis(TemporalKind::LaplacianUndirectedCycle, 5).kind() ==
        TemporalKind::LaplacianUndirectedCycle);
}

TEST_CASE("deterministic eigenbasis follows the sign rule and is reproducible") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + rng.below(12);
    const Graph a = random_graph(n, 0.4, 100 + trial);
    const Graph b = random_graph(n, 0.4, 100 + trial);
    CHECK(a.eigvecs() == b.eigvecs());
    const RealMatrix& v = a.eigvecs();
    CHECK((v.transpose() * v - RealMatrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((a.laplacian() * v - v * a.eigvals().asDiagonal()).norm() <= 1e-9 * (1 + n));
    for (Index k = 0; k < n; ++k) {
      if (k > 0) CHECK(a.eigvals()(k) >= a.eigvals()(k - 1));
      CHECK(a.eigvals()(k) >= 0.0);
      for (Index j = 0; j < n; ++j) {
        if (std::abs(v(j, k)) > 1e-12) {
          CHECK(v(j, k) > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("complete graph eigenbasis is a pivoted Gram-Schmidt of the projector") {
  // K_3 has eigenvalue 3 twice; its eigenspace projector is I - J/3.
  RealMatrix w = RealMatrix::Ones(3, 3);
  const Graph g = build_graph(w);
  RealMatrix p = RealMatrix::Identity(3, 3) - RealMatrix::Ones(3, 3) / 3.0;
  RealVector q1 = p.col(0).normalized();
  RealVector q2 = p.col(1) - q1 * q1.dot(p.col(1));
  q2.normalize();
  CHECK((g.eigvecs().col(1) - q1).norm() <= 1e-12);
  CHECK((g.eigvecs().col(2) - q2).norm() <= 1e-12);
}

TEST_CASE("vertex and time transforms invert each other") {
  Rng rng(9);
  const Graph g = random_graph(6, 0.5, 1);
  const TemporalBasis t = dft_basis(5);
  const ComplexMatrix x = test::random_complex(6, 5, rng);
  CHECK((igft(gft(x, g), g) - x).norm() <= 1e-12 * x.norm());
  CHECK((inverse_time_transform(time_transform(x, t), t) - x).norm() <= 1e-12 * x.norm());
  CHECK((gft(x, g) - g.basis().adjoint() * x).norm() <= 1e-12 * x.norm());
  CHECK((time_transform(x, t) - x * t.basis().conjugate()).norm() <= 1e-12 * x.norm());
  CHECK_THROWS_AS(gft(test::random_complex(5, 5, rng), g), Error);
  CHECK_THROWS_AS(time_transform(test::random_complex(6, 4, rng), t), Error);
}

TEST_CASE("small closed-form cases") {
  const Graph empty = build_graph(RealMatrix::Zero(2, 2));
  CHECK(empty.laplacian().isZero());
  CHECK((empty.eigvecs() - RealMatrix::Identity(2, 2)).norm() == 0.0);

  RealMatrix w(2, 2);
  w << 0.0, 1.0, 1.0, 0.0;
  const Graph edge = build_graph(w);
  CHECK(edge.eigvals()(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(edge.eigvals()(1) == doctest::Approx(2.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(edge.eigvecs()(0, 0) == doctest::Approx(r));
  CHECK(edge.eigvecs()(1, 0) == doctest::Approx(r));
  CHECK(edge.eigvecs()(0, 1) == doctest::Approx(r));
  CHECK(edge.eigvecs()(1, 1) == doctest::Approx(-r));

  // Constant-in-time signal on the edge graph.
  const ComplexMatrix x = ComplexMatrix::Ones(2, 3);
  const ComplexMatrix xhat = gft(x, edge);
  CHECK((xhat.row(0).array() - std::sqrt(2.0)).abs().maxCoeff() <= 1e-14);
  CHECK(xhat.row(1).norm() <= 1e-14);
  CHECK(gft(ComplexMatrix::Zero(2, 3), edge).isZero());
  CHECK((gft(x, empty) - x).norm() == 0.0);

  CHECK(dft_basis(1).basis()(0, 0) == Complex(1.0));
  const ComplexMatrix& f2 = dft_basis(2).basis();
  CHECK(std::abs(f2(1, 1) + r) <= 1e-15);
  CHECK(std::abs(f2(0, 1) - r) <= 1e-15);
  const ComplexVector ones = ComplexVector::Ones(4);
  const ComplexVector analysed = dft_basis(4).basis().adjoint() * ones;
  CHECK(std::abs(analysed(0) - 2.0) <= 1e-14);
  CHECK(analysed.tail(3).norm() <= 1e-14);

  for (Index t : {3, 4, 7, 10}) {
    const TemporalBasis c = cycle_laplacian_basis(t);
    for (Index k = 0; k < t; ++k) CHECK(std::abs(c.basis()(k, 0) - 1.0 / std::sqrt(double(t))) <= 1e-12);
  }
}

TEST_CASE("complete graph against a dense eigensolver") {
  const Graph g = random_graph(3, 1.0, 12);
  const Eigen::SelfAdjointEigenSolver<RealMatrix> ref(g.laplacian());
  CHECK((g.eigvals() - ref.eigenvalues()).norm() <= 1e-12);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      if (i != j) CHECK(g.weights()(i, j) > 0.0);
    }
  }
  CHECK((random_graph(4, 0.0, 1).eigvecs() - RealMatrix::Identity(4, 4)).norm() == 0.0);
}
