#include "tvgs/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "tvgs/error.hpp"

namespace tvgs {

std::string format_ratio(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double NumericPolicy::rank_threshold(Index rows, Index cols, double sigma_max) const {
  if (rank_rtol > 0.0) return rank_rtol * sigma_max;
  const double dim = static_cast<double>(std::max(rows, cols));
  return dim * std::numeric_limits<double>::epsilon() * sigma_max * rank_safety;
}

NumericPolicy NumericPolicy::from_environment() {
  NumericPolicy policy;
  if (const char* env = std::getenv("TVGS_RANK_RTOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !(v < 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("TVGS_RANK_RTOL must be a number in (0,1), got '") + env + "'");
    }
    policy.rank_rtol = v;
  }
  return policy;
}

const NumericPolicy& default_policy() {
  static const NumericPolicy policy = NumericPolicy::from_environment();
  return policy;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  if (std::min(a.rows(), a.cols()) <= 16) {
    return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
  }
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
}

Index numeric_rank(const ComplexMatrix& a, const NumericPolicy& policy) {
  const RealVector sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = policy.rank_threshold(a.rows(), a.cols(), sv(0));
  return static_cast<Index>((sv.array() > threshold).count());
}

Index basis_block_rank(const ComplexMatrix& a, const NumericPolicy& policy) {
  const RealVector sv = singular_values(a);
  if (sv.size() == 0) return 0;
  const double threshold = policy.rank_threshold(a.rows(), a.cols(), std::max(sv(0), 1.0));
  return static_cast<Index>((sv.array() > threshold).count());
}

double min_singular_value(const ComplexMatrix& a) {
  const RealVector sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

std::vector<Index> pivoted_row_selection(const ComplexMatrix& a, std::span<const Index> candidates,
                                         Index count, const NumericPolicy& policy) {
  std::vector<Index> chosen;
  if (count <= 0 || candidates.empty()) return chosen;

  ComplexMatrix residual(static_cast<Index>(candidates.size()), a.cols());
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    if (candidates[r] < 0 || candidates[r] >= a.rows()) {
      throw Error(ErrorCode::IndexOutOfRange, "candidate row out of range");
    }
    residual.row(static_cast<Index>(r)) = a.row(candidates[r]);
  }
  const double scale = residual.rowwise().norm().maxCoeff();
  if (scale == 0.0) return chosen;
  const double floor = policy.rank_threshold(a.rows(), a.cols(), scale);

  std::vector<bool> used(candidates.size(), false);
  std::vector<ComplexVector> basis;
  while (static_cast<Index>(chosen.size()) < count) {
    Index best = -1;
    double best_norm = 0.0;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      if (used[r]) continue;
      const double n = residual.row(static_cast<Index>(r)).norm();
      if (best < 0 || n > best_norm * (1.0 + policy.pivot_tie_rtol)) {
        best = static_cast<Index>(r);
        best_norm = n;
      }
    }
    if (best < 0 || best_norm <= floor) break;
    used[best] = true;
    chosen.push_back(candidates[best]);

    ComplexVector q = residual.row(best).transpose() / best_norm;
    // Re-orthogonalise against the accepted directions once more (MGS twice).
    for (const auto& b : basis) q -= b * b.dot(q);
    q.normalize();
    basis.push_back(q);
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      if (used[r]) continue;
      const Index ri = static_cast<Index>(r);
      // residual row is a row vector v; remove its component along q^T.
      const Complex c = (residual.row(ri) * q.conjugate())(0);
      residual.row(ri) -= c * q.transpose();
    }
  }
  return chosen;
}

ComplexMatrix submatrix(const ComplexMatrix& a, std::span<const Index> rows,
                        std::span<const Index> cols) {
  ComplexMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) = a(rows[r], cols[c]);
    }
  }
  return out;
}

IndexSet iota_set(Index n) {
  IndexSet s(static_cast<std::size_t>(std::max<Index>(n, 0)));
  std::iota(s.begin(), s.end(), Index{0});
  return s;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace tvgs
