#include "coconvex/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace coconvex {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::DegenerateCone: return "DegenerateCone";
    case ErrorCode::ZetaFailure: return "ZetaFailure";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NonPositiveT: return "NonPositiveT";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::LowDimensional: return "LowDimensional";
    case ErrorCode::EmptyOmega: return "EmptyOmega";
    case ErrorCode::NonPositiveF: return "NonPositiveF";
    case ErrorCode::DuplicateDirection: return "DuplicateDirection";
    case ErrorCode::ZeroP: return "ZeroP";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::ConeMismatch: return "ConeMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::PEqualsN: return "PEqualsN";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::InternalGeometryError: return "InternalGeometryError";
    case ErrorCode::GenerationFailure: return "GenerationFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnsupportedPlotDimension: return "UnsupportedPlotDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

void require_dimension(int n) {
  if (n < kMinDim || n > kMaxDim) {
    throw Error(ErrorCode::DimensionCap,
                "dimension " + std::to_string(n) + " outside supported range [2, 4]");
  }
}

Vec unit_checked(const Vec& u, double tol) {
  const double norm = u.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw Error(ErrorCode::NotUnit, "vector norm " + std::to_string(norm) + " is not 1");
  }
  return u / norm;
}

bool same_direction(const Vec& a, const Vec& b) {
  return (a - b).norm() <= kAngularTol;
}

bool lex_less(const Vec& a, const Vec& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

namespace {

// Minimum-norm point of the affine hull of the columns of P, constrained to
// affine combinations: solve for barycentric lambda with sum(lambda) = 1.
bool affine_min_norm(const Mat& p, Vec& lambda) {
  const int k = static_cast<int>(p.cols());
  Mat kkt(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = 2.0 * (p.transpose() * p);
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  kkt(k, k) = 0.0;
  Vec rhs = Vec::Zero(k + 1);
  rhs[k] = 1.0;
  Eigen::FullPivLU<Mat> lu(kkt);
  if (!lu.isInvertible()) return false;
  Vec sol = lu.solve(rhs);
  lambda = sol.head(k);
  return true;
}

}  // namespace

Vec min_norm_point(const std::vector<Vec>& points) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "min_norm_point on empty set");
  }
  const int n = static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());
  const int max_subset = std::min(m, n + 1);

  Vec best = points[0];
  double best_norm = best.norm();
  for (const Vec& q : points) {
    if (q.norm() < best_norm) {
      best = q;
      best_norm = q.norm();
    }
  }

  // Caratheodory: the minimizer lies in some simplex spanned by at most
  // n + 1 of the points with nonnegative barycentric coordinates.
  std::vector<int> idx;
  std::vector<int> stack;
  for (int size = 2; size <= max_subset; ++size) {
    // Iterate over all index subsets of the given size.
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      Mat p(n, size);
      for (int i = 0; i < size; ++i) p.col(i) = points[comb[i]];
      Vec lambda;
      if (affine_min_norm(p, lambda) && lambda.minCoeff() >= -1e-12) {
        Vec cand = p * lambda;
        if (cand.norm() < best_norm) {
          best = cand;
          best_norm = cand.norm();
        }
      }
      int i = size - 1;
      while (i >= 0 && comb[i] == m - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return best;
}

Mat hyperplane_basis(const Vec& normal) {
  const int n = static_cast<int>(normal.size());
  Eigen::HouseholderQR<Mat> qr(normal);
  Mat q = qr.householderQ();
  // First column of Q spans normal; the rest span the hyperplane.
  return q.rightCols(n - 1);
}

unsigned long long SplitMix64::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  unsigned long long z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

Vec SplitMix64::unit_vector(int n) {
  while (true) {
    Vec v(n);
    for (int i = 0; i < n; i += 2) {
      // Box-Muller pair from two uniforms.
      double u1 = next_double();
      double u2 = next_double();
      while (u1 <= 1e-300) u1 = next_double();
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = r * std::cos(2.0 * M_PI * u2);
      if (i + 1 < n) v[i + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

}  // namespace coconvex
