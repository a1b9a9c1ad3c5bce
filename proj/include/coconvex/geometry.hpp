#ifndef COCONVEX_GEOMETRY_HPP
#define COCONVEX_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

#include "coconvex/errors.hpp"

namespace coconvex {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Supported ambient dimensions.
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 4;

// Geometric predicate tolerance on unit-scale data.
inline constexpr double kGeomTol = 1e-9;
// Angular tolerance for matching and deduplicating unit normals.
inline constexpr double kAngularTol = 1e-8;
// Slack allowed when testing a candidate vertex against a halfspace.
inline constexpr double kFeasTol = 1e-7;
// Relative tolerance for flagging an inequality violation.
inline constexpr double kViolationTol = 1e-8;
// Relative tolerance for flagging equality in an inequality check.
inline constexpr double kEqualityTol = 1e-6;

void require_dimension(int n);

// Checks |u| = 1 within tol and returns u / |u|; throws NotUnit otherwise.
Vec unit_checked(const Vec& u, double tol = kAngularTol);

// True when |a - b| <= kAngularTol for unit vectors a, b.
bool same_direction(const Vec& a, const Vec& b);

// Lexicographic comparison with tolerance, used for canonical vertex order.
bool lex_less(const Vec& a, const Vec& b, double tol = kGeomTol);

// Minimum-norm point of conv{points}; exact search over affinely
// independent subsets (Caratheodory), adequate for the small inputs here.
Vec min_norm_point(const std::vector<Vec>& points);

// Orthonormal basis of the hyperplane {x : normal . x = 0} as columns.
Mat hyperplane_basis(const Vec& normal);

// Deterministic uniform variates derived from a 64-bit state; the standard
// distributions are implementation-defined, these are not.
class SplitMix64 {
 public:
  explicit SplitMix64(unsigned long long seed) : state_(seed) {}

  unsigned long long next_u64();
  // Uniform in [0, 1).
  double next_double();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform on the unit sphere in dimension n.
  Vec unit_vector(int n);

 private:
  unsigned long long state_;
};

}  // namespace coconvex

#endif
