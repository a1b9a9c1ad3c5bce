#ifndef COCONVEX_TESTS_HELPERS_HPP
#define COCONVEX_TESTS_HELPERS_HPP

#include <cmath>
#include <initializer_list>
#include <vector>

#include "coconvex/coconvex_set.hpp"

namespace coconvex::testing {

inline Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline Cone quadrant() { return Cone::make(2, {vec({1, 0}), vec({0, 1})}); }

inline Cone octant() {
  return Cone::make(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
}

inline Vec diag_direction(int n) {
  Vec u = -Vec::Ones(n);
  return u / u.norm();
}

// Single-cut family over the first quadrant: the set {x, y >= 0, x + y <
// s * sqrt(2)} with support s at the diagonal direction. Closed forms:
// volume s^2, facet length 2s, L_p facet weight 2 s^{2-p}.
inline CCoconvexSet quadrant_set(double s) {
  const Cone c = quadrant();
  const DirectionSet omega = DirectionSet::make(c, {diag_direction(2)});
  return CCoconvexSet::wulff(c, omega, {s});
}

}  // namespace coconvex::testing

#endif
