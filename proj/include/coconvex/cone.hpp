#ifndef COCONVEX_CONE_HPP
#define COCONVEX_CONE_HPP

#include <vector>

#include "coconvex/polytope.hpp"

namespace coconvex {

// Pointed full-dimensional polyhedral cone C = cone{g_1, ..., g_m} in R^n,
// equivalently {x : w . x <= 0 for every facet normal w}.
class Cone {
 public:
  // Empty shell; meaningful instances come from make.
  Cone() = default;

  // Builds the cone spanned by the given generators. Generators must be
  // unit length within tolerance; redundant (non-extreme) generators are
  // dropped. Throws DegenerateCone when the span is not full-dimensional,
  // NotPointed when the cone contains a line, NotUnit for bad input,
  // DimensionCap outside n in [2, 4].
  static Cone make(int n, const std::vector<Vec>& generators);

  int dim() const { return n_; }
  // Extreme rays, unit length, in canonical (lexicographic) order.
  const std::vector<Vec>& generators() const { return generators_; }
  // Outward unit facet normals: C = {x : w . x <= 0}.
  const std::vector<Vec>& facet_normals() const { return facet_normals_; }
  // Reference interior direction: g . zeta > 0 for every generator.
  const Vec& zeta() const { return zeta_; }

  // Polar cone {x : x . y <= 0 for all y in C}; its generators are the
  // facet normals of this cone.
  Cone polar() const;

  // True when u is a unit vector in the interior of the polar cone,
  // i.e. u . g < -margin for every generator. Throws NotUnit when
  // | |u| - 1 | exceeds tolerance.
  bool in_omega(const Vec& u, double margin = kGeomTol) const;

  // Membership x in C within tolerance.
  bool contains(const Vec& x, double tol = kGeomTol) const;

  // Truncation C_t = C intersected with {x . zeta <= t}; throws
  // NonPositiveT when t <= 0.
  Polytope truncate(double t) const;

  // Halfspaces {w . x <= 0} for the facet normals.
  std::vector<Halfspace> facet_halfspaces() const;

  // Structural equality within tolerance (same generator set).
  bool same_as(const Cone& other, double tol = kAngularTol) const;

 private:
  int n_ = 0;
  std::vector<Vec> generators_;
  std::vector<Vec> facet_normals_;
  Vec zeta_;
};

}  // namespace coconvex

#endif
