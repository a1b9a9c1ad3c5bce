#ifndef COCONVEX_POLYTOPE_HPP
#define COCONVEX_POLYTOPE_HPP

#include <vector>

#include "coconvex/geometry.hpp"

namespace coconvex {

// Closed halfspace {x : normal . x <= offset} with |normal| = 1.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertex_indices;  // indices into Polytope::vertices()
  double measure = 0.0;             // (n-1)-dimensional Hausdorff measure
};

// Bounded full-dimensional convex polytope, produced by halfspace
// intersection with explicit vertex enumeration.
class Polytope {
 public:
  // Empty shell; meaningful instances come from intersect_halfspaces.
  Polytope() = default;

  // Intersects the given halfspaces in R^n. Near-duplicate halfspaces
  // (normals within kAngularTol, offsets within kGeomTol) are merged,
  // keeping the smaller offset. Throws Unbounded, Empty or LowDimensional
  // when the intersection is not a bounded full-dimensional polytope.
  static Polytope intersect_halfspaces(int n, const std::vector<Halfspace>& halfspaces);

  int dim() const { return n_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // Input halfspaces that ended up without a facet (redundant).
  const std::vector<Halfspace>& inactive_halfspaces() const { return inactive_; }

  double volume() const { return volume_; }

  // Measure of the facet whose outward normal matches u within kAngularTol;
  // 0 when no facet matches.
  double facet_measure(const Vec& u) const;

  // h(P, u) = max_{x in P} x . u over the vertex set.
  double support_value(const Vec& u) const;
  // Vertex attaining the support value in direction u.
  const Vec& support_vertex(const Vec& u) const;

  // Mean of the vertices; interior since P is bounded and full-dimensional.
  Vec interior_point() const;

  // Sum of measure * normal over facets; zero for a closed boundary.
  Vec facet_measure_resultant() const;

 private:
  int n_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Halfspace> inactive_;
  double volume_ = 0.0;
};

}  // namespace coconvex

#endif
