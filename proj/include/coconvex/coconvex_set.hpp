#ifndef COCONVEX_COCONVEX_SET_HPP
#define COCONVEX_COCONVEX_SET_HPP

#include <vector>

#include "coconvex/cone.hpp"

namespace coconvex {

// Finite set of unit directions in the interior of the polar cone,
// pairwise distinct within kAngularTol.
class DirectionSet {
 public:
  // Empty shell; meaningful instances come from make or merge.
  DirectionSet() = default;

  static DirectionSet make(const Cone& cone, const std::vector<Vec>& directions);

  // Union with angular-tolerance deduplication; order is first operand's
  // directions followed by the second's unmatched ones.
  static DirectionSet merge(const Cone& cone, const DirectionSet& a, const DirectionSet& b);

  int size() const { return static_cast<int>(directions_.size()); }
  const Vec& operator[](int i) const { return directions_[i]; }
  const std::vector<Vec>& directions() const { return directions_; }

  // Index of the direction matching u within kAngularTol, or -1.
  int find(const Vec& u) const;

  bool same_as(const DirectionSet& other) const;

 private:
  std::vector<Vec> directions_;
};

struct MeasureAtom {
  Vec u;
  double w = 0.0;
};

// Finite nonnegative Borel measure on the sphere, concentrated on finitely
// many directions.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Validates atoms against the cone: unit directions in the interior of
  // the polar cone, weights >= 0.
  static DiscreteMeasure make(const Cone& cone, std::vector<MeasureAtom> atoms);

  int size() const { return static_cast<int>(atoms_.size()); }
  const MeasureAtom& operator[](int i) const { return atoms_[i]; }
  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  double total() const;

  // Weight carried by the direction matching u within kAngularTol, or 0.
  double weight_at(const Vec& u) const;

 private:
  explicit DiscreteMeasure(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {}
  friend DiscreteMeasure measure_from_atoms_unchecked(std::vector<MeasureAtom>);
  std::vector<MeasureAtom> atoms_;
};

// Construction helper for deserialization paths that validate later.
DiscreteMeasure measure_from_atoms_unchecked(std::vector<MeasureAtom> atoms);

// Bounded set A = C \ A_bullet where A_bullet is the Wulff shape
// C cut by the halfspaces {x . u <= -f(u)}, u in omega. The stored support
// vector holds the attained values hbar(A, u) = -h(A_bullet, u) >= f(u).
class CCoconvexSet {
 public:
  // Empty shell; meaningful instances come from wulff.
  CCoconvexSet() = default;

  // Wulff shape of the positive function f on omega. Throws EmptyOmega and
  // NonPositiveF on bad input, InvalidArgument on a size mismatch.
  static CCoconvexSet wulff(const Cone& cone, const DirectionSet& omega,
                            const std::vector<double>& f);

  const Cone& cone() const { return cone_; }
  const DirectionSet& omega() const { return omega_; }

  // Attained support values hbar(A, u), aligned with omega.
  const std::vector<double>& support() const { return support_; }
  // Whether the input value f(u) was attained (touching halfspace).
  const std::vector<bool>& input_attained() const { return input_attained_; }
  // Facet measures S_{n-1}(A, u) aligned with omega; 0 for a vanishing facet.
  const std::vector<double>& facet_measures() const { return facet_measures_; }

  double tstar() const { return tstar_; }
  // A_bullet truncated at t*, i.e. A_bullet intersected with C_{t*}.
  const Polytope& body() const { return body_; }
  // The truncation C_{t*} itself.
  const Polytope& cone_truncation() const { return cone_trunc_; }

  // V_n(A) = V_n(C_{t*}) - V_n(A_bullet cut at t*).
  double covolume() const { return covolume_; }

  // hbar(A, u) for any u in the interior of the polar cone; equals the
  // stored value on omega and the attained support of A_bullet elsewhere.
  double support_at(const Vec& u) const;

  // Surface area measure: facet measures on omega.
  DiscreteMeasure surface_measure() const;
  // L_p surface area measure: hbar^{1-p} times facet measure; p != 0.
  DiscreteMeasure lp_surface_measure(double p) const;
  // Cone volume measure: hbar / n times facet measure; total mass V_n(A).
  DiscreteMeasure cone_volume_measure() const;

  // alpha A for alpha > 0; support scales linearly.
  CCoconvexSet dilate(double alpha) const;

 private:
  Cone cone_;
  DirectionSet omega_;
  std::vector<double> support_;
  std::vector<bool> input_attained_;
  std::vector<double> facet_measures_;
  double tstar_ = 0.0;
  Polytope body_;
  Polytope cone_trunc_;
  double covolume_ = 0.0;
};

// True when every direction of omega is attained for the Wulff shape of s,
// i.e. the stored support of wulff(cone, omega, s) equals s within 1e-9.
bool is_c_determined(const Cone& cone, const DirectionSet& omega, const std::vector<double>& s);

// Set inclusion a <= b for sets over the same cone and omega, decided by
// pointwise support dominance of the attained vectors.
bool includes(const CCoconvexSet& inner, const CCoconvexSet& outer, double tol = kGeomTol);

}  // namespace coconvex

#endif
