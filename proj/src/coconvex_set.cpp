#include "coconvex/coconvex_set.hpp"

#include <algorithm>
#include <cmath>

namespace coconvex {

DirectionSet DirectionSet::make(const Cone& cone, const std::vector<Vec>& directions) {
  if (directions.empty()) {
    throw Error(ErrorCode::EmptyOmega, "direction set is empty");
  }
  DirectionSet ds;
  for (const Vec& u : directions) {
    if (static_cast<int>(u.size()) != cone.dim()) {
      throw Error(ErrorCode::InvalidArgument, "direction has wrong dimension");
    }
    Vec unit = unit_checked(u);
    if (!cone.in_omega(unit)) {
      throw Error(ErrorCode::InvalidArgument,
                  "direction is not in the interior of the polar cone");
    }
    for (const Vec& k : ds.directions_) {
      if (same_direction(k, unit)) {
        throw Error(ErrorCode::DuplicateDirection, "directions coincide within tolerance");
      }
    }
    ds.directions_.push_back(std::move(unit));
  }
  return ds;
}

DirectionSet DirectionSet::merge(const Cone& cone, const DirectionSet& a, const DirectionSet& b) {
  std::vector<Vec> dirs = a.directions_;
  for (const Vec& u : b.directions_) {
    bool known = false;
    for (const Vec& k : dirs) {
      if (same_direction(k, u)) {
        known = true;
        break;
      }
    }
    if (!known) dirs.push_back(u);
  }
  return DirectionSet::make(cone, dirs);
}

int DirectionSet::find(const Vec& u) const {
  for (size_t i = 0; i < directions_.size(); ++i) {
    if (same_direction(directions_[i], u)) return static_cast<int>(i);
  }
  return -1;
}

bool DirectionSet::same_as(const DirectionSet& other) const {
  if (directions_.size() != other.directions_.size()) return false;
  for (const Vec& u : directions_) {
    if (other.find(u) < 0) return false;
  }
  return true;
}

DiscreteMeasure DiscreteMeasure::make(const Cone& cone, std::vector<MeasureAtom> atoms) {
  for (MeasureAtom& a : atoms) {
    a.u = unit_checked(a.u);
    if (!cone.in_omega(a.u)) {
      throw Error(ErrorCode::InvalidArgument,
                  "measure atom direction is not in the interior of the polar cone");
    }
    if (a.w < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "measure atom has negative weight");
    }
  }
  return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total() const {
  double t = 0.0;
  for (const MeasureAtom& a : atoms_) t += a.w;
  return t;
}

double DiscreteMeasure::weight_at(const Vec& u) const {
  for (const MeasureAtom& a : atoms_) {
    if (same_direction(a.u, u)) return a.w;
  }
  return 0.0;
}

DiscreteMeasure measure_from_atoms_unchecked(std::vector<MeasureAtom> atoms) {
  return DiscreteMeasure(std::move(atoms));
}

namespace {

Polytope build_body(const Cone& cone, const DirectionSet& omega, const std::vector<double>& f,
                    double t) {
  std::vector<Halfspace> hs = cone.facet_halfspaces();
  for (int i = 0; i < omega.size(); ++i) {
    hs.push_back({omega[i], -f[static_cast<size_t>(i)]});
  }
  hs.push_back({cone.zeta(), t});
  return Polytope::intersect_halfspaces(cone.dim(), hs);
}

// Largest height x . zeta over the vertices lying on an omega hyperplane;
// these are exactly the vertices of the untruncated Wulff shape.
double omega_vertex_height(const Polytope& body, const Cone& cone, const DirectionSet& omega,
                           const std::vector<double>& f) {
  double h_max = -1.0;
  for (const Vec& v : body.vertices()) {
    const double scale = std::max(1.0, v.lpNorm<Eigen::Infinity>());
    for (int i = 0; i < omega.size(); ++i) {
      if (std::abs(omega[i].dot(v) + f[static_cast<size_t>(i)]) <= 1e-7 * scale) {
        h_max = std::max(h_max, cone.zeta().dot(v));
        break;
      }
    }
  }
  return h_max;
}

}  // namespace

CCoconvexSet CCoconvexSet::wulff(const Cone& cone, const DirectionSet& omega,
                                 const std::vector<double>& f) {
  if (static_cast<size_t>(omega.size()) != f.size()) {
    throw Error(ErrorCode::InvalidArgument, "support vector size does not match omega");
  }
  for (double v : f) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositiveF, "support values must be positive and finite");
    }
  }

  // Trial cut: the apex of the Wulff shape along zeta lies above
  // f(u) / (-u . zeta) for each u, so start beyond all of them and double
  // until every omega facet sits strictly below half the cut height.
  double t = 0.0;
  for (int i = 0; i < omega.size(); ++i) {
    t = std::max(t, f[static_cast<size_t>(i)] / (-omega[i].dot(cone.zeta())));
  }
  t *= 2.0;

  double tstar = -1.0;
  for (int round = 0; round < 64; ++round) {
    Polytope probe;
    try {
      probe = build_body(cone, omega, f, t);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Empty || e.code() == ErrorCode::LowDimensional) {
        t *= 2.0;
        continue;
      }
      throw;
    }
    const double h_max = omega_vertex_height(probe, cone, omega, f);
    if (h_max > 0.0 && h_max <= 0.5 * t * (1.0 - kGeomTol)) {
      tstar = 2.0 * h_max;
      break;
    }
    t *= 2.0;
  }
  if (tstar <= 0.0) {
    throw Error(ErrorCode::InternalGeometryError, "truncation search did not stabilize");
  }

  CCoconvexSet a;
  a.cone_ = cone;
  a.omega_ = omega;
  a.tstar_ = tstar;
  a.body_ = build_body(cone, omega, f, tstar);
  a.cone_trunc_ = cone.truncate(tstar);
  a.covolume_ = a.cone_trunc_.volume() - a.body_.volume();

  // Covolume must be independent of the cut beyond t*; verify against the
  // doubled truncation.
  {
    const Polytope body2 = build_body(cone, omega, f, 2.0 * tstar);
    const Polytope trunc2 = cone.truncate(2.0 * tstar);
    const double cov2 = trunc2.volume() - body2.volume();
    // The subtraction cancels two volumes of order (2 t*)^n, so allow for
    // their rounding on top of the covolume's own scale; a genuine cut
    // dependence shows up at the truncated-volume scale itself.
    const double tol =
        1e-12 * std::max(1.0, a.covolume_) + 1e-13 * (trunc2.volume() + body2.volume());
    if (std::abs(cov2 - a.covolume_) > tol) {
      throw Error(ErrorCode::InternalGeometryError, "covolume is not stable under the cut");
    }
  }
  if (!(a.covolume_ > 0.0)) {
    throw Error(ErrorCode::InternalGeometryError, "covolume is not positive");
  }

  for (int i = 0; i < omega.size(); ++i) {
    const double fi = f[static_cast<size_t>(i)];
    const Vec& vertex = a.body_.support_vertex(omega[i]);
    if (cone.zeta().dot(vertex) >= tstar * (1.0 - 1e-6)) {
      throw Error(ErrorCode::InternalGeometryError, "support attained on the truncation plane");
    }
    double hbar = -vertex.dot(omega[i]);
    // Keep the input value verbatim when it is attained within the
    // attainedness tolerance, so rebuilding a serialized record reproduces
    // the stored support bit for bit.
    const bool attained = std::abs(hbar - fi) <= 1e-9 * std::max(1.0, std::abs(fi));
    if (attained) hbar = fi;
    a.support_.push_back(hbar);
    a.input_attained_.push_back(attained);
    a.facet_measures_.push_back(a.body_.facet_measure(omega[i]));
  }

  // Every facet of the truncated Wulff shape must be accounted for.
  for (const Facet& facet : a.body_.facets()) {
    bool known = same_direction(facet.normal, cone.zeta());
    if (!known) known = omega.find(facet.normal) >= 0;
    if (!known) {
      for (const Vec& w : cone.facet_normals()) {
        if (same_direction(w, facet.normal)) {
          known = true;
          break;
        }
      }
    }
    if (!known) {
      throw Error(ErrorCode::InternalGeometryError, "facet with a normal outside omega");
    }
  }
  return a;
}

double CCoconvexSet::support_at(const Vec& u) const {
  const Vec unit = unit_checked(u);
  const int idx = omega_.find(unit);
  if (idx >= 0) return support_[static_cast<size_t>(idx)];
  if (!cone_.in_omega(unit)) {
    throw Error(ErrorCode::InvalidArgument,
                "support query outside the interior of the polar cone");
  }
  const Vec& vertex = body_.support_vertex(unit);
  if (cone_.zeta().dot(vertex) >= tstar_ * (1.0 - 1e-6)) {
    throw Error(ErrorCode::InternalGeometryError, "support attained on the truncation plane");
  }
  return -vertex.dot(unit);
}

DiscreteMeasure CCoconvexSet::surface_measure() const {
  std::vector<MeasureAtom> atoms;
  for (int i = 0; i < omega_.size(); ++i) {
    atoms.push_back({omega_[i], facet_measures_[static_cast<size_t>(i)]});
  }
  return DiscreteMeasure::make(cone_, std::move(atoms));
}

DiscreteMeasure CCoconvexSet::lp_surface_measure(double p) const {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "L_p surface measure needs p != 0; use the cone volume measure");
  }
  std::vector<MeasureAtom> atoms;
  for (int i = 0; i < omega_.size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    atoms.push_back({omega_[i], std::pow(support_[k], 1.0 - p) * facet_measures_[k]});
  }
  return DiscreteMeasure::make(cone_, std::move(atoms));
}

DiscreteMeasure CCoconvexSet::cone_volume_measure() const {
  std::vector<MeasureAtom> atoms;
  const double n = static_cast<double>(cone_.dim());
  for (int i = 0; i < omega_.size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    atoms.push_back({omega_[i], support_[k] * facet_measures_[k] / n});
  }
  return DiscreteMeasure::make(cone_, std::move(atoms));
}

CCoconvexSet CCoconvexSet::dilate(double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive and finite");
  }
  std::vector<double> scaled = support_;
  for (double& s : scaled) s *= alpha;
  return wulff(cone_, omega_, scaled);
}

bool is_c_determined(const Cone& cone, const DirectionSet& omega, const std::vector<double>& s) {
  const CCoconvexSet a = CCoconvexSet::wulff(cone, omega, s);
  for (int i = 0; i < omega.size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    if (std::abs(a.support()[k] - s[k]) > 1e-9 * std::max(1.0, std::abs(s[k]))) return false;
  }
  return true;
}

bool includes(const CCoconvexSet& inner, const CCoconvexSet& outer, double tol) {
  if (!inner.cone().same_as(outer.cone())) {
    throw Error(ErrorCode::ConeMismatch, "inclusion test across different cones");
  }
  // inner is contained in outer iff the complement of outer fits inside
  // every defining halfspace of inner's complement, i.e. support dominance
  // on inner's omega.
  for (int i = 0; i < inner.omega().size(); ++i) {
    const double hi = inner.support()[static_cast<size_t>(i)];
    const double ho = outer.support_at(inner.omega()[i]);
    if (hi > ho + tol * std::max(1.0, std::abs(ho))) return false;
  }
  return true;
}

}  // namespace coconvex
