#include "coconvex/cone.hpp"

#include <algorithm>
#include <cmath>

namespace coconvex {

namespace {

// Membership of x in cone{gens} up to tolerance, by Caratheodory search
// over linearly independent generator subsets of size <= n.
bool cone_member(const Vec& x, const std::vector<Vec>& gens, double tol = 1e-8) {
  if (x.norm() <= tol) return true;
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(gens.size());
  for (int size = 1; size <= std::min(m, n); ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      Mat g(n, size);
      for (int i = 0; i < size; ++i) g.col(i) = gens[comb[i]];
      Vec lambda = g.colPivHouseholderQr().solve(x);
      if ((g * lambda - x).norm() <= tol && lambda.minCoeff() >= -tol) return true;
      int i = size - 1;
      while (i >= 0 && comb[i] == m - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return false;
}

int linear_rank(const std::vector<Vec>& vs, double tol = 1e-9) {
  if (vs.empty()) return 0;
  Mat m(vs[0].size(), static_cast<int>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) m.col(static_cast<int>(i)) = vs[i];
  Eigen::JacobiSVD<Mat> svd(m);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol) ++rank;
  }
  return rank;
}

// Outward facet normals of cone{gens}: null directions of (n-1)-subsets,
// oriented so every generator lies on the nonpositive side, kept when the
// touching generators span dimension n - 1.
std::vector<Vec> compute_facet_normals(int n, const std::vector<Vec>& gens) {
  std::vector<Vec> normals;
  const int m = static_cast<int>(gens.size());
  std::vector<int> comb(n - 1);
  for (int i = 0; i < n - 1; ++i) comb[i] = i;
  while (true) {
    Mat sub(n - 1, n);
    for (int i = 0; i < n - 1; ++i) sub.row(i) = gens[comb[i]].transpose();
    Eigen::FullPivLU<Mat> lu(sub);
    lu.setThreshold(1e-9);
    if (lu.rank() == n - 1) {
      Vec w = lu.kernel().col(0).normalized();
      double lo = 0.0;
      double hi = 0.0;
      for (const Vec& g : gens) {
        const double d = w.dot(g);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      Vec oriented;
      if (hi <= kGeomTol) {
        oriented = w;
      } else if (lo >= -kGeomTol) {
        oriented = -w;
      } else {
        oriented = Vec();
      }
      if (oriented.size() == n) {
        std::vector<Vec> touching;
        for (const Vec& g : gens) {
          if (std::abs(oriented.dot(g)) <= kGeomTol) touching.push_back(g);
        }
        if (linear_rank(touching) == n - 1) {
          bool known = false;
          for (const Vec& existing : normals) {
            if (same_direction(existing, oriented)) {
              known = true;
              break;
            }
          }
          if (!known) normals.push_back(std::move(oriented));
        }
      }
    }
    int i = n - 2;
    while (i >= 0 && comb[i] == m - (n - 1) + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n - 1; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(normals.begin(), normals.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b, 0.0); });
  return normals;
}

}  // namespace

Cone Cone::make(int n, const std::vector<Vec>& generators) {
  require_dimension(n);
  if (generators.empty()) {
    throw Error(ErrorCode::DegenerateCone, "no generators given");
  }

  std::vector<Vec> gens;
  for (const Vec& g : generators) {
    if (static_cast<int>(g.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "generator has wrong dimension");
    }
    Vec unit = unit_checked(g, 1e-6);
    bool duplicate = false;
    for (const Vec& k : gens) {
      if (same_direction(k, unit)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) gens.push_back(std::move(unit));
  }

  // Pointed iff the origin is separated from conv{generators}.
  const Vec witness = min_norm_point(gens);
  if (witness.norm() <= kGeomTol) {
    throw Error(ErrorCode::NotPointed, "generator hull contains the origin");
  }

  if (linear_rank(gens) < n) {
    throw Error(ErrorCode::DegenerateCone, "generators do not span the ambient space");
  }

  // Drop generators inside the cone of the others.
  std::vector<Vec> extreme;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (others.empty() || !cone_member(gens[i], others)) {
      extreme.push_back(gens[i]);
    }
  }
  std::sort(extreme.begin(), extreme.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b, 0.0); });

  Cone c;
  c.n_ = n;
  c.generators_ = std::move(extreme);
  c.facet_normals_ = compute_facet_normals(n, c.generators_);

  // Consistency: the generator hull must equal the facet-halfspace
  // intersection, so every generator satisfies every facet halfspace.
  for (const Vec& g : c.generators_) {
    for (const Vec& w : c.facet_normals_) {
      if (w.dot(g) > kGeomTol) {
        throw Error(ErrorCode::InternalGeometryError,
                    "generator violates a computed facet halfspace");
      }
    }
  }
  if (static_cast<int>(c.facet_normals_.size()) < n) {
    throw Error(ErrorCode::InternalGeometryError, "facet enumeration is incomplete");
  }

  Vec mean = Vec::Zero(n);
  for (const Vec& g : c.generators_) mean += g;
  if (mean.norm() > kGeomTol) {
    Vec zeta = mean / mean.norm();
    double worst = zeta.dot(c.generators_[0]);
    for (const Vec& g : c.generators_) worst = std::min(worst, zeta.dot(g));
    if (worst > kGeomTol) {
      c.zeta_ = std::move(zeta);
    }
  }
  if (c.zeta_.size() == 0) {
    // The most interior functional: direction of the minimum-norm point of
    // the generator hull.
    Vec zeta = witness / witness.norm();
    double worst = zeta.dot(c.generators_[0]);
    for (const Vec& g : c.generators_) worst = std::min(worst, zeta.dot(g));
    if (worst <= kGeomTol) {
      throw Error(ErrorCode::ZetaFailure, "no strictly interior functional found");
    }
    c.zeta_ = std::move(zeta);
  }
  return c;
}

Cone Cone::polar() const {
  // The outward facet normals w satisfy w . y <= 0 for all y in C, so they
  // generate the polar cone.
  return Cone::make(n_, facet_normals_);
}

bool Cone::in_omega(const Vec& u, double margin) const {
  const Vec unit = unit_checked(u);
  for (const Vec& g : generators_) {
    if (unit.dot(g) >= -margin) return false;
  }
  return true;
}

bool Cone::contains(const Vec& x, double tol) const {
  const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (const Vec& w : facet_normals_) {
    if (w.dot(x) > tol * scale) return false;
  }
  return true;
}

Polytope Cone::truncate(double t) const {
  if (t <= 0.0) {
    throw Error(ErrorCode::NonPositiveT, "truncation height must be positive");
  }
  std::vector<Halfspace> hs = facet_halfspaces();
  hs.push_back({zeta_, t});
  return Polytope::intersect_halfspaces(n_, hs);
}

std::vector<Halfspace> Cone::facet_halfspaces() const {
  std::vector<Halfspace> hs;
  hs.reserve(facet_normals_.size());
  for (const Vec& w : facet_normals_) hs.push_back({w, 0.0});
  return hs;
}

bool Cone::same_as(const Cone& other, double tol) const {
  if (n_ != other.n_ || generators_.size() != other.generators_.size()) return false;
  for (size_t i = 0; i < generators_.size(); ++i) {
    if ((generators_[i] - other.generators_[i]).norm() > tol) return false;
  }
  return true;
}

}  // namespace coconvex
