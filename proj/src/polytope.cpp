#include "coconvex/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace coconvex {

namespace {

// Absolute tolerance scaled by the magnitude of the data involved.
double scaled_tol(double base, double magnitude) {
  return base * std::max(1.0, magnitude);
}

std::vector<Halfspace> dedup_halfspaces(int n, const std::vector<Halfspace>& input,
                                        std::vector<Halfspace>* dropped) {
  std::vector<Halfspace> kept;
  for (const Halfspace& h : input) {
    if (static_cast<int>(h.normal.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "halfspace normal has wrong dimension");
    }
    const double norm = h.normal.norm();
    if (norm < kGeomTol) {
      throw Error(ErrorCode::InvalidArgument, "halfspace normal is numerically zero");
    }
    Halfspace unit{h.normal / norm, h.offset / norm};
    bool merged = false;
    for (Halfspace& k : kept) {
      if (same_direction(k.normal, unit.normal)) {
        // Parallel constraints: the smaller offset dominates.
        if (unit.offset < k.offset) {
          if (dropped) dropped->push_back(k);
          k = unit;
        } else if (dropped) {
          dropped->push_back(unit);
        }
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(unit));
  }
  return kept;
}

int affine_rank(const std::vector<Vec>& points, double tol = 1e-7) {
  if (points.size() <= 1) return 0;
  const int n = static_cast<int>(points[0].size());
  Mat d(n, static_cast<int>(points.size()) - 1);
  for (size_t i = 1; i < points.size(); ++i) d.col(static_cast<int>(i) - 1) = points[i] - points[0];
  Eigen::JacobiSVD<Mat> svd(d);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol) ++rank;
  }
  return rank;
}

// Unbounded when the recession cone {d : a_i . d <= 0} contains a nonzero
// direction. Any extreme recession ray lies in the null space of n - 1 of
// the normals, so enumerating those subsets is exhaustive at this scale.
bool find_recession_direction(int n, const std::vector<Halfspace>& hs) {
  const int m = static_cast<int>(hs.size());
  Mat a(m, n);
  for (int i = 0; i < m; ++i) a.row(i) = hs[i].normal.transpose();

  Eigen::JacobiSVD<Mat> full(a);
  int rank = 0;
  for (int i = 0; i < full.singularValues().size(); ++i) {
    if (full.singularValues()[i] > 1e-9) ++rank;
  }
  if (rank < n) return true;  // the normals do not span, so a line recedes

  std::vector<int> comb(n - 1);
  for (int i = 0; i < n - 1; ++i) comb[i] = i;
  if (m < n - 1) return true;
  while (true) {
    Mat sub(n - 1, n);
    for (int i = 0; i < n - 1; ++i) sub.row(i) = hs[comb[i]].normal.transpose();
    Eigen::FullPivLU<Mat> lu(sub);
    lu.setThreshold(1e-9);
    if (lu.rank() == n - 1) {
      Mat kernel = lu.kernel();
      Vec d = kernel.col(0).normalized();
      for (int sign = 0; sign < 2; ++sign) {
        const Vec dir = sign == 0 ? d : Vec(-d);
        bool recedes = true;
        for (const Halfspace& h : hs) {
          if (h.normal.dot(dir) > kGeomTol) {
            recedes = false;
            break;
          }
        }
        if (recedes) return true;
      }
    }
    int i = n - 2;
    while (i >= 0 && comb[i] == m - (n - 1) + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n - 1; ++j) comb[j] = comb[j - 1] + 1;
  }
  return false;
}

std::vector<Vec> enumerate_vertices(int n, const std::vector<Halfspace>& hs) {
  const int m = static_cast<int>(hs.size());
  std::vector<Vec> candidates;
  if (m < n) return candidates;

  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    Mat a(n, n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      a.row(i) = hs[comb[i]].normal.transpose();
      b[i] = hs[comb[i]].offset;
    }
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-9);
    if (lu.rank() == n) {
      Vec x = lu.solve(b);
      bool feasible = true;
      const double tol = scaled_tol(kFeasTol, x.lpNorm<Eigen::Infinity>());
      for (const Halfspace& h : hs) {
        if (h.normal.dot(x) > h.offset + tol) {
          feasible = false;
          break;
        }
      }
      if (feasible) candidates.push_back(std::move(x));
    }
    int i = n - 1;
    while (i >= 0 && comb[i] == m - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }

  // Canonical order plus merge of near-identical candidates; the first
  // element of each cluster is the lexicographic representative, so the
  // result does not depend on the input halfspace order.
  std::sort(candidates.begin(), candidates.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b, 0.0); });
  std::vector<Vec> vertices;
  for (const Vec& c : candidates) {
    bool duplicate = false;
    for (const Vec& v : vertices) {
      if ((c - v).norm() <= scaled_tol(1e-7, v.lpNorm<Eigen::Infinity>())) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(c);
  }
  return vertices;
}

// Measure of a (dim)-dimensional polytope given its vertex list and
// halfspace description in local coordinates, by the interior-point pyramid
// formula applied recursively down to intervals.
double measure_recursive(int dim, const std::vector<Vec>& pts, const std::vector<Halfspace>& hs) {
  if (pts.empty()) return 0.0;
  if (dim == 1) {
    double lo = pts[0][0];
    double hi = pts[0][0];
    for (const Vec& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }

  Vec centroid = Vec::Zero(dim);
  for (const Vec& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());

  double total = 0.0;
  for (const Halfspace& h : hs) {
    std::vector<Vec> on_face;
    double max_coord = 0.0;
    for (const Vec& p : pts) {
      max_coord = std::max(max_coord, p.lpNorm<Eigen::Infinity>());
      if (std::abs(h.normal.dot(p) - h.offset) <= scaled_tol(1e-7, p.lpNorm<Eigen::Infinity>())) {
        on_face.push_back(p);
      }
    }
    if (static_cast<int>(on_face.size()) < dim) continue;
    if (affine_rank(on_face, scaled_tol(1e-8, max_coord)) < dim - 1) continue;

    Mat basis = hyperplane_basis(h.normal);
    const Vec origin = on_face[0];
    std::vector<Vec> sub_pts;
    sub_pts.reserve(on_face.size());
    for (const Vec& p : on_face) sub_pts.push_back(basis.transpose() * (p - origin));

    std::vector<Halfspace> sub_hs;
    for (const Halfspace& g : hs) {
      if (&g == &h) continue;
      Vec restricted = basis.transpose() * g.normal;
      const double norm = restricted.norm();
      if (norm < 1e-9) continue;  // parallel to the face hyperplane
      sub_hs.push_back({restricted / norm, (g.offset - g.normal.dot(origin)) / norm});
    }
    // Two facets symmetric about this hyperplane restrict to the same
    // halfspace; merge them so the shared ridge is counted once.
    std::vector<Halfspace> sub_dedup = dedup_halfspaces(dim - 1, sub_hs, nullptr);

    const double face = measure_recursive(dim - 1, sub_pts, sub_dedup);
    total += (h.offset - h.normal.dot(centroid)) * face;
  }
  return total / static_cast<double>(dim);
}

}  // namespace

Polytope Polytope::intersect_halfspaces(int n, const std::vector<Halfspace>& halfspaces) {
  require_dimension(n);
  Polytope p;
  p.n_ = n;

  std::vector<Halfspace> dominated;
  std::vector<Halfspace> hs = dedup_halfspaces(n, halfspaces, &dominated);

  if (find_recession_direction(n, hs)) {
    throw Error(ErrorCode::Unbounded, "halfspace intersection has a recession direction");
  }

  p.vertices_ = enumerate_vertices(n, hs);
  if (p.vertices_.empty()) {
    throw Error(ErrorCode::Empty, "halfspace intersection is empty");
  }
  double max_coord = 0.0;
  for (const Vec& v : p.vertices_) max_coord = std::max(max_coord, v.lpNorm<Eigen::Infinity>());
  if (affine_rank(p.vertices_, scaled_tol(1e-8, max_coord)) < n) {
    throw Error(ErrorCode::LowDimensional, "halfspace intersection has empty interior");
  }

  for (const Halfspace& h : hs) {
    Facet f;
    f.normal = h.normal;
    f.offset = h.offset;
    std::vector<Vec> on_face;
    for (size_t i = 0; i < p.vertices_.size(); ++i) {
      const Vec& v = p.vertices_[i];
      if (std::abs(h.normal.dot(v) - h.offset) <= scaled_tol(1e-7, v.lpNorm<Eigen::Infinity>())) {
        f.vertex_indices.push_back(static_cast<int>(i));
        on_face.push_back(v);
      }
    }
    if (static_cast<int>(on_face.size()) < n ||
        affine_rank(on_face, scaled_tol(1e-8, max_coord)) < n - 1) {
      p.inactive_.push_back(h);
      continue;
    }
    Mat basis = hyperplane_basis(h.normal);
    const Vec origin = on_face[0];
    std::vector<Vec> sub_pts;
    for (const Vec& v : on_face) sub_pts.push_back(basis.transpose() * (v - origin));
    std::vector<Halfspace> sub_hs;
    for (const Halfspace& g : hs) {
      if (&g == &h) continue;
      Vec restricted = basis.transpose() * g.normal;
      const double norm = restricted.norm();
      if (norm < 1e-9) continue;
      sub_hs.push_back({restricted / norm, (g.offset - g.normal.dot(origin)) / norm});
    }
    std::vector<Halfspace> sub_dedup = dedup_halfspaces(n - 1, sub_hs, nullptr);
    f.measure = measure_recursive(n - 1, sub_pts, sub_dedup);
    if (f.measure <= 0.0) {
      p.inactive_.push_back(h);
      continue;
    }
    p.facets_.push_back(std::move(f));
  }
  for (Halfspace& h : dominated) p.inactive_.push_back(std::move(h));

  const Vec x0 = p.interior_point();
  double vol = 0.0;
  for (const Facet& f : p.facets_) {
    vol += (f.offset - f.normal.dot(x0)) * f.measure;
  }
  p.volume_ = vol / static_cast<double>(n);
  return p;
}

double Polytope::facet_measure(const Vec& u) const {
  for (const Facet& f : facets_) {
    if (same_direction(f.normal, u)) return f.measure;
  }
  return 0.0;
}

double Polytope::support_value(const Vec& u) const {
  double best = vertices_[0].dot(u);
  for (const Vec& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

const Vec& Polytope::support_vertex(const Vec& u) const {
  size_t arg = 0;
  double best = vertices_[0].dot(u);
  for (size_t i = 1; i < vertices_.size(); ++i) {
    const double val = vertices_[i].dot(u);
    if (val > best) {
      best = val;
      arg = i;
    }
  }
  return vertices_[arg];
}

Vec Polytope::interior_point() const {
  Vec c = Vec::Zero(n_);
  for (const Vec& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Vec Polytope::facet_measure_resultant() const {
  Vec r = Vec::Zero(n_);
  for (const Facet& f : facets_) r += f.measure * f.normal;
  return r;
}

}  // namespace coconvex
