#include <doctest.h>

#include <cmath>
#include <vector>

#include "coconvex/checks.hpp"
#include "coconvex/coconvex_set.hpp"
#include "helpers.hpp"

using namespace coconvex;
using coconvex::testing::quadrant;
using coconvex::testing::quadrant_set;
using coconvex::testing::rel_err;
using coconvex::testing::vec;

namespace {

const double kRoot2 = std::sqrt(2.0);

// Two-cut quadrant instance with closed-form facet lengths:
// cuts x + y >= s1 * sqrt(2) and 0.6 x + 0.8 y >= s2.
CCoconvexSet two_cut_set(double s1, double s2) {
  const Cone c = quadrant();
  const DirectionSet omega =
      DirectionSet::make(c, {vec({-1, -1}) / kRoot2, vec({-0.6, -0.8})});
  return CCoconvexSet::wulff(c, omega, {s1, s2});
}

// Covolume recomputed from scratch at an independent truncation height.
double covolume_at(const CCoconvexSet& a, double t) {
  std::vector<Halfspace> hs = a.cone().facet_halfspaces();
  for (int i = 0; i < a.omega().size(); ++i) {
    hs.push_back({a.omega()[i], -a.support()[static_cast<size_t>(i)]});
  }
  hs.push_back({a.cone().zeta(), t});
  const Polytope cut = Polytope::intersect_halfspaces(a.cone().dim(), hs);
  return a.cone().truncate(t).volume() - cut.volume();
}

}  // namespace

TEST_CASE("quadrant single-cut closed forms") {
  const CCoconvexSet a = quadrant_set(kRoot2);
  REQUIRE(a.omega().size() == 1);

  CHECK(a.covolume() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.support()[0] == doctest::Approx(kRoot2).epsilon(1e-12));
  CHECK(a.input_attained()[0]);
  CHECK(a.facet_measures()[0] == doctest::Approx(2.0 * kRoot2).epsilon(1e-12));

  const Vec ustar = vec({-1, -1}) / kRoot2;
  CHECK(a.surface_measure().weight_at(ustar) ==
        doctest::Approx(2.0 * kRoot2).epsilon(1e-12));
  CHECK(a.lp_surface_measure(0.5).weight_at(ustar) ==
        doctest::Approx(std::pow(2.0, 1.75)).epsilon(1e-12));
  CHECK(a.cone_volume_measure().weight_at(ustar) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.cone_volume_measure().total() ==
        doctest::Approx(a.covolume()).epsilon(1e-12));

  CHECK(is_c_determined(a.cone(), a.omega(), a.support()));
}

TEST_CASE("inactive direction keeps its attained value") {
  // Second cut 0.8 x + 0.6 y >= 10 dominates the first; the body is the
  // triangle cut with vertices (12.5, 0) and (0, 50/3).
  const Cone c = quadrant();
  const DirectionSet omega =
      DirectionSet::make(c, {vec({-1, -1}) / kRoot2, vec({-0.8, -0.6})});
  const CCoconvexSet a = CCoconvexSet::wulff(c, omega, {kRoot2, 10.0});

  CHECK_FALSE(a.input_attained()[0]);
  CHECK(a.input_attained()[1]);
  // min of (x + y)/sqrt(2) over the cut region is at (12.5, 0).
  CHECK(a.support()[0] == doctest::Approx(12.5 / kRoot2).epsilon(1e-12));
  CHECK(a.support()[1] == doctest::Approx(10.0).epsilon(1e-12));

  CHECK(a.covolume() ==
        doctest::Approx(0.5 * 12.5 * (50.0 / 3.0)).epsilon(1e-12));
  CHECK(a.facet_measures()[0] == 0.0);
  // Hypotenuse between (12.5, 0) and (0, 50/3) has length 125/6.
  CHECK(a.facet_measures()[1] == doctest::Approx(125.0 / 6.0).epsilon(1e-12));

  CHECK_FALSE(is_c_determined(c, omega, {kRoot2, 10.0}));
  // The attained vector is a fixed point.
  CHECK(is_c_determined(c, omega, a.support()));
}

TEST_CASE("support_at evaluates off omega and rejects outside directions") {
  const CCoconvexSet a = quadrant_set(kRoot2);
  // min of 0.8 x + 0.6 y over {x + y >= 2} is at (0, 2).
  CHECK(a.support_at(vec({-0.8, -0.6})) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(a.support_at(vec({-0.6, -0.8})) == doctest::Approx(1.2).epsilon(1e-12));
  // On omega the stored value is returned.
  CHECK(a.support_at(vec({-1, -1}) / kRoot2) ==
        doctest::Approx(kRoot2).epsilon(1e-12));
  CHECK_THROWS_AS(a.support_at(vec({-1, 0})), Error);   // polar boundary
  CHECK_THROWS_AS(a.support_at(vec({0.6, 0.8})), Error);
  CHECK_THROWS_WITH_AS(a.support_at(vec({-1, -1})), doctest::Contains("NotUnit"),
                       Error);
}

TEST_CASE("wulff scaling matches dilation") {
  const double alpha = 2.7;
  const CCoconvexSet a = two_cut_set(1.0, 1.0);
  const CCoconvexSet scaled =
      CCoconvexSet::wulff(a.cone(), a.omega(), {alpha, alpha});
  const CCoconvexSet dilated = a.dilate(alpha);
  const int n = a.cone().dim();
  for (int i = 0; i < a.omega().size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    CHECK(scaled.support()[k] ==
          doctest::Approx(alpha * a.support()[k]).epsilon(1e-12));
    CHECK(dilated.support()[k] ==
          doctest::Approx(alpha * a.support()[k]).epsilon(1e-12));
    CHECK(scaled.facet_measures()[k] ==
          doctest::Approx(std::pow(alpha, n - 1) * a.facet_measures()[k])
              .epsilon(1e-12));
  }
  CHECK(scaled.covolume() ==
        doctest::Approx(std::pow(alpha, n) * a.covolume()).epsilon(1e-12));
  CHECK(dilated.covolume() ==
        doctest::Approx(scaled.covolume()).epsilon(1e-12));
}

TEST_CASE("two-cut facet lengths: closed form and Monte-Carlo slab") {
  const CCoconvexSet a = two_cut_set(1.0, 1.0);
  REQUIRE(a.input_attained()[0]);
  REQUIRE(a.input_attained()[1]);

  // Hand geometry: the diagonal facet runs from (0, sqrt 2) to
  // (4 sqrt 2 - 5, 5 - 3 sqrt 2), the second from there to (5/3, 0).
  const double sigma1 = 8.0 - 5.0 * kRoot2;
  const double sigma2 = 1.25 * (20.0 / 3.0 - 4.0 * kRoot2);
  CHECK(a.facet_measures()[0] == doctest::Approx(sigma1).epsilon(1e-12));
  CHECK(a.facet_measures()[1] == doctest::Approx(sigma2).epsilon(1e-12));

  // Monte-Carlo slab estimate: count samples within distance delta/2 of the
  // facet hyperplane that satisfy every other constraint, then divide the
  // slab area by delta. The symmetric slab cancels the linear cross-section
  // drift, so the estimator is exact up to sampling noise.
  const double delta = 0.02;
  const int samples = 20000000;
  SplitMix64 rng(2026);
  long count[2] = {0, 0};
  const Vec u1 = a.omega()[0];
  const Vec u2 = a.omega()[1];
  for (int s = 0; s < samples; ++s) {
    Vec x(2);
    x[0] = rng.uniform(0.0, 2.0);
    x[1] = rng.uniform(0.0, 2.0);
    const double d1 = x.dot(u1) + a.support()[0];
    const double d2 = x.dot(u2) + a.support()[1];
    if (std::abs(d1) <= 0.5 * delta && d2 <= 0.0) ++count[0];
    if (std::abs(d2) <= 0.5 * delta && d1 <= 0.0) ++count[1];
  }
  const double box = 4.0;
  const double est1 = box * count[0] / samples / delta;
  const double est2 = box * count[1] / samples / delta;
  CHECK(rel_err(est1, sigma1) < 0.01);
  CHECK(rel_err(est2, sigma2) < 0.01);
}

TEST_CASE("random instances satisfy the volume identity and stay bounded") {
  for (int n : {2, 3}) {
    int used = 0;
    for (unsigned long long seed = 1; seed <= 8; ++seed) {
      InstanceGenerator gen;
      gen.n = n;
      gen.cone_generators = n + 1;
      gen.omega_size = n + 1;
      gen.seed = seed;
      InstancePair pair;
      try {
        pair = random_instance(gen);
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::GenerationFailure);
        continue;
      }
      ++used;
      const CCoconvexSet& a = pair.a;

      // V = (1/n) sum hbar * sigma.
      double integral = 0.0;
      for (int i = 0; i < a.omega().size(); ++i) {
        integral += a.support()[static_cast<size_t>(i)] *
                    a.facet_measures()[static_cast<size_t>(i)];
      }
      integral /= n;
      CHECK(rel_err(integral, a.covolume()) < 1e-9);
      CHECK(rel_err(a.cone_volume_measure().total(), a.covolume()) < 1e-9);

      // Truncation independence: rebuild from scratch at 2 t*.
      CHECK(std::abs(covolume_at(a, 2.0 * a.tstar()) - a.covolume()) <
            1e-12 * a.covolume());

      // Every omega facet of the body lies strictly below the cut plane.
      for (const Facet& f : a.body().facets()) {
        if (a.omega().find(f.normal) < 0) continue;
        for (int vi : f.vertex_indices) {
          CHECK(a.cone().zeta().dot(a.body().vertices()[vi]) <
                a.tstar() * (1.0 - 1e-6));
        }
      }
    }
    CHECK(used >= 6);
  }
}

TEST_CASE("support dominance gives inclusion and volume monotonicity") {
  const CCoconvexSet small = two_cut_set(1.0, 1.0);
  const CCoconvexSet big = two_cut_set(1.3, 1.05);
  CHECK(includes(small, big));
  CHECK_FALSE(includes(big, small));
  CHECK(small.covolume() < big.covolume());

  // Incomparable pair: neither contains the other, volumes still defined.
  const CCoconvexSet left = two_cut_set(1.3, 1.0);
  const CCoconvexSet right = two_cut_set(1.0, 1.3);
  CHECK_FALSE(includes(left, right));
  CHECK_FALSE(includes(right, left));
}

TEST_CASE("surface measures converge along a dyadic support sequence") {
  const std::vector<double> base = {1.0, 1.1};
  const std::vector<double> dir = {0.05, -0.04};
  const CCoconvexSet limit = two_cut_set(base[0], base[1]);
  REQUIRE(limit.input_attained()[0]);
  REQUIRE(limit.input_attained()[1]);

  // Integrals of f against the surface measure for f = 1 and f = hbar(A, .).
  auto integrals = [&](const CCoconvexSet& a, double* flat, double* weighted) {
    *flat = 0.0;
    *weighted = 0.0;
    for (size_t i = 0; i < 2; ++i) {
      *flat += a.facet_measures()[i];
      *weighted += limit.support()[i] * a.facet_measures()[i];
    }
  };
  double flat_lim = 0.0, weighted_lim = 0.0;
  integrals(limit, &flat_lim, &weighted_lim);

  double prev_flat = 1e30, prev_weighted = 1e30;
  for (int k = 1; k <= 5; ++k) {
    const double step = std::pow(0.5, k);
    const CCoconvexSet ak =
        two_cut_set(base[0] + step * dir[0], base[1] + step * dir[1]);
    double flat_k = 0.0, weighted_k = 0.0;
    integrals(ak, &flat_k, &weighted_k);
    const double err_flat = std::abs(flat_k - flat_lim);
    const double err_weighted = std::abs(weighted_k - weighted_lim);
    CHECK(err_flat < prev_flat);
    CHECK(err_weighted < prev_weighted);
    prev_flat = err_flat;
    prev_weighted = err_weighted;
  }
  CHECK(prev_flat < 0.05 * flat_lim);
  CHECK(prev_weighted < 0.05 * weighted_lim);
}

TEST_CASE("lp surface measure at p = 1 is the surface measure") {
  const CCoconvexSet a = two_cut_set(1.0, 1.4);
  const DiscreteMeasure s = a.surface_measure();
  const DiscreteMeasure l = a.lp_surface_measure(1.0);
  REQUIRE(s.size() == l.size());
  for (int i = 0; i < s.size(); ++i) {
    CHECK(l[i].w == s[i].w);
    CHECK((l[i].u - s[i].u).norm() < 1e-12);
  }
  CHECK_THROWS_WITH_AS(a.lp_surface_measure(0.0), doctest::Contains("ZeroP"),
                       Error);
}

TEST_CASE("dilation homogeneity of the measure family") {
  const double alpha = 1.9;
  const CCoconvexSet a = two_cut_set(1.0, 1.2);
  const CCoconvexSet b = a.dilate(alpha);
  const int n = a.cone().dim();
  for (double p : {-1.0, 0.5, 2.0}) {
    const DiscreteMeasure ma = a.lp_surface_measure(p);
    const DiscreteMeasure mb = b.lp_surface_measure(p);
    for (int i = 0; i < ma.size(); ++i) {
      CHECK(rel_err(mb[i].w, std::pow(alpha, n - p) * ma[i].w) < 1e-12);
    }
  }
  const DiscreteMeasure ca = a.cone_volume_measure();
  const DiscreteMeasure cb = b.cone_volume_measure();
  for (int i = 0; i < ca.size(); ++i) {
    CHECK(rel_err(cb[i].w, std::pow(alpha, n) * ca[i].w) < 1e-12);
  }
  CHECK_THROWS_AS(a.dilate(0.0), Error);
  CHECK_THROWS_AS(a.dilate(-2.0), Error);
}

TEST_CASE("direction set construction and lookup") {
  const Cone c = quadrant();
  const Vec u1 = vec({-1, -1}) / kRoot2;
  const Vec u2 = vec({-0.6, -0.8});
  const DirectionSet ds = DirectionSet::make(c, {u1, u2});
  CHECK(ds.size() == 2);
  CHECK(ds.find(u1) == 0);
  CHECK(ds.find(u2) == 1);
  CHECK(ds.find(vec({-0.8, -0.6})) == -1);

  const DirectionSet other = DirectionSet::make(c, {vec({-0.8, -0.6}), u1});
  const DirectionSet merged = DirectionSet::merge(c, ds, other);
  CHECK(merged.size() == 3);
  CHECK(merged.find(u1) == 0);
  CHECK(merged.find(vec({-0.8, -0.6})) == 2);
  CHECK(ds.same_as(DirectionSet::make(c, {u2, u1})));
  CHECK_FALSE(ds.same_as(other));

  CHECK_THROWS_WITH_AS(DirectionSet::make(c, {}), doctest::Contains("EmptyOmega"),
                       Error);
  CHECK_THROWS_WITH_AS(DirectionSet::make(c, {u1, u1}),
                       doctest::Contains("DuplicateDirection"), Error);
  CHECK_THROWS_AS(DirectionSet::make(c, {vec({0.6, 0.8})}), Error);
  CHECK_THROWS_AS(DirectionSet::make(c, {vec({-1, 0})}), Error);
}

TEST_CASE("wulff input validation") {
  const Cone c = quadrant();
  const DirectionSet omega = DirectionSet::make(c, {vec({-1, -1}) / kRoot2});
  CHECK_THROWS_WITH_AS(CCoconvexSet::wulff(c, omega, {0.0}),
                       doctest::Contains("NonPositiveF"), Error);
  CHECK_THROWS_AS(CCoconvexSet::wulff(c, omega, {-1.0}), Error);
  CHECK_THROWS_AS(CCoconvexSet::wulff(c, omega, {1.0, 2.0}), Error);
}

TEST_CASE("discrete measure validation and accessors") {
  const Cone c = quadrant();
  const Vec u = vec({-1, -1}) / kRoot2;
  const DiscreteMeasure m = DiscreteMeasure::make(c, {{u, 1.5}, {vec({-0.6, -0.8}), 0.0}});
  CHECK(m.total() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(m.weight_at(u) == 1.5);
  CHECK(m.weight_at(vec({-0.8, -0.6})) == 0.0);

  CHECK_THROWS_AS(DiscreteMeasure::make(c, {{u, -0.1}}), Error);
  CHECK_THROWS_AS(DiscreteMeasure::make(c, {{vec({0.6, 0.8}), 1.0}}), Error);
  CHECK_THROWS_WITH_AS(DiscreteMeasure::make(c, {{vec({-1, -1}), 1.0}}),
                       doctest::Contains("NotUnit"), Error);
}
