#include <doctest.h>

#include <cmath>
#include <vector>

#include "coconvex/checks.hpp"
#include "coconvex/lp_algebra.hpp"
#include "helpers.hpp"

using namespace coconvex;
using coconvex::testing::quadrant;
using coconvex::testing::quadrant_set;
using coconvex::testing::rel_err;
using coconvex::testing::vec;

namespace {

const double kRoot2 = std::sqrt(2.0);

CCoconvexSet two_cut_set(double s1, double s2) {
  const Cone c = quadrant();
  const DirectionSet omega =
      DirectionSet::make(c, {vec({-1, -1}) / kRoot2, vec({-0.6, -0.8})});
  return CCoconvexSet::wulff(c, omega, {s1, s2});
}

}  // namespace

TEST_CASE("PExponent regimes") {
  CHECK(PExponent::log_regime().is_log());
  CHECK(PExponent::of(0.5).regime() == PExponent::Regime::Fractional);
  CHECK(PExponent::of(1.0).regime() == PExponent::Regime::Linear);
  CHECK(PExponent::of(2.0).regime() == PExponent::Regime::General);
  CHECK(PExponent::of(-1.0).regime() == PExponent::Regime::General);
  CHECK(PExponent::of(0.5).value() == 0.5);
  CHECK_THROWS_WITH_AS(PExponent::of(0.0), doctest::Contains("ZeroP"), Error);
  CHECK_THROWS_AS(PExponent::log_regime().value(), Error);
  CHECK_THROWS_AS(TauWeight(0.0), Error);
  CHECK_THROWS_AS(TauWeight(1.0), Error);
}

TEST_CASE("p-co-sum of a set with itself at p = 1/2") {
  const CCoconvexSet a = quadrant_set(kRoot2);
  const CCoconvexSet s = p_co_sum(1.0, a, 1.0, a, PExponent::of(0.5));
  // (2 sqrt(hbar))^2 = 4 hbar.
  CHECK(s.support()[0] == doctest::Approx(4.0 * kRoot2).epsilon(1e-12));
  CHECK(s.covolume() == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("p-co-sum equality chain on dilates") {
  const double alpha = 3.0;
  for (double p : {0.25, 0.5, 1.0}) {
    const CCoconvexSet a = two_cut_set(1.0, 1.1);
    const int n = a.cone().dim();

    // Combining A with its dilate alpha A.
    const CCoconvexSet s1 =
        p_co_sum(1.0, a, 1.0, a.dilate(alpha), PExponent::of(p));
    const double lhs1 = std::pow(s1.covolume(), p / n);
    const double rhs1 =
        (1.0 + std::pow(alpha, p)) * std::pow(a.covolume(), p / n);
    CHECK(rel_err(lhs1, rhs1) < 1e-12);

    // Scalar rule: alpha o A = alpha^{1/p} A.
    const CCoconvexSet s2 = p_co_sum(1.0, a, alpha, a, PExponent::of(p));
    const double lhs2 = std::pow(s2.covolume(), p / n);
    const double rhs2 = (1.0 + alpha) * std::pow(a.covolume(), p / n);
    CHECK(rel_err(lhs2, rhs2) < 1e-12);
    CHECK(rel_err(s2.support()[0],
                  std::pow(1.0 + alpha, 1.0 / p) * a.support()[0]) < 1e-12);
  }
}

TEST_CASE("p-co-sum nests between log-co-sum and the linear combination") {
  const CCoconvexSet a1 = two_cut_set(1.0, 1.3);
  const CCoconvexSet a2 = two_cut_set(1.6, 1.05);
  const double tau = 0.35;

  const CCoconvexSet logsum = log_co_sum(TauWeight(tau), a1, a2);
  const CCoconvexSet psum =
      p_co_sum(1.0 - tau, a1, tau, a2, PExponent::of(0.5));
  const CCoconvexSet linsum =
      p_co_sum(1.0 - tau, a1, tau, a2, PExponent::of(1.0));

  CHECK(includes(logsum, psum));
  CHECK(includes(psum, linsum));
  // Strict on support: the generating means are strictly ordered when the
  // operand supports differ.
  for (size_t i = 0; i < 2; ++i) {
    CHECK(logsum.support()[i] < psum.support()[i]);
    CHECK(psum.support()[i] < linsum.support()[i]);
  }

  // Equal operands collapse the chain.
  const CCoconvexSet same_log = log_co_sum(TauWeight(tau), a1, a1);
  const CCoconvexSet same_p = p_co_sum(1.0 - tau, a1, tau, a1, PExponent::of(0.5));
  for (size_t i = 0; i < 2; ++i) {
    CHECK(same_log.support()[i] == doctest::Approx(a1.support()[i]).epsilon(1e-12));
    CHECK(same_p.support()[i] == doctest::Approx(a1.support()[i]).epsilon(1e-12));
  }
}

TEST_CASE("log-co-sum closed form and idempotence") {
  const CCoconvexSet a1 = quadrant_set(1.0);
  const CCoconvexSet a2 = quadrant_set(4.0);
  const CCoconvexSet s = log_co_sum(TauWeight(0.5), a1, a2);
  CHECK(s.support()[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.covolume() == doctest::Approx(4.0).epsilon(1e-12));

  const CCoconvexSet same = log_co_sum(TauWeight(0.3), a2, a2);
  CHECK(same.support()[0] == doctest::Approx(a2.support()[0]).epsilon(1e-12));
  CHECK(same.covolume() == doctest::Approx(a2.covolume()).epsilon(1e-12));
}

TEST_CASE("small p approaches the log-co-sum") {
  const CCoconvexSet a1 = two_cut_set(1.0, 1.4);
  const CCoconvexSet a2 = two_cut_set(1.8, 1.1);
  const double tau = 0.4;
  const CCoconvexSet logsum = log_co_sum(TauWeight(tau), a1, a2);
  const CCoconvexSet near =
      p_co_sum(1.0 - tau, a1, tau, a2, PExponent::of(1e-3));
  for (size_t i = 0; i < 2; ++i) {
    CHECK(rel_err(near.support()[i], logsum.support()[i]) < 1e-3);
  }
}

TEST_CASE("first mixed volume") {
  const CCoconvexSet a = quadrant_set(kRoot2);
  CHECK(mixed_volume_1(a, a) == doctest::Approx(2.0).epsilon(1e-12));

  // Monotone in the second argument.
  const CCoconvexSet small = two_cut_set(1.0, 1.0);
  const CCoconvexSet mid = two_cut_set(1.2, 1.1);
  const CCoconvexSet big = two_cut_set(1.5, 1.3);
  CHECK(mixed_volume_1(small, mid) <= mixed_volume_1(small, big));

  // Dilates achieve Minkowski equality: V_1(A, alpha A)^n = V^{n-1} V(alpha A).
  const double alpha = 3.0;
  const CCoconvexSet dil = small.dilate(alpha);
  const int n = small.cone().dim();
  const double lhs = std::pow(mixed_volume_1(small, dil), n);
  const double rhs =
      std::pow(small.covolume(), n - 1) * dil.covolume();
  CHECK(rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("lp mixed volume closed forms") {
  const CCoconvexSet a = two_cut_set(1.0, 1.2);
  for (double p : {-1.0, 0.5, 1.0, 2.0}) {
    CHECK(rel_err(lp_mixed_volume(a, a, p), a.covolume()) < 1e-12);
  }

  // Homogeneity alpha^{n-p} beta^p.
  const CCoconvexSet b = two_cut_set(1.4, 1.05);
  const double alpha = 2.0, beta = 3.0, p = 0.5;
  const double base = lp_mixed_volume(a, b, p);
  const double scaled = lp_mixed_volume(a.dilate(alpha), b.dilate(beta), p);
  CHECK(rel_err(scaled, std::pow(alpha, 1.5) * std::pow(beta, 0.5) * base) <
        1e-12);

  // Function form agrees with the set form when g samples hbar(B, .).
  std::vector<double> g;
  for (const Vec& u : a.omega().directions()) g.push_back(b.support_at(u));
  CHECK(lp_mixed_volume_fn(a, g, p) == doctest::Approx(base).epsilon(1e-12));

  CHECK(mixed_volume_1(a, b) ==
        doctest::Approx(lp_mixed_volume(a, b, 1.0)).epsilon(1e-12));
}

TEST_CASE("log mixed volume") {
  const CCoconvexSet a = quadrant_set(2.0);
  CHECK(log_mixed_volume(a, a) == 0.0);

  // V_0(A, alpha A) = log(alpha) V(A); alpha = e gives V(A).
  const CCoconvexSet dil = a.dilate(std::exp(1.0));
  CHECK(rel_err(log_mixed_volume(a, dil), a.covolume()) < 1e-12);

  // Shrinking the second argument makes it negative.
  const CCoconvexSet half = quadrant_set(1.0);
  CHECK(log_mixed_volume(a, half) ==
        doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("variational derivative closed forms on the quadrant") {
  const CCoconvexSet a = quadrant_set(kRoot2);
  const std::vector<double> ones = {1.0};
  // (1/p) sum f hbar^{1-p} sigma, checked against d/dtau of the explicit
  // family s(tau) = (2^{p/2} + tau)^{1/p}, V(tau) = s(tau)^2.
  CHECK(variational_derivative(a, ones, 1.0) ==
        doctest::Approx(2.0 * kRoot2).epsilon(1e-12));
  CHECK(variational_derivative(a, ones, 0.5) ==
        doctest::Approx(std::pow(2.0, 2.75)).epsilon(1e-12));
  CHECK(variational_derivative(a, ones, 2.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(variational_derivative(a, ones, -1.0) ==
        doctest::Approx(-4.0 * kRoot2).epsilon(1e-12));
}

TEST_CASE("variational derivative is linear and matches finite differences") {
  const CCoconvexSet a = two_cut_set(1.0, 1.2);
  const std::vector<double> f = {0.8, 1.3};
  const std::vector<double> g = {0.4, -0.5};

  for (double p : {-1.0, 0.5, 1.0, 2.0}) {
    std::vector<double> combo(2);
    for (size_t i = 0; i < 2; ++i) combo[i] = 2.0 * f[i] + 3.0 * g[i];
    const double lin = variational_derivative(a, combo, p);
    const double parts = 2.0 * variational_derivative(a, f, p) +
                         3.0 * variational_derivative(a, g, p);
    CHECK(rel_err(lin, parts) < 1e-12);

    const double analytic = variational_derivative(a, f, p);
    const double fd = variational_derivative_fd(a, f, p, 1e-5);
    CHECK(rel_err(fd, analytic) < 1e-4);
  }

  const double bound = variational_tau_bound(a, f, 0.5);
  CHECK(bound > 0.0);
  CHECK_THROWS_WITH_AS(variational_derivative_fd(a, f, 0.5, bound),
                       doctest::Contains("StepTooLarge"), Error);
}

TEST_CASE("support function is midpoint concave on the polar interior") {
  SplitMix64 rng(907);
  const CCoconvexSet a = two_cut_set(1.0, 1.3);
  const Cone& c = a.cone();
  int tested = 0;
  while (tested < 20) {
    Vec u1 = (-(c.zeta() + 0.4 * rng.unit_vector(2))).eval();
    Vec u2 = (-(c.zeta() + 0.4 * rng.unit_vector(2))).eval();
    u1 /= u1.norm();
    u2 /= u2.norm();
    if (!c.in_omega(u1, 0.02) || !c.in_omega(u2, 0.02)) continue;
    ++tested;
    const Vec mid = (0.5 * (u1 + u2)).eval();
    const double lhs = mid.norm() * a.support_at((mid / mid.norm()).eval());
    const double rhs = 0.5 * (a.support_at(u1) + a.support_at(u2));
    CHECK(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("combination input validation") {
  const CCoconvexSet a = quadrant_set(1.0);
  const CCoconvexSet b = quadrant_set(2.0);
  CHECK_THROWS_WITH_AS(p_co_sum(0.0, a, 0.0, b, PExponent::of(0.5)),
                       doctest::Contains("BothZero"), Error);
  CHECK_THROWS_AS(p_co_sum(-1.0, a, 1.0, b, PExponent::of(0.5)), Error);
  CHECK_THROWS_AS(p_co_sum(1.0, a, 1.0, b, PExponent::of(2.0)), Error);
  CHECK_THROWS_AS(p_co_sum(1.0, a, 1.0, b, PExponent::log_regime()), Error);

  const Cone other = Cone::make(
      2, {vec({1, 0}), vec({1, 1}) / kRoot2});
  const DirectionSet omega = DirectionSet::make(other, {vec({-0.3, -0.9539392014169456})});
  const CCoconvexSet c = CCoconvexSet::wulff(other, omega, {1.0});
  CHECK_THROWS_WITH_AS(p_co_sum(1.0, a, 1.0, c, PExponent::of(0.5)),
                       doctest::Contains("ConeMismatch"), Error);
  CHECK_THROWS_AS(mixed_volume_1(a, c), Error);

  CHECK_THROWS_WITH_AS(lp_mixed_volume(a, b, 0.0), doctest::Contains("ZeroP"),
                       Error);
  CHECK_THROWS_AS(lp_mixed_volume_fn(a, {1.0, 2.0}, 0.5), Error);
  CHECK_THROWS_WITH_AS(lp_mixed_volume_fn(a, {-1.0}, 0.5),
                       doctest::Contains("NonPositiveF"), Error);
}
