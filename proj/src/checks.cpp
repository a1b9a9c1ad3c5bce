#include "coconvex/checks.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>

namespace coconvex {

namespace {

using OrderedJson = nlohmann::ordered_json;

Vec to_vec(const std::vector<double>& v) {
  Vec x(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
  return x;
}

std::vector<double> from_vec(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Cone random_cone(SplitMix64& rng, int n, int generator_count) {
  if (n == 2) {
    const double base = rng.uniform(0.0, 2.0 * M_PI);
    const double opening = rng.uniform(0.6, 2.6);
    Vec g1(2), g2(2);
    g1 << std::cos(base), std::sin(base);
    g2 << std::cos(base + opening), std::sin(base + opening);
    return Cone::make(2, {g1, g2});
  }

  const int k = std::max(generator_count, n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Vec axis = rng.unit_vector(n);
    const Mat basis = hyperplane_basis(axis);
    std::vector<Vec> gens;
    for (int i = 0; i < k; ++i) {
      const double psi = rng.uniform(0.4, 0.9);  // half-angle, keeps the cone pointed
      Vec dir;
      if (n == 3) {
        // Jittered regular spacing guarantees a full-dimensional span.
        const double phi = 2.0 * M_PI * (i + 0.25 + 0.5 * rng.next_double()) / k;
        dir = basis.col(0) * std::cos(phi) + basis.col(1) * std::sin(phi);
      } else {
        Vec w = rng.unit_vector(n - 1);
        dir = basis * w;
      }
      gens.push_back((std::cos(psi) * axis + std::sin(psi) * dir).normalized());
    }
    try {
      return Cone::make(n, gens);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateCone && e.code() != ErrorCode::NotPointed) throw;
    }
  }
  throw Error(ErrorCode::GenerationFailure, "could not draw a nondegenerate cone");
}

std::vector<Vec> random_omega(SplitMix64& rng, const Cone& cone, int count,
                              double margin = 0.05, double separation = 0.05) {
  std::vector<Vec> dirs;
  double radius = 1.2;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(dirs.size()) < count; ++attempt) {
    const Vec w = rng.unit_vector(cone.dim());
    Vec u = -(cone.zeta() + rng.uniform(0.0, radius) * w);
    u.normalize();
    bool inside = true;
    for (const Vec& g : cone.generators()) {
      if (u.dot(g) > -margin) {
        inside = false;
        break;
      }
    }
    if (!inside) {
      radius *= 0.95;  // pull samples toward the polar axis in thin cones
      radius = std::max(radius, 0.05);
      continue;
    }
    bool separated = true;
    for (const Vec& k : dirs) {
      if ((k - u).norm() < separation) {
        separated = false;
        break;
      }
    }
    if (separated) dirs.push_back(std::move(u));
  }
  if (static_cast<int>(dirs.size()) < count) {
    throw Error(ErrorCode::GenerationFailure,
                "could not place omega inside the polar interior");
  }
  return dirs;
}

CCoconvexSet random_set(SplitMix64& rng, const Cone& cone, const DirectionSet& omega,
                        const InstanceGenerator& gen) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<double> f(static_cast<size_t>(omega.size()));
    for (double& v : f) v = rng.uniform(gen.support_min, gen.support_max);
    CCoconvexSet a = CCoconvexSet::wulff(cone, omega, f);
    if (!gen.require_active) return a;
    bool active = true;
    for (double m : a.facet_measures()) {
      if (m <= 1e-6) {
        active = false;
        break;
      }
    }
    if (active) return a;
  }
  throw Error(ErrorCode::GenerationFailure, "could not draw a set with all facets active");
}

std::string pair_fingerprint(const InstanceGenerator& gen, const InstancePair& pair) {
  OrderedJson j;
  j["seed"] = gen.seed;
  j["n"] = gen.n;
  OrderedJson gens = OrderedJson::array();
  for (const Vec& g : pair.cone.generators()) gens.push_back(from_vec(g));
  j["generators"] = std::move(gens);
  OrderedJson omega = OrderedJson::array();
  for (const Vec& u : pair.omega.directions()) omega.push_back(from_vec(u));
  j["omega"] = std::move(omega);
  j["support_a"] = pair.a.support();
  j["support_b"] = pair.b.support();
  return j.dump();
}

// Support vectors proportional within 1e-8 relative over the merged omega.
bool detect_dilation(const CCoconvexSet& a, const CCoconvexSet& b) {
  const DirectionSet omega = DirectionSet::merge(a.cone(), a.omega(), b.omega());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < omega.size(); ++i) {
    const double r = a.support_at(omega[i]) / b.support_at(omega[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo <= 1e-8 * std::max(1.0, hi);
}

void attach_equality_crosscheck(CheckReport& report, const CCoconvexSet& a,
                                const CCoconvexSet& b) {
  report.dilation_detected = detect_dilation(a, b);
  if (report.dilation_detected && !report.equality) {
    report.pass = false;
    report.notes += "dilation without equality; ";
  }
}

double powv(double v, double e) { return std::pow(v, e); }

}  // namespace

InstancePair random_instance(const InstanceGenerator& gen) {
  require_dimension(gen.n);
  if (gen.omega_size < 1) {
    throw Error(ErrorCode::InvalidArgument, "omega size must be at least 1");
  }
  if (!(gen.support_min > 0.0) || !(gen.support_max >= gen.support_min)) {
    throw Error(ErrorCode::InvalidArgument, "bad support range");
  }
  SplitMix64 rng(gen.seed * 0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(gen.n));
  // A thin cone or an awkward omega can starve the support sampler; draw a
  // fresh configuration rather than grinding on a hopeless one.
  for (int attempt = 0; attempt < 20; ++attempt) {
    try {
      const Cone cone = random_cone(rng, gen.n, gen.cone_generators);
      const DirectionSet omega =
          DirectionSet::make(cone, random_omega(rng, cone, gen.omega_size));
      CCoconvexSet a = random_set(rng, cone, omega, gen);
      CCoconvexSet b = random_set(rng, cone, omega, gen);
      InstancePair pair{cone, omega, std::move(a), std::move(b), ""};
      pair.fingerprint = pair_fingerprint(gen, pair);
      return pair;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GenerationFailure) throw;
    }
  }
  throw Error(ErrorCode::GenerationFailure, "instance generation exhausted its retry budget");
}

CheckReport check_lp_bm(const CCoconvexSet& a1, const CCoconvexSet& a2, double p,
                        const std::string& fingerprint) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "L_p Brunn-Minkowski check needs p in (0, 1]");
  }
  const double n = static_cast<double>(a1.cone().dim());
  const CCoconvexSet sum = p_co_sum(1.0, a1, 1.0, a2, PExponent::of(p));
  const double left = powv(sum.covolume(), p / n);
  const double right = powv(a1.covolume(), p / n) + powv(a2.covolume(), p / n);
  CheckReport report = make_report("lp-brunn-minkowski", left, right, fingerprint);
  report.extras.emplace_back("p", p);
  report.extras.emplace_back("volume_sum", sum.covolume());
  report.extras.emplace_back("volume_a", a1.covolume());
  report.extras.emplace_back("volume_b", a2.covolume());
  attach_equality_crosscheck(report, a1, a2);
  return report;
}

CheckReport check_lp_minkowski_ineq(const CCoconvexSet& a, const CCoconvexSet& a1, double p,
                                    const std::string& fingerprint) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "L_p Minkowski check needs p in (0, 1]");
  }
  const double n = static_cast<double>(a.cone().dim());
  const double vp = lp_mixed_volume(a, a1, p);
  const double left = powv(vp, n);
  const double right = powv(a.covolume(), n - p) * powv(a1.covolume(), p);
  CheckReport report =
      make_report(p == 1.0 ? "minkowski-1" : "lp-minkowski", left, right, fingerprint);
  report.extras.emplace_back("p", p);
  report.extras.emplace_back("mixed_volume", vp);
  attach_equality_crosscheck(report, a, a1);
  return report;
}

CheckReport check_wulff_equivalence(const CCoconvexSet& a1, const CCoconvexSet& a2, double p,
                                    unsigned long long probe_seed,
                                    const std::string& fingerprint) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "Wulff-form check needs p in (0, 1)");
  }
  if (!a1.omega().same_as(a2.omega())) {
    throw Error(ErrorCode::InvalidArgument, "Wulff-form check needs a shared omega");
  }
  const double n = static_cast<double>(a1.cone().dim());

  std::vector<double> s(static_cast<size_t>(a1.omega().size()));
  for (int i = 0; i < a1.omega().size(); ++i) {
    const Vec& u = a1.omega()[i];
    s[static_cast<size_t>(i)] =
        std::pow(std::pow(a1.support_at(u), p) + std::pow(a2.support_at(u), p), 1.0 / p);
  }
  const CCoconvexSet w = CCoconvexSet::wulff(a1.cone(), a1.omega(), s);

  const double left = powv(w.covolume(), p / n);
  const double right = powv(a1.covolume(), p / n) + powv(a2.covolume(), p / n);
  CheckReport report = make_report("wulff-form", left, right, fingerprint);
  report.extras.emplace_back("p", p);

  // Mixed-volume decomposition at the Wulff shape.
  const double vww = lp_mixed_volume(w, w, p);
  const double split = lp_mixed_volume(w, a1, p) + lp_mixed_volume(w, a2, p);
  report.extras.emplace_back("decomposition_left", vww);
  report.extras.emplace_back("decomposition_right", split);
  if (std::abs(vww - split) > 1e-9 * std::max(1.0, std::abs(split))) {
    report.pass = false;
    report.notes += "mixed-volume decomposition failed; ";
  }

  // The Wulff shape is contained in the exact p-co-sum, whose support
  // function is the p-mean formula at every direction. Probe directions
  // outside omega for a strict gap.
  SplitMix64 rng(probe_seed * 0x2545f4914f6cdd1dULL + 17);
  double best_gap = 0.0;
  double best_w = 0.0;
  double best_sum = 0.0;
  bool strict = false;
  for (int probe = 0; probe < 64; ++probe) {
    Vec u = -(a1.cone().zeta() + rng.uniform(0.0, 1.2) * rng.unit_vector(a1.cone().dim()));
    u.normalize();
    if (!a1.cone().in_omega(u, 0.02)) continue;
    if (w.omega().find(u) >= 0) continue;
    const double hw = w.support_at(u);
    const double hsum =
        std::pow(std::pow(a1.support_at(u), p) + std::pow(a2.support_at(u), p), 1.0 / p);
    if (hw > hsum + 1e-9 * std::max(1.0, hsum)) {
      report.pass = false;
      report.notes += "Wulff shape escapes the p-co-sum at a probe; ";
    }
    const double gap = hsum - hw;
    if (gap > best_gap) {
      best_gap = gap;
      best_w = hw;
      best_sum = hsum;
    }
    if (gap > 1e-4) {
      strict = true;
      break;
    }
  }
  report.extras.emplace_back("probe_gap", best_gap);
  report.extras.emplace_back("probe_support_wulff", best_w);
  report.extras.emplace_back("probe_support_cosum", best_sum);
  report.extras.emplace_back("inclusion_strict", strict ? 1.0 : 0.0);
  attach_equality_crosscheck(report, a1, a2);
  return report;
}

CheckReport check_log_bm(const CCoconvexSet& a1, const CCoconvexSet& a2, const TauWeight& tau,
                         const std::string& fingerprint) {
  const CCoconvexSet mix = log_co_sum(tau, a1, a2);
  const double t = tau.value();
  const double left = mix.covolume();
  const double right = powv(a1.covolume(), 1.0 - t) * powv(a2.covolume(), t);
  CheckReport report = make_report("log-brunn-minkowski", left, right, fingerprint);
  report.extras.emplace_back("tau", t);
  attach_equality_crosscheck(report, a1, a2);
  return report;
}

CheckReport check_log_minkowski(const CCoconvexSet& a1, const CCoconvexSet& a2,
                                const std::string& fingerprint) {
  const double n = static_cast<double>(a1.cone().dim());
  const double left = log_mixed_volume(a1, a2) / a1.covolume();
  const double right = std::log(a2.covolume() / a1.covolume()) / n;
  CheckReport report = make_report("log-minkowski", left, right, fingerprint);
  attach_equality_crosscheck(report, a1, a2);
  return report;
}

CheckReport check_uniqueness(const CCoconvexSet& a1, const CCoconvexSet& a2, const PExponent& p,
                             const std::string& fingerprint) {
  if (!p.is_log() && !(p.value() > 0.0 && p.value() < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "uniqueness is asserted for 0 < p < 1 and the log regime");
  }
  const DiscreteMeasure m1 =
      p.is_log() ? a1.cone_volume_measure() : a1.lp_surface_measure(p.value());
  const DiscreteMeasure m2 =
      p.is_log() ? a2.cone_volume_measure() : a2.lp_surface_measure(p.value());

  // Premise: the measures agree atomwise within 1e-9 relative.
  bool premise = true;
  double worst_measure = 0.0;
  for (const MeasureAtom& atom : m1.atoms()) {
    const double other = m2.weight_at(atom.u);
    const double diff = std::abs(atom.w - other) / std::max({atom.w, other, 1e-300});
    worst_measure = std::max(worst_measure, diff);
    if (diff > 1e-9) premise = false;
  }
  for (const MeasureAtom& atom : m2.atoms()) {
    if (m1.weight_at(atom.u) == 0.0 && atom.w > 1e-12) premise = false;
  }

  const DirectionSet omega = DirectionSet::merge(a1.cone(), a1.omega(), a2.omega());
  double worst_support = 0.0;
  for (int i = 0; i < omega.size(); ++i) {
    const double h1 = a1.support_at(omega[i]);
    const double h2 = a2.support_at(omega[i]);
    worst_support = std::max(worst_support, std::abs(h1 - h2) / std::max(h1, h2));
  }

  CheckReport report;
  if (premise) {
    report = make_report("uniqueness", worst_support, 1e-6, fingerprint);
  } else {
    report = make_report("uniqueness", 0.0, 1e-6, fingerprint);
    report.notes += "measures differ, premise not applicable; ";
  }
  report.extras.emplace_back("measure_mismatch", worst_measure);
  report.extras.emplace_back("support_mismatch", worst_support);
  report.extras.emplace_back("applicable", premise ? 1.0 : 0.0);

  // Conditional volume implications, stated with V_n(A) >= V_n(B).
  if (!p.is_log()) {
    const double pv = p.value();
    const bool a1_larger = a1.covolume() >= a2.covolume();
    const CCoconvexSet& big = a1_larger ? a1 : a2;
    const CCoconvexSet& small = a1_larger ? a2 : a1;
    const double tol = 1e-9 * std::max(1.0, big.covolume());
    auto implication = [&](double hypothesis_lhs, double hypothesis_rhs) {
      if (hypothesis_lhs > hypothesis_rhs + tol) return 0.0;  // hypothesis fails
      return worst_support <= 1e-6 ? 1.0 : -1.0;
    };
    report.extras.emplace_back("implication_vp_big_small",
                               implication(big.covolume(), lp_mixed_volume(big, small, pv)));
    report.extras.emplace_back("implication_vp_small_big",
                               implication(big.covolume(), lp_mixed_volume(small, big, pv)));

    // Probe family: if V_p(X, A_1) = V_p(X, A_2) for a spread of test sets X,
    // the operands should coincide; indeterminate when the premise fails.
    SplitMix64 rng(0xabcdef1234567891ULL);
    bool family_equal = true;
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> f(static_cast<size_t>(omega.size()));
      for (double& v : f) v = rng.uniform(0.5, 2.0);
      const CCoconvexSet x = CCoconvexSet::wulff(a1.cone(), omega, f);
      const double v1 = lp_mixed_volume(x, a1, pv);
      const double v2 = lp_mixed_volume(x, a2, pv);
      if (std::abs(v1 - v2) > 1e-9 * std::max({1.0, v1, v2})) {
        family_equal = false;
        break;
      }
    }
    double family_result = 0.0;
    if (family_equal) family_result = worst_support <= 1e-6 ? 1.0 : -1.0;
    report.extras.emplace_back("implication_probe_family", family_result);
    if (report.extra("implication_vp_big_small") < 0.0 ||
        report.extra("implication_vp_small_big") < 0.0 || family_result < 0.0) {
      report.pass = false;
      report.notes += "a uniqueness implication is violated; ";
    }
  }
  return report;
}

std::vector<CheckReport> run_check_suite(const std::string& suite,
                                         const std::vector<unsigned long long>& seeds, int n,
                                         int omega_size) {
  const bool all = suite == "all";
  std::vector<CheckReport> reports;
  auto matches = [&](const char* name) { return all || suite == name; };

  bool known = all;
  for (const char* name :
       {"lp-bm", "lp-minkowski", "minkowski-1", "wulff", "log-bm", "log-minkowski",
        "uniqueness"}) {
    if (suite == name) known = true;
  }
  if (!known) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite: " + suite);
  }

  for (unsigned long long seed : seeds) {
    InstanceGenerator gen;
    gen.n = n;
    gen.cone_generators = n + 1;
    gen.omega_size = omega_size;
    gen.seed = seed;
    const InstancePair pair = random_instance(gen);
    const CCoconvexSet dilated = pair.a.dilate(1.0 + 0.5 * (seed % 5));

    if (matches("lp-bm")) {
      for (double p : {0.25, 0.5, 0.75}) {
        reports.push_back(check_lp_bm(pair.a, pair.b, p, pair.fingerprint));
      }
      reports.push_back(check_lp_bm(pair.a, dilated, 0.5, pair.fingerprint));
    }
    if (matches("lp-minkowski")) {
      for (double p : {0.25, 0.5, 0.75}) {
        reports.push_back(check_lp_minkowski_ineq(pair.a, pair.b, p, pair.fingerprint));
      }
      reports.push_back(check_lp_minkowski_ineq(pair.a, dilated, 0.5, pair.fingerprint));
    }
    if (matches("minkowski-1")) {
      reports.push_back(check_lp_minkowski_ineq(pair.a, pair.b, 1.0, pair.fingerprint));
    }
    if (matches("wulff")) {
      reports.push_back(check_wulff_equivalence(pair.a, pair.b, 0.5, seed, pair.fingerprint));
    }
    if (matches("log-bm")) {
      for (double t : {0.25, 0.5, 0.75}) {
        reports.push_back(check_log_bm(pair.a, pair.b, TauWeight(t), pair.fingerprint));
      }
      reports.push_back(check_log_bm(pair.a, dilated, TauWeight(0.5), pair.fingerprint));
    }
    if (matches("log-minkowski")) {
      reports.push_back(check_log_minkowski(pair.a, pair.b, pair.fingerprint));
      reports.push_back(check_log_minkowski(pair.a, dilated, pair.fingerprint));
    }
    if (matches("uniqueness")) {
      const CCoconvexSet twin = CCoconvexSet::wulff(pair.cone, pair.omega, pair.a.support());
      reports.push_back(check_uniqueness(pair.a, twin, PExponent::of(0.5), pair.fingerprint));
      reports.push_back(check_uniqueness(pair.a, pair.b, PExponent::log_regime(),
                                         pair.fingerprint));
    }
  }
  return reports;
}

}  // namespace coconvex
