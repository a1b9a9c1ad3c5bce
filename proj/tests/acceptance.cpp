// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every tolerance is stated next to the check it guards.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "coconvex/checks.hpp"
#include "coconvex/solver.hpp"

namespace {

using namespace coconvex;

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Cone quadrant() { return Cone::make(2, {vec({1.0, 0.0}), vec({0.0, 1.0})}); }

Vec diag_dir() { return vec({-1.0, -1.0}) / std::sqrt(2.0); }

CCoconvexSet quadrant_set(double s) {
  const Cone c = quadrant();
  return CCoconvexSet::wulff(c, DirectionSet::make(c, {diag_dir()}), {s});
}

InstancePair draw(int n, int omega, unsigned long long seed) {
  InstanceGenerator gen;
  gen.n = n;
  gen.cone_generators = n + 1;
  gen.omega_size = omega;
  gen.seed = seed;
  return random_instance(gen);
}

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

// 1. Quadrant closed forms within 1e-10 absolute.
bool quadrant_closed_forms(std::string& detail) {
  const CCoconvexSet a = quadrant_set(std::sqrt(2.0));
  double sigma = 0.0;
  for (double m : a.facet_measures()) sigma += m;
  double worst = 0.0;
  worst = std::max(worst, std::abs(a.covolume() - 2.0));
  worst = std::max(worst, std::abs(sigma - 2.0 * std::sqrt(2.0)));
  worst = std::max(worst, std::abs(a.cone_volume_measure().total() - 2.0));
  worst = std::max(worst,
                   std::abs(a.lp_surface_measure(0.5).weight_at(diag_dir()) - std::pow(2.0, 1.75)));
  detail = "max abs err " + sci(worst);
  return worst <= 1e-10;
}

// 2. |V_n - (1/n) sum hbar sigma| <= 1e-9 V_n on 100 2-D + 50 3-D instances.
bool volume_identity(std::string& detail) {
  double worst = 0.0;
  int count = 0;
  for (int n : {2, 3}) {
    const int reps = n == 2 ? 100 : 50;
    for (int seed = 1; seed <= reps; ++seed) {
      const InstancePair pair = draw(n, 4, static_cast<unsigned long long>(seed));
      for (const CCoconvexSet* a : {&pair.a, &pair.b}) {
        double acc = 0.0;
        for (int i = 0; i < a->omega().size(); ++i) {
          acc += a->support()[static_cast<size_t>(i)] * a->facet_measures()[static_cast<size_t>(i)];
        }
        acc /= static_cast<double>(n);
        worst = std::max(worst, std::abs(acc - a->covolume()) / a->covolume());
        ++count;
      }
    }
  }
  detail = std::to_string(count) + " sets, max rel err " + sci(worst);
  return worst <= 1e-9;
}

// 3. Variational derivative vs central finite difference (step 1e-5),
// relative error <= 1e-4 for p in {-1, 1/2, 1, 2}; quadrant closed forms
// (2 sqrt 2 at p = 1, 2^{11/4} at p = 1/2) within 1e-6.
bool variational_formula(std::string& detail) {
  const double ps[] = {-1.0, 0.5, 1.0, 2.0};
  double worst = 0.0;
  SplitMix64 rng(17);
  for (int n : {2, 3}) {
    for (int seed = 1; seed <= 10; ++seed) {
      const InstancePair pair = draw(n, 4, static_cast<unsigned long long>(seed));
      std::vector<double> f(static_cast<size_t>(pair.omega.size()));
      for (double& v : f) v = 0.5 + rng.next_double();
      for (double p : ps) {
        const double an = variational_derivative(pair.a, f, p);
        const double fd = variational_derivative_fd(pair.a, f, p, 1e-5);
        worst = std::max(worst, rel_err(fd, an));
      }
    }
  }
  if (worst > 1e-4) {
    detail = "finite difference mismatch " + sci(worst);
    return false;
  }
  const CCoconvexSet q = quadrant_set(std::sqrt(2.0));
  const std::vector<double> ones{1.0};
  const double e1 = std::abs(variational_derivative(q, ones, 1.0) - 2.0 * std::sqrt(2.0));
  const double e2 = std::abs(variational_derivative(q, ones, 0.5) - std::pow(2.0, 2.75));
  detail = "fd max rel err " + sci(worst) + ", quadrant abs err " + sci(std::max(e1, e2));
  return std::max(e1, e2) <= 1e-6;
}

std::vector<CheckReport> family_reports(const InstancePair& pair) {
  std::vector<CheckReport> reports;
  for (double p : {0.25, 0.5, 0.75}) {
    reports.push_back(check_lp_bm(pair.a, pair.b, p, pair.fingerprint));
    reports.push_back(check_lp_minkowski_ineq(pair.a, pair.b, p, pair.fingerprint));
  }
  reports.push_back(check_wulff_equivalence(pair.a, pair.b, 0.5, 1, pair.fingerprint));
  for (double tau : {0.25, 0.5, 0.75}) {
    reports.push_back(check_log_bm(pair.a, pair.b, TauWeight(tau), pair.fingerprint));
  }
  reports.push_back(check_log_minkowski(pair.a, pair.b, pair.fingerprint));
  reports.push_back(check_lp_minkowski_ineq(pair.a, pair.b, 1.0, pair.fingerprint));
  return reports;
}

// 4. Zero violations across the inequality families on 1000 2-D pairs and
// 200 3-D pairs; pass already means slack >= -1e-8 relative.
bool inequality_sweeps(std::string& detail) {
  int checks = 0;
  int violations = 0;
  std::string first;
  for (int n : {2, 3}) {
    const int reps = n == 2 ? 1000 : 200;
    for (int seed = 1; seed <= reps; ++seed) {
      const InstancePair pair = draw(n, 4, static_cast<unsigned long long>(seed));
      for (const CheckReport& r : family_reports(pair)) {
        ++checks;
        if (!r.pass) {
          ++violations;
          if (first.empty()) {
            first = r.name + " seed " + std::to_string(seed) + " n " + std::to_string(n) +
                    " slack " + sci(r.slack);
          }
        }
      }
    }
  }
  detail = std::to_string(checks) + " checks, " + std::to_string(violations) + " violations";
  if (!first.empty()) detail += " (first: " + first + ")";
  return violations == 0;
}

// 5. Dilated pairs (alpha in {0.5, 3}) report equality, |slack| <= 1e-6
// relative, in every family.
bool equality_cases(std::string& detail) {
  int checks = 0;
  int misses = 0;
  std::string first;
  for (int n : {2, 3}) {
    const int reps = n == 2 ? 20 : 10;
    for (int seed = 1; seed <= reps; ++seed) {
      const InstancePair base = draw(n, 4, static_cast<unsigned long long>(seed));
      for (double alpha : {0.5, 3.0}) {
        InstancePair pair = base;
        pair.b = base.a.dilate(alpha);
        for (const CheckReport& r : family_reports(pair)) {
          ++checks;
          if (!r.pass || !r.equality) {
            ++misses;
            if (first.empty()) {
              first = r.name + " seed " + std::to_string(seed) + " alpha " + std::to_string(alpha);
            }
          }
        }
      }
    }
  }
  detail = std::to_string(checks) + " checks, " + std::to_string(misses) + " non-equalities";
  if (!first.empty()) detail += " (first: " + first + ")";
  return misses == 0;
}

// 6. Solver round trips, 20 seeds per regime, n = 2 with four directions
// and n = 3 with five: (a) p = 1/2 recovers the support within 1e-5
// relative; (b) p in {-1, 2, 3} meets residual 1e-5; (c) log recovers the
// support within 1e-5 relative.
bool solver_round_trips(std::string& detail) {
  int failures = 0;
  std::string first;
  auto miss = [&](int n, int seed, const std::string& what) {
    ++failures;
    if (first.empty()) {
      first = what + " n " + std::to_string(n) + " seed " + std::to_string(seed);
    }
  };
  auto support_gap = [](const CCoconvexSet& got, const InstancePair& pair) {
    double worst = 0.0;
    for (int i = 0; i < pair.omega.size(); ++i) {
      const int j = got.omega().find(pair.omega[i]);
      if (j < 0) return 1.0;
      worst = std::max(worst, rel_err(got.support()[static_cast<size_t>(j)],
                                      pair.a.support()[static_cast<size_t>(i)]));
    }
    return worst;
  };
  for (int n : {2, 3}) {
    const int omega = n == 2 ? 4 : 5;
    for (int seed = 1; seed <= 20; ++seed) {
      const InstancePair pair = draw(n, omega, static_cast<unsigned long long>(seed));
      {
        const SolveResult res =
            solve_lp_minkowski(pair.cone, pair.a.lp_surface_measure(0.5), 0.5);
        if (!res.converged || support_gap(res.solution, pair) > 1e-5) {
          miss(n, seed, "p=1/2 support");
        }
      }
      for (double p : {-1.0, 2.0, 3.0}) {
        const SolveResult res = solve_lp_minkowski(pair.cone, pair.a.lp_surface_measure(p), p);
        if (!res.converged || res.residual > 1e-5) {
          miss(n, seed, "p=" + std::to_string(p) + " residual");
        }
      }
      {
        const SolveResult res = solve_log_minkowski(pair.cone, pair.a.cone_volume_measure());
        if (!res.converged || support_gap(res.solution, pair) > 1e-5) {
          miss(n, seed, "log support");
        }
      }
    }
  }
  detail = "200 solves, " + std::to_string(failures) + " failures";
  if (!first.empty()) detail += " (first: " + first + ")";
  return failures == 0;
}

// 7. At least one generated 2-D instance exhibits a strict inclusion of the
// Wulff shape in the p-co-sum with a probe-direction support gap > 1e-4,
// recorded in the check report extras.
bool strict_inclusion_witness(std::string& detail) {
  for (int seed = 1; seed <= 100; ++seed) {
    const InstancePair pair = draw(2, 4, static_cast<unsigned long long>(seed));
    const CheckReport r = check_wulff_equivalence(pair.a, pair.b, 0.5,
                                                  static_cast<unsigned long long>(seed),
                                                  pair.fingerprint);
    double gap = 0.0;
    double strict = 0.0;
    for (const auto& [key, value] : r.extras) {
      if (key == "probe_gap") gap = value;
      if (key == "inclusion_strict") strict = value;
    }
    if (r.pass && strict == 1.0 && gap > 1e-4) {
      detail = "seed " + std::to_string(seed) + ", probe gap " + sci(gap);
      return true;
    }
  }
  detail = "no witness in 100 seeds";
  return false;
}

// 8. Homogeneity under dilation, 1e-9 relative, alpha and beta from
// {0.5, 2, pi/2} on 50 instances: V_n scales with alpha^n, the surface
// measure with alpha^{n-1}, the L_p surface measure with alpha^{n-p}, the
// cone-volume measure with alpha^n, and V_p(alpha A, beta B) with
// alpha^{n-p} beta^p.
bool homogeneity_ledger(std::string& detail) {
  const double scales[] = {0.5, 2.0, std::asin(1.0)};
  const double ps[] = {-1.0, 0.5, 2.0};
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (int seed = 1; seed <= 25; ++seed) {
      const InstancePair pair = draw(n, 4, static_cast<unsigned long long>(seed));
      const double nd = static_cast<double>(n);
      for (double alpha : scales) {
        const CCoconvexSet sa = pair.a.dilate(alpha);
        worst = std::max(worst,
                         rel_err(sa.covolume(), std::pow(alpha, nd) * pair.a.covolume()));
        for (int i = 0; i < pair.omega.size(); ++i) {
          const size_t k = static_cast<size_t>(i);
          worst = std::max(worst, rel_err(sa.facet_measures()[k],
                                          std::pow(alpha, nd - 1.0) *
                                              pair.a.facet_measures()[k]));
        }
        for (double p : ps) {
          const DiscreteMeasure got = sa.lp_surface_measure(p);
          const DiscreteMeasure base = pair.a.lp_surface_measure(p);
          for (int i = 0; i < pair.omega.size(); ++i) {
            worst = std::max(worst, rel_err(got.weight_at(pair.omega[i]),
                                            std::pow(alpha, nd - p) *
                                                base.weight_at(pair.omega[i])));
          }
        }
        {
          const DiscreteMeasure got = sa.cone_volume_measure();
          const DiscreteMeasure base = pair.a.cone_volume_measure();
          for (int i = 0; i < pair.omega.size(); ++i) {
            worst = std::max(worst, rel_err(got.weight_at(pair.omega[i]),
                                            std::pow(alpha, nd) *
                                                base.weight_at(pair.omega[i])));
          }
        }
        for (double beta : scales) {
          const CCoconvexSet sb = pair.b.dilate(beta);
          for (double p : ps) {
            worst = std::max(worst,
                             rel_err(lp_mixed_volume(sa, sb, p),
                                     std::pow(alpha, nd - p) * std::pow(beta, p) *
                                         lp_mixed_volume(pair.a, pair.b, p)));
          }
        }
      }
    }
  }
  detail = "max rel err " + sci(worst);
  return worst <= 1e-9;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"quadrant closed forms", quadrant_closed_forms},
      {"volume identity", volume_identity},
      {"variational formula", variational_formula},
      {"inequality sweeps", inequality_sweeps},
      {"equality cases", equality_cases},
      {"solver round trips", solver_round_trips},
      {"strict inclusion witness", strict_inclusion_witness},
      {"homogeneity ledger", homogeneity_ledger},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("threw ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %zu. %s: %s [%.1f s]\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
