#ifndef COCONVEX_CHECKS_HPP
#define COCONVEX_CHECKS_HPP

#include "coconvex/lp_algebra.hpp"
#include "coconvex/report.hpp"

namespace coconvex {

// Deterministic random instance family. Same parameters, same instances.
struct InstanceGenerator {
  int n = 2;
  int cone_generators = 3;  // ignored in dimension 2 (always two extreme rays)
  int omega_size = 3;
  double support_min = 0.5;
  double support_max = 2.0;
  unsigned long long seed = 1;
  // Redraw support vectors until every omega facet carries positive
  // measure; gives instances usable as solver targets.
  bool require_active = true;
};

struct InstancePair {
  Cone cone;
  DirectionSet omega;
  CCoconvexSet a;
  CCoconvexSet b;
  std::string fingerprint;
};

// Draws a cone, a direction set and two coconvex sets over them. Throws
// GenerationFailure when rejection sampling cannot place omega inside the
// polar interior (thin cone) within the retry budget.
InstancePair random_instance(const InstanceGenerator& gen);

// V_n(A_1 +_p A_2)^{p/n} <= V_n(A_1)^{p/n} + V_n(A_2)^{p/n}, p in (0, 1].
CheckReport check_lp_bm(const CCoconvexSet& a1, const CCoconvexSet& a2, double p,
                        const std::string& fingerprint = "");

// V_p(A, A_1)^n <= V_n(A)^{n-p} V_n(A_1)^p, p in (0, 1]. At p = 1 this is
// the first-mixed-volume Minkowski inequality.
CheckReport check_lp_minkowski_ineq(const CCoconvexSet& a, const CCoconvexSet& a1, double p,
                                    const std::string& fingerprint = "");

// Wulff-shape form over a shared omega: builds W = wulff((hbar_1^p +
// hbar_2^p)^{1/p}) and checks V_n(W)^{p/n} <= V_n(A_1)^{p/n} +
// V_n(A_2)^{p/n}, the mixed-volume decomposition V_p(W, W) = V_p(W, A_1) +
// V_p(W, A_2), and inclusion of W in the exact p-co-sum, probing random
// directions outside omega for strictness (support gap > 1e-4).
CheckReport check_wulff_equivalence(const CCoconvexSet& a1, const CCoconvexSet& a2, double p,
                                    unsigned long long probe_seed = 1,
                                    const std::string& fingerprint = "");

// V_n((1-tau) o A_1 +_0 tau o A_2) <= V_n(A_1)^{1-tau} V_n(A_2)^tau.
CheckReport check_log_bm(const CCoconvexSet& a1, const CCoconvexSet& a2, const TauWeight& tau,
                         const std::string& fingerprint = "");

// V_0(A_1, A_2) / V_n(A_1) <= (1/n) log(V_n(A_2) / V_n(A_1)).
CheckReport check_log_minkowski(const CCoconvexSet& a1, const CCoconvexSet& a2,
                                const std::string& fingerprint = "");

// Uniqueness audit: when the relevant measures agree atomwise within 1e-9
// relative, the support vectors must agree within 1e-6 relative. Also
// evaluates the conditional implications that compare volumes and mixed
// volumes, and a probe-family equality test, reporting each as an extra
// (1 = confirmed, 0 = indeterminate, -1 = violated).
CheckReport check_uniqueness(const CCoconvexSet& a1, const CCoconvexSet& a2, const PExponent& p,
                             const std::string& fingerprint = "");

// Named suite runner for the CLI: "lp-bm", "lp-minkowski", "minkowski-1",
// "wulff", "log-bm", "log-minkowski", "uniqueness" or "all", over the given
// seeds. Throws InvalidArgument for an unknown suite name.
std::vector<CheckReport> run_check_suite(const std::string& suite,
                                         const std::vector<unsigned long long>& seeds, int n,
                                         int omega_size = 3);

}  // namespace coconvex

#endif
