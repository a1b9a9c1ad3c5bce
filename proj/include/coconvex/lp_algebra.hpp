#ifndef COCONVEX_LP_ALGEBRA_HPP
#define COCONVEX_LP_ALGEBRA_HPP

#include "coconvex/coconvex_set.hpp"

namespace coconvex {

// Exponent for the L_p operations, tagged by regime.
class PExponent {
 public:
  enum class Regime { Log, Fractional, Linear, General };

  static PExponent log_regime();
  // Tags p as Fractional (0 < p < 1), Linear (p == 1) or General.
  static PExponent of(double p);

  Regime regime() const { return regime_; }
  bool is_log() const { return regime_ == Regime::Log; }
  // Numeric value; invalid in the log regime.
  double value() const;

 private:
  PExponent(Regime r, double p) : regime_(r), p_(p) {}
  Regime regime_;
  double p_;
};

// Interpolation weight tau in the open interval (0, 1).
class TauWeight {
 public:
  explicit TauWeight(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// p-co-sum alpha_1 o A_1 +_p alpha_2 o A_2 for p in (0, 1]: the Wulff shape
// of (alpha_1 hbar_1^p + alpha_2 hbar_2^p)^{1/p} over the merged omega.
// Scalar rule: alpha o A = alpha^{1/p} A. Throws BothZero when both
// coefficients vanish, ConeMismatch for different cones, InvalidArgument
// for p outside (0, 1] or negative coefficients.
CCoconvexSet p_co_sum(double alpha1, const CCoconvexSet& a1, double alpha2,
                      const CCoconvexSet& a2, const PExponent& p);

// log-co-sum (1 - tau) o A_1 +_0 tau o A_2: Wulff shape of
// hbar_1^{1-tau} hbar_2^{tau} over the merged omega.
CCoconvexSet log_co_sum(const TauWeight& tau, const CCoconvexSet& a1, const CCoconvexSet& a2);

// First mixed volume V_1(A_0, A_1) = (1/n) sum hbar(A_1, u) S_{n-1}(A_0, u).
double mixed_volume_1(const CCoconvexSet& a0, const CCoconvexSet& a1);

// L_p mixed volume V_p(A, B) = (1/n) sum hbar(B, u)^p hbar(A, u)^{1-p}
// S_{n-1}(A, u); p != 0.
double lp_mixed_volume(const CCoconvexSet& a, const CCoconvexSet& b, double p);

// L_p mixed volume against a positive function g on omega(A).
double lp_mixed_volume_fn(const CCoconvexSet& a, const std::vector<double>& g, double p);

// log mixed volume V_0(A_1, A_2) = (1/n) sum log(hbar_2 / hbar_1) hbar_1
// S_{n-1}(A_1, u); can take either sign.
double log_mixed_volume(const CCoconvexSet& a1, const CCoconvexSet& a2);

// Derivative of tau -> V_n of the Wulff shape of (hbar^p + tau f)^{1/p}
// at tau = 0: equals (1/p) sum f(u) hbar(u)^{1-p} S_{n-1}(A, u).
double variational_derivative(const CCoconvexSet& a, const std::vector<double>& f, double p);

// Largest admissible |tau| for the perturbation family: min hbar^p / max |f|.
double variational_tau_bound(const CCoconvexSet& a, const std::vector<double>& f, double p);

// Central finite-difference companion for the derivative above. Throws
// StepTooLarge when |step| >= the admissible bound.
double variational_derivative_fd(const CCoconvexSet& a, const std::vector<double>& f, double p,
                                 double step);

}  // namespace coconvex

#endif
