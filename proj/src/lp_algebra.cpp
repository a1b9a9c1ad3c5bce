#include "coconvex/lp_algebra.hpp"

#include <cmath>
#include <limits>

namespace coconvex {

PExponent PExponent::log_regime() { return PExponent(Regime::Log, 0.0); }

PExponent PExponent::of(double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "p = 0 denotes the log regime; use log_regime()");
  }
  if (!std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "p must be finite");
  }
  Regime r = Regime::General;
  if (p > 0.0 && p < 1.0) r = Regime::Fractional;
  if (p == 1.0) r = Regime::Linear;
  return PExponent(r, p);
}

double PExponent::value() const {
  if (regime_ == Regime::Log) {
    throw Error(ErrorCode::InvalidArgument, "log regime has no numeric exponent");
  }
  return p_;
}

TauWeight::TauWeight(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tau must lie in (0, 1)");
  }
}

namespace {

void require_same_cone(const CCoconvexSet& a, const CCoconvexSet& b) {
  if (!a.cone().same_as(b.cone())) {
    throw Error(ErrorCode::ConeMismatch, "operands live over different cones");
  }
}

}  // namespace

CCoconvexSet p_co_sum(double alpha1, const CCoconvexSet& a1, double alpha2,
                      const CCoconvexSet& a2, const PExponent& p) {
  if (p.is_log()) {
    throw Error(ErrorCode::InvalidArgument, "use log_co_sum for the log regime");
  }
  const double pv = p.value();
  if (!(pv > 0.0 && pv <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "p-co-sum requires p in (0, 1]");
  }
  if (alpha1 < 0.0 || alpha2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "combination coefficients must be nonnegative");
  }
  if (alpha1 == 0.0 && alpha2 == 0.0) {
    throw Error(ErrorCode::BothZero, "both combination coefficients are zero");
  }
  require_same_cone(a1, a2);

  const DirectionSet omega = DirectionSet::merge(a1.cone(), a1.omega(), a2.omega());
  std::vector<double> s(static_cast<size_t>(omega.size()));
  for (int i = 0; i < omega.size(); ++i) {
    const double h1 = a1.support_at(omega[i]);
    const double h2 = a2.support_at(omega[i]);
    s[static_cast<size_t>(i)] =
        std::pow(alpha1 * std::pow(h1, pv) + alpha2 * std::pow(h2, pv), 1.0 / pv);
  }
  return CCoconvexSet::wulff(a1.cone(), omega, s);
}

CCoconvexSet log_co_sum(const TauWeight& tau, const CCoconvexSet& a1, const CCoconvexSet& a2) {
  require_same_cone(a1, a2);
  const double t = tau.value();
  const DirectionSet omega = DirectionSet::merge(a1.cone(), a1.omega(), a2.omega());
  std::vector<double> s(static_cast<size_t>(omega.size()));
  for (int i = 0; i < omega.size(); ++i) {
    const double h1 = a1.support_at(omega[i]);
    const double h2 = a2.support_at(omega[i]);
    s[static_cast<size_t>(i)] = std::pow(h1, 1.0 - t) * std::pow(h2, t);
  }
  return CCoconvexSet::wulff(a1.cone(), omega, s);
}

double mixed_volume_1(const CCoconvexSet& a0, const CCoconvexSet& a1) {
  require_same_cone(a0, a1);
  double sum = 0.0;
  for (int i = 0; i < a0.omega().size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    sum += a1.support_at(a0.omega()[i]) * a0.facet_measures()[k];
  }
  return sum / static_cast<double>(a0.cone().dim());
}

double lp_mixed_volume(const CCoconvexSet& a, const CCoconvexSet& b, double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "use log_mixed_volume for p = 0");
  }
  require_same_cone(a, b);
  double sum = 0.0;
  for (int i = 0; i < a.omega().size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    sum += std::pow(b.support_at(a.omega()[i]), p) * std::pow(a.support()[k], 1.0 - p) *
           a.facet_measures()[k];
  }
  return sum / static_cast<double>(a.cone().dim());
}

double lp_mixed_volume_fn(const CCoconvexSet& a, const std::vector<double>& g, double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "use log_mixed_volume for p = 0");
  }
  if (g.size() != static_cast<size_t>(a.omega().size())) {
    throw Error(ErrorCode::InvalidArgument, "function vector size does not match omega");
  }
  double sum = 0.0;
  for (size_t k = 0; k < g.size(); ++k) {
    if (!(g[k] > 0.0)) {
      throw Error(ErrorCode::NonPositiveF, "function values must be positive");
    }
    sum += std::pow(g[k], p) * std::pow(a.support()[k], 1.0 - p) * a.facet_measures()[k];
  }
  return sum / static_cast<double>(a.cone().dim());
}

double log_mixed_volume(const CCoconvexSet& a1, const CCoconvexSet& a2) {
  require_same_cone(a1, a2);
  double sum = 0.0;
  for (int i = 0; i < a1.omega().size(); ++i) {
    const size_t k = static_cast<size_t>(i);
    const double h1 = a1.support()[k];
    const double h2 = a2.support_at(a1.omega()[i]);
    sum += std::log(h2 / h1) * h1 * a1.facet_measures()[k];
  }
  return sum / static_cast<double>(a1.cone().dim());
}

double variational_derivative(const CCoconvexSet& a, const std::vector<double>& f, double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "variational derivative needs p != 0");
  }
  if (f.size() != static_cast<size_t>(a.omega().size())) {
    throw Error(ErrorCode::InvalidArgument, "perturbation size does not match omega");
  }
  double sum = 0.0;
  for (size_t k = 0; k < f.size(); ++k) {
    sum += f[k] * std::pow(a.support()[k], 1.0 - p) * a.facet_measures()[k];
  }
  return sum / p;
}

double variational_tau_bound(const CCoconvexSet& a, const std::vector<double>& f, double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "variational family needs p != 0");
  }
  double min_hp = std::numeric_limits<double>::infinity();
  for (double s : a.support()) min_hp = std::min(min_hp, std::pow(s, p));
  double max_f = 0.0;
  for (double v : f) max_f = std::max(max_f, std::abs(v));
  if (max_f == 0.0) return std::numeric_limits<double>::infinity();
  return min_hp / max_f;
}

double variational_derivative_fd(const CCoconvexSet& a, const std::vector<double>& f, double p,
                                 double step) {
  if (f.size() != static_cast<size_t>(a.omega().size())) {
    throw Error(ErrorCode::InvalidArgument, "perturbation size does not match omega");
  }
  const double bound = variational_tau_bound(a, f, p);
  if (!(std::abs(step) < bound)) {
    throw Error(ErrorCode::StepTooLarge, "finite-difference step exceeds the admissible bound");
  }
  auto volume_at = [&](double tau) {
    std::vector<double> s(f.size());
    for (size_t k = 0; k < f.size(); ++k) {
      s[k] = std::pow(std::pow(a.support()[k], p) + tau * f[k], 1.0 / p);
    }
    return CCoconvexSet::wulff(a.cone(), a.omega(), s).covolume();
  };
  return (volume_at(step) - volume_at(-step)) / (2.0 * step);
}

}  // namespace coconvex
