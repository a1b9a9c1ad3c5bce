#include "coconvex/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coconvex {

namespace {

struct Target {
  DirectionSet omega;
  std::vector<double> weights;
  double total = 0.0;
};

// Directions carrying positive weight become the solver's omega; the
// solution is C-determined by the support of mu.
Target target_from_measure(const Cone& cone, const DiscreteMeasure& mu) {
  std::vector<Vec> dirs;
  std::vector<double> weights;
  double total = 0.0;
  for (const MeasureAtom& a : mu.atoms()) {
    if (a.w > 0.0) {
      dirs.push_back(a.u);
      weights.push_back(a.w);
      total += a.w;
    }
  }
  if (dirs.empty() || total <= 0.0) {
    throw Error(ErrorCode::EmptyMeasure, "target measure has no positive atoms");
  }
  return Target{DirectionSet::make(cone, dirs), std::move(weights), total};
}

std::vector<double> initial_support(const SolverOptions& options, int size) {
  if (options.initial_support.empty()) {
    return std::vector<double>(static_cast<size_t>(size), 1.0);
  }
  if (options.initial_support.size() != static_cast<size_t>(size)) {
    throw Error(ErrorCode::InvalidArgument, "initial support size does not match the measure");
  }
  for (double v : options.initial_support) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveF, "initial support must be positive");
    }
  }
  return options.initial_support;
}

struct Iterate {
  CCoconvexSet set;          // Wulff shape of the current support
  std::vector<double> s;     // attained support (snapped)
  std::vector<double> sigma; // facet measures
  double volume = 0.0;
};

Iterate build_iterate(const Cone& cone, const DirectionSet& omega, const std::vector<double>& s) {
  CCoconvexSet set = CCoconvexSet::wulff(cone, omega, s);
  Iterate it{set, set.support(), set.facet_measures(), set.covolume()};
  return it;
}

double max_rel_mismatch(const std::vector<double>& achieved, const std::vector<double>& target) {
  double worst = 0.0;
  for (size_t i = 0; i < target.size(); ++i) {
    const double denom = std::max(std::abs(target[i]), 1e-300);
    worst = std::max(worst, std::abs(achieved[i] - target[i]) / denom);
  }
  return worst;
}

double linf(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

std::string solver_fingerprint(const Cone& cone, const Target& tgt, const std::string& p_label) {
  std::ostringstream os;
  os << "{\"problem\":\"minkowski\",\"n\":" << cone.dim() << ",\"atoms\":" << tgt.omega.size()
     << ",\"p\":\"" << p_label << "\"}";
  return os.str();
}

// Shared ascent loop in x = log(support) coordinates. The callbacks supply
// the objective (maximized), its gradient, the reported trace value at the
// snapped iterate, and the vector of relative mismatches between the
// cone-volume fractions and the target fractions (the quantity the final
// residual audit measures, invariant under dilation).
struct AscentResult {
  Iterate final;
  std::vector<double> trace;
  int iterations = 0;
  bool stationary = false;
  double relerr = 0.0;
};

template <typename ObjectiveFn, typename GradientFn, typename TraceFn, typename ResidualFn>
AscentResult ascend(const Cone& cone, const DirectionSet& omega, std::vector<double> s0,
                    const SolverOptions& options, double grad_scale, ObjectiveFn obj,
                    GradientFn grad, TraceFn trace_value, ResidualFn residual_vec) {
  const int m = omega.size();
  const double nd = static_cast<double>(cone.dim());
  std::vector<double> x(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) x[static_cast<size_t>(i)] = std::log(s0[static_cast<size_t>(i)]);

  auto rebuild = [&](const std::vector<double>& xs) {
    std::vector<double> s(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) s[i] = std::exp(xs[i]);
    return build_iterate(cone, omega, s);
  };
  auto scaled_direction = [&](const Iterate& it, const std::vector<double>& g) {
    // Precondition by the cone-volume fractions: they set the diagonal
    // curvature scale of both objectives, so the scaled step behaves like
    // a Newton step while staying an ascent direction. The floor is
    // relative to the largest fraction; an absolute floor would blow up
    // the direction when a facet dies and throttle every coordinate
    // through the step cap.
    double frac_max = 1e-12;
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      frac_max = std::max(frac_max, it.s[k] * it.sigma[k] / (nd * it.volume));
    }
    std::vector<double> d(g.size());
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double frac =
          std::max(it.s[k] * it.sigma[k] / (nd * it.volume), 1e-3 * frac_max);
      d[k] = g[k] / frac;
    }
    return d;
  };

  AscentResult res{rebuild(x), {}, 0, false, 0.0};
  double value = obj(res.final);
  res.relerr = linf(residual_vec(res.final));
  res.trace.push_back(trace_value(res.final));
  // Well under the audit tolerance so the final rebuild cannot tip it over.
  const double relerr_target = 0.05 * options.residual_tolerance;

  double step = 1.0;
  int stall_count = 0;
  int passes = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    ++passes;
    // Snap to the attained support; never worse for the objective.
    for (int i = 0; i < m; ++i) {
      x[static_cast<size_t>(i)] = std::log(res.final.s[static_cast<size_t>(i)]);
    }
    // Keep the iterate scale near V = 1; the objective is scale-invariant.
    const double shift = std::log(res.final.volume) / static_cast<double>(cone.dim());
    for (double& xi : x) xi -= shift;

    if (res.relerr <= relerr_target) {
      res.stationary = true;
      break;
    }
    const std::vector<double> g = grad(res.final);
    double gnorm_inf = 0.0;
    for (double gi : g) gnorm_inf = std::max(gnorm_inf, std::abs(gi));
    if (gnorm_inf <= options.gradient_tolerance * grad_scale) {
      res.stationary = true;
      break;
    }

    const std::vector<double> d = scaled_direction(res.final, g);
    double dnorm_inf = 0.0;
    double gd = 0.0;
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      dnorm_inf = std::max(dnorm_inf, std::abs(d[k]));
      gd += g[k] * d[k];
    }

    // Backtracking line search along the scaled direction, Armijo test.
    double t = std::min(step * 2.0, 1.0);
    t = std::min(t, 2.0 / dnorm_inf);  // cap the support change per move
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<double> xt = x;
      for (int i = 0; i < m; ++i) xt[static_cast<size_t>(i)] += t * d[static_cast<size_t>(i)];
      Iterate cand;
      try {
        cand = rebuild(xt);
      } catch (const Error& e) {
        // An extreme probe can push the geometry past its numerical
        // guardrails; treat it like a rejected step.
        if (e.code() != ErrorCode::InternalGeometryError) throw;
        t *= options.line_search_shrink;
        continue;
      }
      const double cand_value = obj(cand);
      if (cand_value >= value + options.sufficient_decrease * t * gd) {
        x = std::move(xt);
        res.final = std::move(cand);
        const double prev = value;
        value = cand_value;
        res.relerr = linf(residual_vec(res.final));
        res.trace.push_back(trace_value(res.final));
        res.iterations = iter + 1;
        accepted = true;
        step = t;
        // The objective gap scales like the squared residual, so a single
        // flat step is not yet stationarity; require a run of them.
        if (std::abs(value - prev) <=
            options.objective_tolerance * std::max(1.0, std::abs(value))) {
          if (++stall_count >= 8) res.stationary = true;
        } else {
          stall_count = 0;
        }
        break;
      }
      t *= options.line_search_shrink;
    }
    if (!accepted || res.stationary) {
      // No admissible step: treat as stationary up to line-search resolution.
      res.stationary = res.stationary || !accepted;
      break;
    }
  }

  // When an atom carries little weight, the objective goes flat to rounding
  // while that atom's relative error is still above the tolerance. The
  // stationarity map is contractive there even though Armijo cannot certify
  // progress, so follow it on the residual metric with the leftover budget.
  if (res.relerr > relerr_target) {
    double t = 0.5;
    for (; passes < options.max_iterations && res.relerr > relerr_target; ++passes) {
      const std::vector<double> g = grad(res.final);
      const std::vector<double> d = scaled_direction(res.final, g);
      double dnorm_inf = 0.0;
      for (double di : d) dnorm_inf = std::max(dnorm_inf, std::abs(di));
      const double te = std::min(t, 2.0 / dnorm_inf);  // same cap as the line search
      std::vector<double> xt = x;
      for (int i = 0; i < m; ++i) xt[static_cast<size_t>(i)] += te * d[static_cast<size_t>(i)];
      Iterate cand;
      try {
        cand = rebuild(xt);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InternalGeometryError) throw;
        t *= 0.5;
        if (t < 1e-6) break;
        continue;
      }
      const double cand_rel = linf(residual_vec(cand));
      if (cand_rel < res.relerr) {
        x = std::move(xt);
        res.final = std::move(cand);
        res.relerr = cand_rel;
        res.iterations += 1;
        t = std::min(t * 1.5, 1.0);
      } else {
        t *= 0.5;
        if (t < 1e-6) break;
      }
    }
  }

  // Damped Newton on the stationarity system itself, with a finite
  // difference Jacobian. For p outside (0, n) the objective Hessian can be
  // indefinite at the solution, where no scalar step along the gradient
  // contracts; the linear solve handles that case.
  if (res.relerr > relerr_target && passes < options.max_iterations) {
    const double h = 1e-6;
    std::vector<double> r = residual_vec(res.final);
    for (int newton = 0; newton < 40 && res.relerr > relerr_target; ++newton) {
      if (passes + 2 * m >= options.max_iterations) break;
      Eigen::MatrixXd jac(m, m);
      bool fd_ok = true;
      for (int j = 0; j < m && fd_ok; ++j) {
        std::vector<double> xp = x;
        std::vector<double> xm = x;
        xp[static_cast<size_t>(j)] += h;
        xm[static_cast<size_t>(j)] -= h;
        try {
          const std::vector<double> rp = residual_vec(rebuild(xp));
          const std::vector<double> rm = residual_vec(rebuild(xm));
          for (int i = 0; i < m; ++i) {
            jac(i, j) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InternalGeometryError) throw;
          fd_ok = false;
        }
        passes += 2;
      }
      if (!fd_ok) break;
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = -r[static_cast<size_t>(i)];
      const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(rhs);
      if (!delta.allFinite()) break;
      double t = std::min(1.0, 2.0 / std::max(delta.cwiseAbs().maxCoeff(), 1e-12));
      bool accepted = false;
      for (int bt = 0; bt < 20 && passes < options.max_iterations; ++bt, ++passes) {
        std::vector<double> xt = x;
        for (int i = 0; i < m; ++i) xt[static_cast<size_t>(i)] += t * delta[i];
        Iterate cand;
        try {
          cand = rebuild(xt);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InternalGeometryError) throw;
          t *= 0.5;
          continue;
        }
        const std::vector<double> rc = residual_vec(cand);
        if (linf(rc) < res.relerr) {
          x = std::move(xt);
          res.final = std::move(cand);
          r = rc;
          res.relerr = linf(r);
          res.iterations += 1;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
    }
  }
  res.stationary = res.stationary || res.relerr <= relerr_target;
  return res;
}

}  // namespace

double lp_objective(const Cone& cone, const DirectionSet& omega, const std::vector<double>& s,
                    const DiscreteMeasure& mu, double p) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "objective needs p != 0");
  }
  if (mu.size() == 0 || mu.total() <= 0.0) {
    throw Error(ErrorCode::EmptyMeasure, "objective needs a nonzero measure");
  }
  const CCoconvexSet a = CCoconvexSet::wulff(cone, omega, s);
  const double v = a.covolume();
  if (!(v > 0.0)) {
    throw Error(ErrorCode::ZeroVolume, "iterate has nonpositive covolume");
  }
  double phi = 0.0;
  for (const MeasureAtom& atom : mu.atoms()) {
    const int idx = a.omega().find(atom.u);
    if (idx < 0) {
      throw Error(ErrorCode::InvalidArgument, "measure atom outside omega");
    }
    phi += atom.w * std::pow(a.support()[static_cast<size_t>(idx)], p);
  }
  return std::pow(v, -p / static_cast<double>(cone.dim())) * phi;
}

SolveResult solve_lp_minkowski(const Cone& cone, const DiscreteMeasure& mu, double p,
                               const SolverOptions& options) {
  if (p == 0.0) {
    throw Error(ErrorCode::ZeroP, "p = 0 is the log problem; use solve_log_minkowski");
  }
  if (!std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "p must be finite");
  }
  const int n = cone.dim();
  const double nd = static_cast<double>(n);
  const bool p_equals_n = std::abs(p - nd) <= 1e-12;
  if (options.output_form == OutputForm::Scaled && p_equals_n) {
    throw Error(ErrorCode::PEqualsN, "scaled output is undefined at p = n");
  }

  Target tgt = target_from_measure(cone, mu);
  const int m = tgt.omega.size();
  std::vector<double> s0 = initial_support(options, m);
  const double sign = p > 0.0 ? 1.0 : -1.0;

  auto phi_of = [&](const Iterate& it) {
    double phi = 0.0;
    for (int i = 0; i < m; ++i) {
      phi += tgt.weights[static_cast<size_t>(i)] * std::pow(it.s[static_cast<size_t>(i)], p);
    }
    return phi;
  };
  auto objective = [&](const Iterate& it) {
    return sign * (std::log(phi_of(it)) - (p / nd) * std::log(it.volume));
  };
  auto gradient = [&](const Iterate& it) {
    const double phi = phi_of(it);
    std::vector<double> g(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      g[k] = std::abs(p) * (tgt.weights[k] * std::pow(it.s[k], p) / phi -
                            it.s[k] * it.sigma[k] / (nd * it.volume));
    }
    return g;
  };
  auto trace_value = [&](const Iterate& it) {
    return std::pow(it.volume, -p / nd) * phi_of(it);
  };
  auto residual_vec = [&](const Iterate& it) {
    const double phi = phi_of(it);
    std::vector<double> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double want = tgt.weights[k] * std::pow(it.s[k], p) / phi;
      const double have = it.s[k] * it.sigma[k] / (nd * it.volume);
      r[k] = (have - want) / want;
    }
    return r;
  };

  // Outside (0, n) the basin of the solution need not contain the flat
  // start, so a failed run is retried from a measure-informed guess and
  // from deterministic jitters; the attempt with the smallest residual
  // wins. Explicit initializers are honored verbatim, without retries.
  std::vector<std::vector<double>> starts;
  starts.push_back(std::move(s0));
  if (options.initial_support.empty()) {
    if (!p_equals_n) {
      // Single-atom calibration: mu_k scales like s_k^{n-p}.
      std::vector<double> guess(static_cast<size_t>(m));
      double log_mean = 0.0;
      bool usable = true;
      for (int i = 0; i < m; ++i) {
        const double v = std::pow(tgt.weights[static_cast<size_t>(i)], 1.0 / (nd - p));
        if (!std::isfinite(v) || v <= 0.0) {
          usable = false;
          break;
        }
        guess[static_cast<size_t>(i)] = v;
        log_mean += std::log(v);
      }
      if (usable) {
        const double scale = std::exp(-log_mean / static_cast<double>(m));
        for (double& v : guess) v *= scale;
        starts.push_back(std::move(guess));
      }
    }
    SplitMix64 rng(2718281828ULL);
    for (int extra = 0; extra < 2; ++extra) {
      std::vector<double> jitter(static_cast<size_t>(m));
      for (double& v : jitter) v = std::exp(rng.next_double() * 2.0 - 1.0);
      starts.push_back(std::move(jitter));
    }
  }

  AscentResult asc;
  bool have_attempt = false;
  for (const std::vector<double>& start : starts) {
    AscentResult attempt = ascend(cone, tgt.omega, start, options, 1.0, objective, gradient,
                                  trace_value, residual_vec);
    if (!have_attempt || attempt.relerr < asc.relerr) {
      asc = std::move(attempt);
      have_attempt = true;
    }
    if (asc.relerr <= 0.05 * options.residual_tolerance) break;
  }

  // Normalized representative A_0 with V_n = 1.
  std::vector<double> s_norm = asc.final.s;
  const double scale0 = std::pow(asc.final.volume, -1.0 / nd);
  for (double& v : s_norm) v *= scale0;
  CCoconvexSet a0 = CCoconvexSet::wulff(cone, tgt.omega, s_norm);

  double phi0 = 0.0;
  for (int i = 0; i < m; ++i) {
    phi0 += tgt.weights[static_cast<size_t>(i)] *
            std::pow(a0.support()[static_cast<size_t>(i)], p);
  }
  const double c = phi0 / (nd * a0.covolume());

  const bool report_normalized =
      options.output_form == OutputForm::Normalized || p_equals_n;

  SolveResult result{a0, c, std::move(asc.trace), 0.0, asc.iterations, false,
                     report_normalized, p, false};
  if (!report_normalized) {
    result.solution = a0.dilate(std::pow(c, 1.0 / (nd - p)));
  }

  // Residual audit against the defining relation.
  {
    const DiscreteMeasure achieved = result.solution.lp_surface_measure(p);
    std::vector<double> ach(static_cast<size_t>(m));
    const double factor = report_normalized ? c : 1.0;
    for (int i = 0; i < m; ++i) {
      ach[static_cast<size_t>(i)] = factor * achieved.weight_at(tgt.omega[i]);
    }
    result.residual = max_rel_mismatch(ach, tgt.weights);
  }
  result.converged = asc.stationary && result.residual <= options.residual_tolerance;
  return result;
}

SolveResult solve_log_minkowski(const Cone& cone, const DiscreteMeasure& mu,
                                const SolverOptions& options) {
  const int n = cone.dim();
  const double nd = static_cast<double>(n);
  Target tgt = target_from_measure(cone, mu);
  const int m = tgt.omega.size();
  std::vector<double> s0 = initial_support(options, m);
  const double mass = tgt.total;

  auto objective = [&](const Iterate& it) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      sum += tgt.weights[static_cast<size_t>(i)] * std::log(it.s[static_cast<size_t>(i)]);
    }
    return sum - (mass / nd) * std::log(it.volume);
  };
  auto gradient = [&](const Iterate& it) {
    std::vector<double> g(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      g[k] = tgt.weights[k] - (mass / (nd * it.volume)) * it.s[k] * it.sigma[k];
    }
    return g;
  };

  auto residual_vec = [&](const Iterate& it) {
    std::vector<double> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double want = tgt.weights[k] / mass;
      const double have = it.s[k] * it.sigma[k] / (nd * it.volume);
      r[k] = (have - want) / want;
    }
    return r;
  };
  AscentResult asc = ascend(cone, tgt.omega, s0, options, std::max(1.0, mass), objective,
                            gradient, objective, residual_vec);

  // At stationarity the cone volume measure is proportional to mu; a global
  // dilation matches the total mass exactly.
  const double beta = std::pow(mass / asc.final.volume, 1.0 / nd);
  std::vector<double> s_final = asc.final.s;
  for (double& v : s_final) v *= beta;
  CCoconvexSet sol = CCoconvexSet::wulff(cone, tgt.omega, s_final);

  SolveResult result{sol, mass / asc.final.volume, std::move(asc.trace), 0.0,
                     asc.iterations, false, false, 0.0, true};

  const DiscreteMeasure achieved = sol.cone_volume_measure();
  std::vector<double> ach(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    ach[static_cast<size_t>(i)] = achieved.weight_at(tgt.omega[i]);
  }
  result.residual = max_rel_mismatch(ach, tgt.weights);
  result.converged = asc.stationary && result.residual <= options.residual_tolerance;
  return result;
}

CheckReport verify_solution(const SolveResult& result, const DiscreteMeasure& mu,
                            double tolerance) {
  Target tgt = target_from_measure(result.solution.cone(), mu);
  // Rebuild from the reported support vector so the audit uses fresh
  // geometry rather than the solver's caches.
  CCoconvexSet rebuilt =
      CCoconvexSet::wulff(result.solution.cone(), result.solution.omega(),
                          result.solution.support());
  DiscreteMeasure achieved =
      result.is_log ? rebuilt.cone_volume_measure() : rebuilt.lp_surface_measure(result.p);
  const double factor = (!result.is_log && result.normalized) ? result.c : 1.0;

  std::vector<double> ach(tgt.weights.size());
  for (int i = 0; i < tgt.omega.size(); ++i) {
    ach[static_cast<size_t>(i)] = factor * achieved.weight_at(tgt.omega[i]);
  }
  const double worst = max_rel_mismatch(ach, tgt.weights);

  CheckReport report = make_report(
      "solution-audit", worst, tolerance,
      solver_fingerprint(result.solution.cone(), tgt, result.is_log ? "log" : std::to_string(result.p)));
  report.extras.emplace_back("total_mass_mismatch",
                             std::abs(achieved.total() * factor - mu.total()));
  report.extras.emplace_back("iterations", static_cast<double>(result.iterations));
  report.extras.emplace_back("converged", result.converged ? 1.0 : 0.0);
  return report;
}

}  // namespace coconvex
