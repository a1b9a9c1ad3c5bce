#include "coconvex/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "coconvex/io.hpp"
#include "coconvex/solver.hpp"
#include "coconvex/svg.hpp"

namespace coconvex {

namespace {

unsigned long long parse_seed_token(const std::string& token) {
  size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad seed value: " + token);
  }
  if (used != token.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad seed value: " + token);
  }
  return value;
}

// "42", "1,5,9" or "1..100" (inclusive range).
std::vector<unsigned long long> parse_seeds(const std::string& text) {
  std::vector<unsigned long long> seeds;
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const unsigned long long lo = parse_seed_token(text.substr(0, dots));
    const unsigned long long hi = parse_seed_token(text.substr(dots + 2));
    if (hi < lo || hi - lo > 1000000) {
      throw Error(ErrorCode::InvalidArgument, "bad seed range: " + text);
    }
    for (unsigned long long s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string token =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    seeds.push_back(parse_seed_token(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return seeds;
}

// p as a literal float or the token "log".
bool parse_p(const std::string& text, double& p) {
  if (text == "log") return true;
  size_t used = 0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad p value: " + text);
  }
  if (used != text.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad p value: " + text);
  }
  return false;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

struct GenConfig {
  unsigned long long seed = 1;
  int n = 2;
  int omega = 3;
  int cone_generators = 0;  // 0 means n + 1
  double support_min = 0.5;
  double support_max = 2.0;
  std::string out_dir = ".";
  bool pair = false;
};

int run_gen(const GenConfig& cfg, std::ostream& out) {
  InstanceGenerator gen;
  gen.n = cfg.n;
  gen.cone_generators = cfg.cone_generators > 0 ? cfg.cone_generators : cfg.n + 1;
  gen.omega_size = cfg.omega;
  gen.support_min = cfg.support_min;
  gen.support_max = cfg.support_max;
  gen.seed = cfg.seed;
  const InstancePair pair = random_instance(gen);

  const std::string cone_path = join_path(cfg.out_dir, "cone.json");
  const std::string a_path = join_path(cfg.out_dir, "setA.json");
  write_json_file(cone_path, cone_to_json(pair.cone));
  write_json_file(a_path, coconvex_to_json(pair.a));
  out << "wrote " << cone_path << "\n" << "wrote " << a_path << "\n";
  if (cfg.pair) {
    const std::string b_path = join_path(cfg.out_dir, "setB.json");
    write_json_file(b_path, coconvex_to_json(pair.b));
    out << "wrote " << b_path << "\n";
  }
  return 0;
}

struct SumConfig {
  std::string a_path;
  std::string b_path;
  std::string p_text = "1";
  double tau = 0.5;
  bool tau_given = false;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  std::string out_path;
};

int run_sum(const SumConfig& cfg, std::ostream& out) {
  const CCoconvexSet a = coconvex_from_json(load_json_file(cfg.a_path));
  const CCoconvexSet b = coconvex_from_json(load_json_file(cfg.b_path));
  double p = 0.0;
  const bool is_log = parse_p(cfg.p_text, p);
  if (!is_log && cfg.tau_given) {
    throw Error(ErrorCode::InvalidArgument, "--tau applies only with --p log");
  }
  const CCoconvexSet sum = is_log
                               ? log_co_sum(TauWeight(cfg.tau), a, b)
                               : p_co_sum(cfg.alpha1, a, cfg.alpha2, b, PExponent::of(p));
  write_json_file(cfg.out_path, coconvex_to_json(sum));
  out << "wrote " << cfg.out_path << " (volume " << sum.covolume() << ")\n";
  return 0;
}

struct MeasureConfig {
  std::string in_path;
  std::string kind = "surface";
  double p = 0.5;
  bool p_given = false;
  std::string out_path;
};

int run_measure(const MeasureConfig& cfg, std::ostream& out) {
  const CCoconvexSet a = coconvex_from_json(load_json_file(cfg.in_path));
  DiscreteMeasure mu;
  if (cfg.kind == "surface") {
    mu = a.surface_measure();
  } else if (cfg.kind == "lp") {
    if (!cfg.p_given) {
      throw Error(ErrorCode::InvalidArgument, "--kind lp requires --p");
    }
    mu = a.lp_surface_measure(cfg.p);
  } else if (cfg.kind == "cone-volume") {
    mu = a.cone_volume_measure();
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown measure kind: " + cfg.kind);
  }
  write_json_file(cfg.out_path, measure_to_json(mu));
  out << "wrote " << cfg.out_path << " (total " << mu.total() << ")\n";
  return 0;
}

struct SolveConfig {
  std::string cone_path;
  std::string measure_path;
  std::string p_text;
  bool normalized = false;
  int max_iterations = 10000;
  double residual_tolerance = 1e-6;
  std::string out_path;
};

int run_solve(const SolveConfig& cfg, std::ostream& out) {
  const Cone cone = cone_from_json(load_json_file(cfg.cone_path));
  const DiscreteMeasure raw = measure_from_json(load_json_file(cfg.measure_path));
  DiscreteMeasure mu;
  try {
    mu = DiscreteMeasure::make(cone, raw.atoms());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, cfg.measure_path + ": " + e.what());
  }

  double p = 0.0;
  const bool is_log = parse_p(cfg.p_text, p);
  SolverOptions options;
  options.max_iterations = cfg.max_iterations;
  options.residual_tolerance = cfg.residual_tolerance;
  if (cfg.normalized) options.output_form = OutputForm::Normalized;

  const SolveResult result = is_log ? solve_log_minkowski(cone, mu, options)
                                    : solve_lp_minkowski(cone, mu, p, options);
  write_json_file(cfg.out_path, solve_result_to_json(result));
  out << "wrote " << cfg.out_path << " (residual " << result.residual << ", "
      << result.iterations << " iterations, " << (result.converged ? "converged" : "stalled")
      << ")\n";
  return result.converged ? 0 : 3;
}

struct VerifyConfig {
  std::string suite = "all";
  std::string seeds_text = "1..20";
  int n = 2;
  int omega = 3;
  std::string out_path;
};

int run_verify(const VerifyConfig& cfg, std::ostream& out) {
  const std::vector<unsigned long long> seeds = parse_seeds(cfg.seeds_text);
  const std::vector<CheckReport> reports = run_check_suite(cfg.suite, seeds, cfg.n, cfg.omega);
  const Json j = reports_to_json(reports);
  if (!cfg.out_path.empty()) {
    write_json_file(cfg.out_path, j);
    out << "wrote " << cfg.out_path << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  const int total = j["total"].get<int>();
  const int passed = j["passed"].get<int>();
  out << passed << "/" << total << " checks passed\n";
  return passed == total ? 0 : 4;
}

struct PlotConfig {
  std::string in_path;
  std::string out_path;
  std::string dump_path;
  int size = 640;
};

int run_plot(const PlotConfig& cfg, std::ostream& out) {
  const CCoconvexSet a = coconvex_from_json(load_json_file(cfg.in_path));
  if (!cfg.dump_path.empty()) {
    write_json_file(cfg.dump_path, polytope_to_json(a.body()));
    out << "wrote " << cfg.dump_path << "\n";
  }
  if (!cfg.out_path.empty()) {
    write_file_atomic(cfg.out_path, render_svg(a, cfg.size));
    out << "wrote " << cfg.out_path << "\n";
  } else if (cfg.dump_path.empty()) {
    throw Error(ErrorCode::InvalidArgument, "plot needs --out or --dump-geometry");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coconvex sets over pointed cones: generation, L_p algebra, "
               "Minkowski-problem solving and inequality verification"};
  app.require_subcommand(1);

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "generate a deterministic instance");
  gen->add_option("--seed", gen_cfg.seed, "generator seed");
  gen->add_option("--n", gen_cfg.n, "ambient dimension");
  gen->add_option("--omega", gen_cfg.omega, "number of omega directions");
  gen->add_option("--cone-generators", gen_cfg.cone_generators,
                  "cone generator count (default n + 1)");
  gen->add_option("--support-min", gen_cfg.support_min, "support draw lower bound");
  gen->add_option("--support-max", gen_cfg.support_max, "support draw upper bound");
  gen->add_option("--out", gen_cfg.out_dir, "output directory");
  gen->add_flag("--pair", gen_cfg.pair, "also write a second set over the same omega");

  SumConfig sum_cfg;
  CLI::App* sum = app.add_subcommand("sum", "p-co-sum or log-co-sum of two sets");
  sum->add_option("--a", sum_cfg.a_path, "first coconvex record")->required();
  sum->add_option("--b", sum_cfg.b_path, "second coconvex record")->required();
  sum->add_option("--p", sum_cfg.p_text, "exponent in (0, 1] or the token log");
  CLI::Option* tau_opt =
      sum->add_option("--tau", sum_cfg.tau, "interpolation weight for --p log");
  sum->add_option("--alpha1", sum_cfg.alpha1, "first coefficient");
  sum->add_option("--alpha2", sum_cfg.alpha2, "second coefficient");
  sum->add_option("--out", sum_cfg.out_path, "output path")->required();

  MeasureConfig measure_cfg;
  CLI::App* measure = app.add_subcommand("measure", "export a measure of a set");
  measure->add_option("--in", measure_cfg.in_path, "coconvex record")->required();
  measure->add_option("--kind", measure_cfg.kind, "surface | lp | cone-volume");
  CLI::Option* mp_opt = measure->add_option("--p", measure_cfg.p, "exponent for --kind lp");
  measure->add_option("--out", measure_cfg.out_path, "output path")->required();

  SolveConfig solve_cfg;
  CLI::App* solve = app.add_subcommand("solve", "solve the Minkowski problem for a measure");
  solve->add_option("--cone", solve_cfg.cone_path, "cone record")->required();
  solve->add_option("--measure", solve_cfg.measure_path, "measure record")->required();
  solve->add_option("--p", solve_cfg.p_text, "exponent (nonzero float) or the token log")
      ->required();
  solve->add_flag("--normalized", solve_cfg.normalized,
                  "report the volume-normalized pair (A_0, c)");
  solve->add_option("--max-iterations", solve_cfg.max_iterations, "iteration budget");
  solve->add_option("--tol", solve_cfg.residual_tolerance, "residual tolerance");
  solve->add_option("--out", solve_cfg.out_path, "output path")->required();

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "run an inequality check suite");
  verify->add_option("--suite", verify_cfg.suite,
                     "lp-bm | lp-minkowski | minkowski-1 | wulff | log-bm | log-minkowski | "
                     "uniqueness | all");
  verify->add_option("--seeds", verify_cfg.seeds_text, "seed, list or inclusive range a..b");
  verify->add_option("--n", verify_cfg.n, "ambient dimension");
  verify->add_option("--omega", verify_cfg.omega, "number of omega directions");
  verify->add_option("--out", verify_cfg.out_path, "report path (default: print)");

  PlotConfig plot_cfg;
  CLI::App* plot = app.add_subcommand("plot", "render a plane instance as SVG");
  plot->add_option("--in", plot_cfg.in_path, "coconvex record")->required();
  plot->add_option("--out", plot_cfg.out_path, "SVG output path");
  plot->add_option("--size", plot_cfg.size, "viewport size in px");
  plot->add_option("--dump-geometry", plot_cfg.dump_path,
                   "also write the body polytope as JSON (any dimension)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    sum_cfg.tau_given = tau_opt->count() > 0;
    measure_cfg.p_given = mp_opt->count() > 0;
    if (const char* env_seed = std::getenv("COCONVEX_SEED")) {
      gen_cfg.seed = parse_seed_token(env_seed);
      verify_cfg.seeds_text = env_seed;
    }
    if (gen->parsed()) return run_gen(gen_cfg, out);
    if (sum->parsed()) return run_sum(sum_cfg, out);
    if (measure->parsed()) return run_measure(measure_cfg, out);
    if (solve->parsed()) return run_solve(solve_cfg, out);
    if (verify->parsed()) return run_verify(verify_cfg, out);
    if (plot->parsed()) return run_plot(plot_cfg, out);
    err << "error: no command\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coconvex
