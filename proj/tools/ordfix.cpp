// ordfix: command-line front end for the fixed-point engines.
//
// Exit codes: 0 converged, 1 iteration cap reached, 2 bad input or usage,
// 3 an order/(H1) hypothesis failed, 4 kernel rejected by validation.

#include "ordfix/ordfix.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace ordfix;
using io::json;

namespace {

enum Exit : int {
  exit_converged = 0,
  exit_max_iter = 1,
  exit_usage = 2,
  exit_violation = 3,
  exit_kernel = 4,
};

struct RunConfig {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string config_path;

  std::string norm = "sup";
  json cone;  // {"kind": ..., "dimension": ..., "weights": [...]}

  // delta
  std::string set_a, set_b;
  // solvers
  std::string map_name;
  std::string map_file;
  std::string x0;
  std::string selector = "lexicographic";
  double c = 2.0;
  // integral
  std::string kernel = "separable_unit";
  std::size_t grid_size = 257;
  std::string quadrature = "midpoint_diagonal_skip";
  std::optional<double> nu, M;
  bool override_kernel = false;
  // check-h1h2
  std::string image;
};

int exit_for(Termination t) {
  switch (t) {
  case Termination::converged: return exit_converged;
  case Termination::max_iter: return exit_max_iter;
  default: return exit_violation;
  }
}

Vector parse_vector(const std::string &text) {
  Vector v;
  std::stringstream ss(text);
  std::string field;
  std::size_t col = 0;
  while (std::getline(ss, field, ',')) {
    ++col;
    auto d = io::parse_double(field);
    if (!d) io::parse_fail("--x0", 1, col, "'" + field + "' is not a number");
    v.push_back(*d);
  }
  if (v.empty()) throw Error(ErrorCode::parse_error, "--x0: empty vector");
  return v;
}

ConeOrder make_cone(const RunConfig &cfg, std::size_t dimension) {
  if (cfg.cone.is_null()) return ConeOrder::orthant(dimension);
  std::string kind = cfg.cone.value("kind", std::string("orthant"));
  std::size_t dim = cfg.cone.value("dimension", dimension);
  if (dim != dimension)
    throw Error(ErrorCode::dimension_mismatch, "config cone dimension " + std::to_string(dim) +
                                                   " does not match the map (" +
                                                   std::to_string(dimension) + ")");
  if (kind == "orthant") return ConeOrder::orthant(dim);
  if (kind == "weighted_orthant") {
    auto w = cfg.cone.at("weights").get<Vector>();
    if (w.size() != dim)
      throw Error(ErrorCode::dimension_mismatch, "config cone: weights vs dimension");
    return ConeOrder::weighted_orthant(std::move(w));
  }
  throw Error(ErrorCode::invalid_argument,
              "config cone kind '" + kind + "' (custom cones need the library API)");
}

void write_file(const RunConfig &cfg, const std::string &name,
                const std::function<void(std::ostream &)> &body) {
  fs::create_directories(cfg.out);
  auto out = io::open_output((fs::path(cfg.out) / name).string());
  body(out);
}

void write_json(const RunConfig &cfg, const std::string &name, const json &j) {
  write_file(cfg, name, [&](std::ostream &o) { o << j.dump(2) << '\n'; });
}

int cmd_delta(const RunConfig &cfg) {
  Norm nk = parse_norm(cfg.norm);
  auto a = io::read_point_set_file(cfg.set_a, nk);
  auto b = io::read_point_set_file(cfg.set_b, nk);
  std::cout << io::format_double(delta(a, b)) << '\n';
  return exit_converged;
}

int cmd_solve_increasing(const RunConfig &cfg) {
  auto named = registry::increasing_map(cfg.map_name);
  if (!named) throw Error(ErrorCode::invalid_argument, "unknown map '" + cfg.map_name + "'");
  Vector x0 = cfg.x0.empty() ? Vector(named->dimension ? named->dimension : 1, 0.0)
                             : parse_vector(cfg.x0);
  if (named->dimension && x0.size() != named->dimension)
    throw Error(ErrorCode::dimension_mismatch,
                cfg.map_name + " acts on R^" + std::to_string(named->dimension));
  auto cone = make_cone(cfg, x0.size());
  auto res = iterate_increasing(named->map, x0, cone, cfg.tol, cfg.max_iter, parse_norm(cfg.norm));
  write_file(cfg, "trace.csv", [&](std::ostream &o) { io::write_trace_csv(o, res.trace); });
  json j = io::to_json(res);
  write_json(cfg, "result.json", j);
  std::cout << j.dump() << '\n';
  return exit_for(res.trace.terminated_by);
}

int cmd_solve_setvalued(const RunConfig &cfg) {
  Norm nk = parse_norm(cfg.norm);
  std::optional<FiniteSetValuedMap> map;
  if (!cfg.map_file.empty()) {
    auto in = io::open_input(cfg.map_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::parse_error, cfg.map_file + ": " + e.what());
    }
    map = io::read_setvalued_json(j, nk);
  } else {
    map = registry::setvalued_map(cfg.map_name);
    if (!map) throw Error(ErrorCode::invalid_argument, "unknown map '" + cfg.map_name + "'");
  }
  Vector x0 = cfg.x0.empty() ? map->domain().front() : parse_vector(cfg.x0);
  auto cone = make_cone(cfg, map->dimension());
  auto res = iterate_setvalued(*map, x0, cone, cfg.tol, cfg.max_iter,
                               parse_selector(cfg.selector));
  write_file(cfg, "trace.csv", [&](std::ostream &o) { io::write_trace_csv(o, res.trace); });
  json j = io::to_json(res);
  j["selector"] = cfg.selector;
  write_json(cfg, "result.json", j);
  std::cout << j.dump() << '\n';
  return exit_for(res.trace.terminated_by);
}

int cmd_solve_decreasing(const RunConfig &cfg) {
  auto named = registry::decreasing_map(cfg.map_name, cfg.c);
  if (!named) throw Error(ErrorCode::invalid_argument, "unknown map '" + cfg.map_name + "'");
  std::size_t dim = named->dimension ? named->dimension : 1;
  if (!cfg.cone.is_null() && named->dimension == 0) dim = cfg.cone.value("dimension", dim);
  auto cone = make_cone(cfg, dim);
  auto res = iterate_decreasing(named->map, cone, cfg.tol, cfg.max_iter, parse_norm(cfg.norm));
  write_file(cfg, "trace.csv", [&](std::ostream &o) { io::write_trace_csv(o, res.trace); });
  json j = io::to_json(res);
  write_json(cfg, "result.json", j);
  std::cout << j.dump() << '\n';
  return exit_for(res.trace.terminated_by);
}

int cmd_solve_integral(const RunConfig &cfg) {
  IntegralProblem problem;
  problem.grid_size = cfg.grid_size;
  problem.quadrature = parse_quadrature(cfg.quadrature);
  bool oracle = true;
  if (auto named = registry::kernel(cfg.kernel)) {
    problem.kernel = named->kernel;
    problem.nu = named->nu;
    problem.M = named->M;
    problem.diagonal_limit = named->diagonal_limit;
    oracle = named->has_oracle;
  } else if (fs::is_regular_file(cfg.kernel)) {
    oracle = false;
    auto in = io::open_input(cfg.kernel);
    problem.kernel = io::read_kernel_csv(in, cfg.kernel);
  } else {
    throw Error(ErrorCode::invalid_argument,
                "kernel '" + cfg.kernel + "' is neither a builtin nor a file");
  }
  if (cfg.nu) problem.nu = *cfg.nu;
  if (cfg.M) problem.M = *cfg.M;

  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.seed = cfg.seed;
  opts.skip_kernel_validation = cfg.override_kernel;
  IntegralSolution sol;
  try {
    sol = solve(problem, opts);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::precondition_failed) {
      std::cerr << "ordfix: " << e.what() << '\n';
      return exit_kernel;
    }
    throw;
  }
  write_file(cfg, "solution.csv", [&](std::ostream &o) { io::write_solution_csv(o, sol); });
  write_file(cfg, "trace.csv", [&](std::ostream &o) { io::write_trace_csv(o, sol.engine.trace); });
  json j = io::summary_json(sol, oracle);
  j["kernel"] = cfg.kernel;
  write_json(cfg, "summary.json", j);
  std::cout << j.dump() << '\n';
  return exit_for(sol.engine.trace.terminated_by);
}

int cmd_analyze_poset(const RunConfig &cfg) {
  std::optional<FiniteSetValuedMap> map;
  if (!cfg.map_file.empty()) {
    auto in = io::open_input(cfg.map_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::parse_error, cfg.map_file + ": " + e.what());
    }
    map = io::read_setvalued_json(j, parse_norm(cfg.norm));
  } else {
    map = registry::setvalued_map(cfg.map_name);
    if (!map) throw Error(ErrorCode::invalid_argument, "unknown map '" + cfg.map_name + "'");
  }
  auto a = enumerate_fixed_points(*map, make_cone(cfg, map->dimension()));
  json j;
  j["fixed_points"] = a.fixed_points;
  j["maximal"] = a.maximal;
  j["minimal"] = a.minimal;
  j["is_nonempty"] = a.is_nonempty;
  write_json(cfg, "analysis.json", j);
  std::cout << j.dump() << '\n';
  return exit_converged;
}

int cmd_check_h1h2(const RunConfig &cfg) {
  std::vector<std::pair<std::string, std::string>> entries;
  if (!cfg.map_file.empty()) {
    auto in = io::open_input(cfg.map_file);
    entries = io::read_labelled_map(in, cfg.map_file);
  } else if (!cfg.image.empty()) {
    std::stringstream ss(cfg.image);
    std::string field;
    std::size_t i = 0;
    while (std::getline(ss, field, ','))
      entries.emplace_back(std::to_string(i++), io::trim(field));
  } else {
    throw Error(ErrorCode::invalid_argument, "check-h1h2 needs --map-file or --image");
  }
  auto lr = check_h2_equivalence(std::span<const std::pair<std::string, std::string>>(entries));
  auto names = [&](const std::vector<std::size_t> &ids) {
    std::vector<std::string> out;
    for (auto i : ids) out.push_back(lr.labels[i]);
    return out;
  };
  json j;
  j["fixed"] = names(lr.report.fixed);
  j["fixed_squared"] = names(lr.report.fixed_squared);
  json cycles = json::array();
  for (auto [a, b] : lr.report.two_cycles) cycles.push_back({lr.labels[a], lr.labels[b]});
  j["two_cycles"] = cycles;
  j["h1_holds"] = lr.report.h1_holds;
  j["h2_holds"] = lr.report.h2_holds;
  j["equivalence_holds"] = lr.report.equivalence_holds;
  write_json(cfg, "h1h2.json", j);
  std::cout << j.dump() << '\n';
  return lr.report.equivalence_holds ? exit_converged : exit_violation;
}

// Values from --config fill every option the command line left unset.
void apply_config(CLI::App &app, RunConfig &cfg) {
  if (cfg.config_path.empty()) return;
  auto in = io::open_input(cfg.config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::parse_error, cfg.config_path + ": " + e.what());
  }
  auto unset = [&](const std::string &flag) {
    for (CLI::App *a : {&app, app.get_subcommands().empty() ? &app : app.get_subcommands()[0]}) {
      try {
        if (a->get_option(flag)->count() > 0) return false;
      } catch (const CLI::OptionNotFound &) {
      }
    }
    return true;
  };
  auto take = [&](const char *key, const std::string &flag, auto &field) {
    if (j.contains(key) && unset(flag)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  try {
    take("tol", "--tol", cfg.tol);
    take("max_iter", "--max-iter", cfg.max_iter);
    take("seed", "--seed", cfg.seed);
    take("out", "--out", cfg.out);
    take("norm", "--norm", cfg.norm);
    take("map", "--map", cfg.map_name);
    take("map_file", "--map-file", cfg.map_file);
    take("x0", "--x0", cfg.x0);
    take("selector", "--selector", cfg.selector);
    take("c", "--c", cfg.c);
    take("kernel", "--kernel", cfg.kernel);
    take("grid_size", "--grid-size", cfg.grid_size);
    take("quadrature", "--quadrature", cfg.quadrature);
    take("override_kernel", "--override-kernel-check", cfg.override_kernel);
    take("image", "--image", cfg.image);
    if (j.contains("nu") && unset("--nu")) cfg.nu = j.at("nu").get<double>();
    if (j.contains("M") && unset("--M")) cfg.M = j.at("M").get<double>();
    if (j.contains("cone")) cfg.cone = j.at("cone");
  } catch (const json::exception &e) {
    throw Error(ErrorCode::parse_error, cfg.config_path + ": " + e.what());
  }
  if (!cfg.map_file.empty() && !fs::is_regular_file(cfg.map_file))
    throw Error(ErrorCode::parse_error, "map file '" + cfg.map_file + "' does not exist");
}

void validate(const RunConfig &cfg) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "--tol must be > 0");
  if (cfg.max_iter < 1) throw Error(ErrorCode::invalid_argument, "--max-iter must be >= 1");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Order-theoretic fixed-point engines on cone-ordered spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--tol", cfg.tol, "Convergence tolerance (absolute)");
  app.add_option("--max-iter", cfg.max_iter, "Iteration cap");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--config", cfg.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--norm", cfg.norm, "sup | euclidean | l1");

  auto *delta_cmd = app.add_subcommand("delta", "delta-distance between two CSV point sets");
  delta_cmd->add_option("set_a", cfg.set_a)->required()->check(CLI::ExistingFile);
  delta_cmd->add_option("set_b", cfg.set_b)->required()->check(CLI::ExistingFile);

  auto *inc = app.add_subcommand("solve-increasing", "monotone iteration of an increasing map");
  auto *setv = app.add_subcommand("solve-setvalued", "monotone iteration of a set-valued map");
  auto *dec = app.add_subcommand("solve-decreasing", "alternating orbit of a decreasing map");
  auto *integ = app.add_subcommand("solve-integral", "singular nonlinear integral equation");
  auto *poset = app.add_subcommand("analyze-poset", "fixed points of a finite set-valued map");
  auto *h1h2 = app.add_subcommand("check-h1h2", "compare Fix(F) and Fix(F o F) on a finite map");

  for (auto *s : {inc, setv, dec, poset}) s->add_option("--map", cfg.map_name, "Builtin map");
  for (auto *s : {setv, poset, h1h2})
    s->add_option("--map-file", cfg.map_file, "Map file")->check(CLI::ExistingFile);
  for (auto *s : {inc, setv}) s->add_option("--x0", cfg.x0, "Start point, comma separated");
  setv->add_option("--selector", cfg.selector,
                   "least_upper_candidate | min_norm_step | lexicographic");
  dec->add_option("--c", cfg.c, "Constant of c_over_1px");
  integ->add_option("--kernel", cfg.kernel, "Builtin kernel name or CSV table");
  integ->add_option("--grid-size", cfg.grid_size, "Grid nodes on [0,1]");
  integ->add_option("--quadrature", cfg.quadrature,
                    "midpoint_diagonal_skip | diagonal_limit_substitution");
  integ->add_option("--nu", cfg.nu, "Growth exponent");
  integ->add_option("--M", cfg.M, "Growth constant");
  integ->add_flag("--override-kernel-check", cfg.override_kernel,
                  "Solve even if the kernel fails validation");
  h1h2->add_option("--image", cfg.image, "Image table F(0),F(1),... over {0..n-1}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  try {
    apply_config(app, cfg);
    validate(cfg);
    if (delta_cmd->parsed()) return cmd_delta(cfg);
    if (inc->parsed()) return cmd_solve_increasing(cfg);
    if (setv->parsed()) return cmd_solve_setvalued(cfg);
    if (dec->parsed()) return cmd_solve_decreasing(cfg);
    if (integ->parsed()) return cmd_solve_integral(cfg);
    if (poset->parsed()) return cmd_analyze_poset(cfg);
    if (h1h2->parsed()) return cmd_check_h1h2(cfg);
  } catch (const Error &e) {
    std::cerr << "ordfix: " << e.what() << '\n';
    switch (e.code()) {
    case ErrorCode::precondition_failed:
    case ErrorCode::cone_exit:
      return exit_violation;
    default:
      return exit_usage;
    }
  } catch (const std::exception &e) {
    std::cerr << "ordfix: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
