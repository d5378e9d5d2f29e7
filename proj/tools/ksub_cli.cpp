// Command-line driver: experiment runs, property verification, closed-form
// bounds, exhaustive optimization, and synthetic instance emission.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ksub/bounds.hpp"
#include "ksub/counterexamples.hpp"
#include "ksub/exact.hpp"
#include "ksub/experiment.hpp"
#include "ksub/greedy.hpp"
#include "ksub/noise.hpp"
#include "ksub/objectives/cascade.hpp"
#include "ksub/objectives/coverage.hpp"
#include "ksub/objectives/sensor.hpp"
#include "ksub/rng.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitBudget = 3;

struct ObjectiveFlags {
  std::string kind = "coverage";
  std::string data;
  int n = 6;
  int k = 2;
  uint64_t seed = 1;
  int universe = 12;
  double density = 0.35;
  int records = 120;
  int bins = 5;
  double correlation = 0.7;
  bool log2 = false;
  double edge_density = 0.15;
  int samples = 16;
  double default_edge_prob = 0.1;
};

struct NoiseFlags {
  std::string method;  // empty = no noise
  std::string style = "as";
  double epsilon = 0.3;
  uint64_t seed = 0;
};

struct ConstraintFlags {
  std::string kind = "ts";
  int budget = 2;
  std::vector<int> caps;
  std::string groups;      // "1,2|3"
  std::vector<int> group_caps;
};

void add_objective_flags(CLI::App* cmd, ObjectiveFlags& o) {
  cmd->add_option("--kind", o.kind, "objective family: coverage | sensor | cascade");
  cmd->add_option("--data", o.data, "ingest a sensor CSV / edge list instead of generating");
  cmd->add_option("--n", o.n, "elements (locations / nodes)");
  cmd->add_option("--k", o.k, "dimensions (types / topics)");
  cmd->add_option("--instance-seed", o.seed, "instance generator seed");
  cmd->add_option("--universe", o.universe, "coverage universe size");
  cmd->add_option("--density", o.density, "coverage set density");
  cmd->add_option("--records", o.records, "sensor record count");
  cmd->add_option("--bins", o.bins, "sensor quantization bins");
  cmd->add_option("--correlation", o.correlation, "sensor column correlation");
  cmd->add_flag("--log2", o.log2, "entropy in bits instead of nats");
  cmd->add_option("--edge-density", o.edge_density, "cascade edge density");
  cmd->add_option("--samples", o.samples, "cascade live-edge samples");
  cmd->add_option("--default-edge-prob", o.default_edge_prob,
                  "edge probability when the edge list has none");
}

void add_constraint_flags(CLI::App* cmd, ConstraintFlags& c) {
  cmd->add_option("--constraint", c.kind, "ts | is | group");
  cmd->add_option("--budget", c.budget, "total-size budget B");
  cmd->add_option("--caps", c.caps, "individual caps B_1 ... B_k")->delimiter(',');
  cmd->add_option("--groups", c.groups, "dimension groups, e.g. '1,2|3'");
  cmd->add_option("--group-caps", c.group_caps, "one cap per group")->delimiter(',');
}

void add_noise_flags(CLI::App* cmd, NoiseFlags& nz) {
  cmd->add_option("--noise-method", nz.method, "ag | maxg | meang");
  cmd->add_option("--noise-style", nz.style, "as | adr");
  cmd->add_option("--eps", nz.epsilon, "noise epsilon");
  cmd->add_option("--noise-seed", nz.seed, "noise draw seed");
}

ksub::ExperimentConfig to_config(const ObjectiveFlags& o) {
  ksub::ExperimentConfig cfg;
  cfg.kind = o.kind;
  cfg.data_path = o.data;
  cfg.n = o.n;
  cfg.universe = o.universe;
  cfg.density = o.density;
  cfg.records = o.records;
  cfg.bins = o.bins;
  cfg.correlation = o.correlation;
  cfg.log2 = o.log2;
  cfg.edge_density = o.edge_density;
  cfg.samples = o.samples;
  cfg.default_edge_prob = o.default_edge_prob;
  return cfg;
}

std::shared_ptr<const ksub::Objective> build_objective(const ObjectiveFlags& o) {
  return ksub::build_objective(to_config(o), o.k, o.seed);
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::istringstream in(text);
  std::string grp;
  while (std::getline(in, grp, '|')) {
    std::vector<int> dims;
    std::istringstream gin(grp);
    std::string tok;
    while (std::getline(gin, tok, ',')) dims.push_back(std::stoi(tok));
    groups.push_back(std::move(dims));
  }
  return groups;
}

ksub::Constraint build_constraint(const ConstraintFlags& c, int k) {
  if (c.kind == "ts") return ksub::Constraint::total_size(c.budget);
  if (c.kind == "is") {
    std::vector<int> caps = c.caps;
    if (caps.empty()) caps.assign(static_cast<size_t>(k), 1);
    return ksub::Constraint::individual_size(caps);
  }
  if (c.kind == "group") {
    return ksub::Constraint::group_size(parse_groups(c.groups), c.group_caps);
  }
  throw CLI::ValidationError("--constraint", "must be ts, is, or group");
}

int run_command(const std::string& config_path, const std::string& out_override,
                std::optional<uint64_t> seed_override,
                std::optional<int> threads_override, bool timing,
                bool dump_solutions) {
  ksub::ExperimentConfig cfg = ksub::load_config(config_path);
  if (!out_override.empty()) cfg.out = out_override;
  if (seed_override) cfg.seed = *seed_override;
  if (threads_override) cfg.threads = *threads_override;
  if (timing) cfg.timing = true;
  if (dump_solutions) cfg.dump_solutions = true;

  if (cfg.out.empty()) {
    ksub::run_experiment(cfg, std::cout);
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot open output: " << cfg.out << "\n";
      return kExitFail;
    }
    ksub::run_experiment(cfg, out);
    std::cout << "wrote " << cfg.out << "\n";
  }
  return 0;
}

int verify_command(const ObjectiveFlags& obj_flags, const NoiseFlags& nz,
                   const ConstraintFlags& cns, const std::string& fixture,
                   std::vector<std::string> checks, const std::string& adr_scan,
                   uint64_t budget_override) {
  using namespace ksub;

  EnumerationBudget budget;
  if (budget_override) {
    budget.max_states = budget_override;
    budget.max_n = 64;
    budget.max_k = 64;
  }

  std::shared_ptr<const Objective> base;
  std::shared_ptr<const Objective> target;
  double epsilon = nz.epsilon;

  if (!fixture.empty()) {
    bool found = false;
    for (const Counterexample& ce : all_counterexamples()) {
      if (ce.name == fixture) {
        base = ce.base;
        target = ce.noisy;
        epsilon = ce.epsilon;
        found = true;
        break;
      }
    }
    if (!found) {
      std::cerr << "unknown fixture '" << fixture << "'; available:";
      for (const Counterexample& ce : all_counterexamples()) {
        std::cerr << " " << ce.name;
      }
      std::cerr << "\n";
      return kExitFail;
    }
  } else {
    base = build_objective(obj_flags);
    target = base;
    if (!nz.method.empty()) {
      NoiseSpec spec{parse_noise_method(nz.method), parse_noise_style(nz.style),
                     nz.epsilon, nz.seed};
      Constraint c = build_constraint(cns, obj_flags.k);
      target = make_noisy(spec, base, &c);
    }
  }

  if (checks.empty()) checks = {"k_submodular"};
  AdrScan scan = adr_scan == "chains" ? AdrScan::chains : AdrScan::full;

  bool all_hold = true;
  for (const std::string& check : checks) {
    VerifierReport report;
    if (check == "monotone") {
      report = verify_monotone(*target, budget);
    } else if (check == "orthant") {
      report = verify_orthant_submodular(*target, budget);
    } else if (check == "pairwise") {
      report = verify_pairwise_monotone(*target, budget);
    } else if (check == "k_submodular") {
      report = verify_k_submodular(*target, budget);
    } else if (check == "as_envelope") {
      report = verify_as_envelope(*target, *base, epsilon, budget);
    } else if (check == "adr_envelope") {
      report = verify_adr_envelope(*target, *base, epsilon, scan, budget);
    } else if (check == "min_eps") {
      double tight = min_epsilon_as(*target, *base, budget);
      std::cout << "min_epsilon_as: " << tight << "\n";
      continue;
    } else {
      std::cerr << "unknown check '" << check << "'\n";
      return kExitFail;
    }
    std::cout << to_string(report) << "\n";
    all_hold = all_hold && report.holds;
  }
  return all_hold ? 0 : kExitFail;
}

int bound_command(const std::string& regime, const std::string& constraint,
                  const std::string& cls, const std::string& source, double eps,
                  int budget) {
  ksub::BoundQuery q;
  q.k_regime = regime == "k1" ? ksub::KRegime::k1 : ksub::KRegime::k_ge2;
  q.constraint = constraint == "is" ? ksub::BoundConstraint::is
                                    : ksub::BoundConstraint::ts;
  q.function_class = cls == "adr" ? ksub::FunctionClass::adr
                                  : ksub::FunctionClass::as;
  q.source = source == "f" ? ksub::SolutionSource::on_base
                           : ksub::SolutionSource::on_noisy;
  q.epsilon = eps;
  q.budget = budget;

  ksub::BoundResult r = ksub::ratio(q);
  char buf[64];
  snprintf(buf, sizeof(buf), "%.9g", r.value);
  std::cout << "ratio = " << buf << "  [" << r.formula << "]"
            << (r.via_as_reduction ? " (via value-envelope reduction)" : "")
            << "  (regime=" << regime << ", constraint=" << constraint
            << ", class=" << cls << ", solution=" << source << ", eps=" << eps
            << ", B=" << budget << ")\n";
  return 0;
}

int exact_command(const ObjectiveFlags& obj_flags, const NoiseFlags& nz,
                  const ConstraintFlags& cns, bool with_greedy, bool lazy,
                  uint64_t budget_override) {
  using namespace ksub;

  EnumerationBudget budget;
  if (budget_override) {
    budget.max_states = budget_override;
    budget.max_n = 64;
    budget.max_k = 64;
  }

  std::shared_ptr<const Objective> base = build_objective(obj_flags);
  std::shared_ptr<const Objective> target = base;
  Constraint c = build_constraint(cns, obj_flags.k);
  if (!nz.method.empty()) {
    NoiseSpec spec{parse_noise_method(nz.method), parse_noise_style(nz.style),
                   nz.epsilon, nz.seed};
    target = make_noisy(spec, base, &c);
  }

  auto [opt, opt_value] = brute_force_max(*target, c, budget);
  char buf[64];
  snprintf(buf, sizeof(buf), "%.9g", opt_value);
  std::cout << "optimum " << opt.to_string() << "\n";
  std::cout << "optimal value " << buf << "\n";

  if (!with_greedy) return 0;

  GreedyTrace trace = greedy(*target, c, lazy);
  double observed = opt_value > 0.0 ? trace.value() / opt_value : 1.0;

  BoundQuery q;
  q.k_regime = obj_flags.k == 1 ? KRegime::k1 : KRegime::k_ge2;
  // Group caps carry the individual-size guarantee.
  q.constraint = c.kind() == Constraint::Kind::total_size ? BoundConstraint::ts
                                                          : BoundConstraint::is;
  q.function_class = (!nz.method.empty() && parse_noise_style(nz.style) ==
                                                NoiseStyle::adr)
                         ? FunctionClass::adr
                         : FunctionClass::as;
  q.source = SolutionSource::on_noisy;
  q.epsilon = nz.method.empty() ? 0.0 : nz.epsilon;
  q.budget = c.total_budget();
  BoundResult bound = ratio(q);

  bool pass = trace.value() >= bound.value * opt_value -
                                   1e-9 * std::max(1.0, std::abs(opt_value));
  snprintf(buf, sizeof(buf), "%.9g", trace.value());
  std::cout << "greedy value " << buf << " at " << trace.solution.to_string()
            << " (" << trace.eval_count << " evals)\n";
  snprintf(buf, sizeof(buf), "%.9g", observed);
  std::cout << "observed ratio " << buf;
  snprintf(buf, sizeof(buf), "%.9g", bound.value);
  std::cout << ", bound " << buf << " [" << bound.formula << "]: "
            << (pass ? "PASS" : "FAIL") << " (margin "
            << observed - bound.value << ")\n";
  return pass ? 0 : kExitFail;
}

int gen_command(const ObjectiveFlags& o, const std::string& out_path) {
  using namespace ksub;
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output: " << out_path << "\n";
    return kExitFail;
  }
  if (o.kind == "sensor") {
    SensorLog log = gen_sensor_log(o.n, o.k, o.records, o.bins, o.correlation,
                                   o.seed);
    write_sensor_csv(log, out);
  } else if (o.kind == "cascade") {
    CascadeModel model = gen_cascade(o.n, o.k, o.edge_density, o.samples, o.seed);
    write_edge_list(model, out);
  } else {
    std::cerr << "gen supports kind = sensor or cascade\n";
    return kExitFail;
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-submodular maximization toolkit: greedy algorithms, noisy "
               "oracles, exhaustive verification, and closed-form bounds"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "execute an experiment config, emit CSV");
  std::string config_path;
  std::string out_override;
  std::optional<uint64_t> seed_override;
  std::optional<int> threads_override;
  bool timing = false;
  bool dump_solutions = false;
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_override, "output CSV path (overrides config)");
  run->add_option("--seed", seed_override, "base seed (overrides config)");
  run->add_option("--threads", threads_override, "parallel sweep points");
  run->add_flag("--timing", timing, "add a wall_ms column (non-reproducible)");
  run->add_flag("--dump-solutions", dump_solutions, "add a solution column");

  // verify
  auto* verify = app.add_subcommand("verify", "exhaustive property checks");
  ObjectiveFlags v_obj;
  NoiseFlags v_noise;
  ConstraintFlags v_cns;
  std::string fixture;
  std::vector<std::string> checks;
  std::string adr_scan = "full";
  uint64_t v_budget = 0;
  add_objective_flags(verify, v_obj);
  add_noise_flags(verify, v_noise);
  add_constraint_flags(verify, v_cns);
  verify->add_option("--fixture", fixture, "built-in counterexample instance");
  verify->add_option("--check", checks,
                     "monotone | orthant | pairwise | k_submodular | "
                     "as_envelope | adr_envelope | min_eps")
      ->delimiter(',');
  verify->add_option("--adr-scan", adr_scan, "full | chains");
  verify->add_option("--budget-override", v_budget, "enumeration state cap");

  // bound
  auto* bound = app.add_subcommand("bound", "closed-form approximation ratio");
  std::string b_regime = "kge2", b_constraint = "ts", b_class = "as",
              b_source = "F";
  double b_eps = 0.0;
  int b_budget = 1;
  bound->add_option("--k-regime", b_regime, "k1 | kge2");
  bound->add_option("--constraint", b_constraint, "ts | is");
  bound->add_option("--class", b_class, "as | adr");
  bound->add_option("--source", b_source, "F | f (which function greedy ran on)");
  bound->add_option("--eps", b_eps, "epsilon");
  bound->add_option("--budget", b_budget, "total budget B");

  // exact
  auto* exact = app.add_subcommand("exact", "brute-force optimum, optionally "
                                            "compared against greedy");
  ObjectiveFlags e_obj;
  NoiseFlags e_noise;
  ConstraintFlags e_cns;
  bool with_greedy = false;
  bool e_lazy = false;
  uint64_t e_budget = 0;
  add_objective_flags(exact, e_obj);
  add_noise_flags(exact, e_noise);
  add_constraint_flags(exact, e_cns);
  exact->add_flag("--with-greedy", with_greedy,
                  "also run greedy and report ratio vs bound");
  exact->add_flag("--lazy", e_lazy, "lazy greedy");
  exact->add_option("--budget-override", e_budget, "enumeration state cap");

  // gen
  auto* gen = app.add_subcommand("gen", "emit a synthetic instance file");
  ObjectiveFlags g_obj;
  std::string g_out;
  add_objective_flags(gen, g_obj);
  gen->add_option("--out", g_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(config_path, out_override, seed_override,
                         threads_override, timing, dump_solutions);
    }
    if (verify->parsed()) {
      return verify_command(v_obj, v_noise, v_cns, fixture, checks, adr_scan,
                            v_budget);
    }
    if (bound->parsed()) {
      return bound_command(b_regime, b_constraint, b_class, b_source, b_eps,
                           b_budget);
    }
    if (exact->parsed()) {
      return exact_command(e_obj, e_noise, e_cns, with_greedy, e_lazy, e_budget);
    }
    if (gen->parsed()) {
      return gen_command(g_obj, g_out);
    }
  } catch (const ksub::BudgetExceededError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
