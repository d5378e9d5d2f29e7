#include "ksub/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ksub/greedy.hpp"
#include "ksub/objectives/cascade.hpp"
#include "ksub/objectives/coverage.hpp"
#include "ksub/objectives/sensor.hpp"
#include "ksub/rng.hpp"

namespace ksub {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int to_int(const std::string& s, const std::string& key) {
  long v;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), v);
  if (ec != std::errc() || p != b + s.size()) {
    throw std::invalid_argument("config key '" + key + "': not an integer: " + s);
  }
  return static_cast<int>(v);
}

uint64_t to_u64(const std::string& s, const std::string& key) {
  uint64_t v;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), v);
  if (ec != std::errc() || p != b + s.size()) {
    throw std::invalid_argument("config key '" + key + "': not an integer: " + s);
  }
  return v;
}

double to_double(const std::string& s, const std::string& key) {
  double v;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), v);
  if (ec != std::errc() || p != b + s.size()) {
    throw std::invalid_argument("config key '" + key + "': not a number: " + s);
  }
  return v;
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: " + s);
}

std::string fmt(double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct Measurement {
  double F_value = 0.0;
  double f_value = 0.0;
  double eval_count = 0.0;
  double wall_ms = 0.0;
  std::string solution;
};

struct SweepPoint {
  int k;
  double epsilon;
  int b;
};

// All rows of one sweep point, keyed by algorithm; empty on constraint error.
struct SweepResult {
  std::vector<std::vector<Measurement>> per_algorithm;  // [alg][rep]
  std::string error;
};

std::string dump_labels(const Assignment& x) {
  std::string s;
  for (int e = 0; e < x.n(); ++e) {
    if (e) s += ";";
    s += std::to_string(x.label(e));
  }
  return s;
}

SweepResult run_sweep_point(const ExperimentConfig& cfg, const SweepPoint& pt) {
  SweepResult result;
  uint64_t instance_seed =
      derive_seed(cfg.seed, "instance", static_cast<uint64_t>(pt.k));

  std::shared_ptr<const Objective> f;
  Constraint c = build_constraint(cfg, pt.k, pt.b);
  try {
    f = build_objective(cfg, pt.k, instance_seed);
    c.validate(f->ground_set());
  } catch (const std::exception& ex) {
    result.error = ex.what();
    return result;
  }

  const DirectedGraph* graph = nullptr;
  if (auto spread = dynamic_cast<const SpreadObjective*>(f.get())) {
    graph = &spread->model().graph;
  }

  NoiseMethod method = parse_noise_method(cfg.noise_method);
  NoiseStyle style = parse_noise_style(cfg.noise_style);

  result.per_algorithm.resize(cfg.algorithms.size());
  for (auto& reps : result.per_algorithm) {
    reps.resize(static_cast<size_t>(cfg.repetitions));
  }

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    uint64_t rep_seed = cfg.seed + static_cast<uint64_t>(rep);
    NoiseSpec spec{method, style, pt.epsilon, derive_seed(rep_seed, "noise")};
    std::shared_ptr<const Objective> F = make_noisy(spec, f, &c);

    for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const std::string& alg = cfg.algorithms[a];
      Measurement m;
      auto t0 = std::chrono::steady_clock::now();
      Assignment solution(f->ground_set());
      if (alg == "greedy_F") {
        GreedyTrace trace = greedy(*F, c, cfg.lazy);
        solution = trace.solution;
        m.F_value = trace.value();
        m.f_value = f->eval(solution);
        m.eval_count = static_cast<double>(trace.eval_count);
      } else if (alg == "greedy_f") {
        GreedyTrace trace = greedy(*f, c, cfg.lazy);
        solution = trace.solution;
        m.f_value = trace.value();
        m.F_value = F->eval(solution);
        m.eval_count = static_cast<double>(trace.eval_count);
      } else if (alg == "random") {
        solution = baseline_random(f->ground_set(), c,
                                   derive_seed(rep_seed, "random"));
        m.F_value = F->eval(solution);
        m.f_value = f->eval(solution);
      } else if (alg == "degree") {
        if (graph == nullptr) {
          throw std::invalid_argument(
              "degree baseline needs a cascade objective");
        }
        if (c.kind() != Constraint::Kind::total_size) {
          throw std::invalid_argument(
              "degree baseline supports the total-size constraint only");
        }
        solution = baseline_degree(*graph, f->ground_set(), c.budget(),
                                   derive_seed(rep_seed, "degree"));
        m.F_value = F->eval(solution);
        m.f_value = f->eval(solution);
      } else {
        throw std::invalid_argument("unknown algorithm: " + alg);
      }
      auto t1 = std::chrono::steady_clock::now();
      m.wall_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      if (cfg.dump_solutions) m.solution = dump_labels(solution);
      result.per_algorithm[a][static_cast<size_t>(rep)] = std::move(m);
    }
  }
  return result;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (kind != "coverage" && kind != "sensor" && kind != "cascade") {
    throw std::invalid_argument("config kind must be coverage, sensor, or cascade");
  }
  if (constraint != "ts" && constraint != "is" && constraint != "group") {
    throw std::invalid_argument("config constraint must be ts, is, or group");
  }
  if (constraint == "group" && (groups.empty() || group_caps.empty())) {
    throw std::invalid_argument("group constraint needs groups and group_caps");
  }
  if (k_list.empty() || epsilon_list.empty() || b_list.empty()) {
    throw std::invalid_argument("sweep lists must be nonempty");
  }
  for (double e : epsilon_list) {
    if (e < 0.0 || e > 1.0) {
      throw std::invalid_argument("epsilon sweep values must lie in [0, 1]");
    }
  }
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  if (algorithms.empty()) {
    throw std::invalid_argument("algorithm list must be nonempty");
  }
  for (const std::string& alg : algorithms) {
    if (alg != "greedy_F" && alg != "greedy_f" && alg != "random" &&
        alg != "degree") {
      throw std::invalid_argument("unknown algorithm: " + alg);
    }
    if (alg == "degree" && (kind != "cascade" || constraint != "ts")) {
      throw std::invalid_argument(
          "degree baseline needs kind = cascade and constraint = ts");
    }
  }
  if (threads < 1) {
    throw std::invalid_argument("threads must be >= 1");
  }
  parse_noise_method(noise_method);
  parse_noise_style(noise_style);
}

NoiseMethod parse_noise_method(const std::string& s) {
  if (s == "ag") return NoiseMethod::ag;
  if (s == "maxg") return NoiseMethod::maxg;
  if (s == "meang") return NoiseMethod::meang;
  throw std::invalid_argument("noise method must be ag, maxg, or meang: " + s);
}

NoiseStyle parse_noise_style(const std::string& s) {
  if (s == "as") return NoiseStyle::as;
  if (s == "adr") return NoiseStyle::adr;
  throw std::invalid_argument("noise style must be as or adr: " + s);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key == "kind") cfg.kind = value;
    else if (key == "data") cfg.data_path = value;
    else if (key == "n") cfg.n = to_int(value, key);
    else if (key == "universe") cfg.universe = to_int(value, key);
    else if (key == "density") cfg.density = to_double(value, key);
    else if (key == "records") cfg.records = to_int(value, key);
    else if (key == "bins") cfg.bins = to_int(value, key);
    else if (key == "correlation") cfg.correlation = to_double(value, key);
    else if (key == "log2") cfg.log2 = to_bool(value, key);
    else if (key == "edge_density") cfg.edge_density = to_double(value, key);
    else if (key == "samples") cfg.samples = to_int(value, key);
    else if (key == "default_edge_prob") cfg.default_edge_prob = to_double(value, key);
    else if (key == "constraint") cfg.constraint = value;
    else if (key == "groups") {
      cfg.groups.clear();
      for (const std::string& grp : split(value, '|')) {
        std::vector<int> dims;
        for (const std::string& d : split(grp, ',')) dims.push_back(to_int(d, key));
        cfg.groups.push_back(std::move(dims));
      }
    } else if (key == "group_caps") {
      cfg.group_caps.clear();
      for (const std::string& v : split(value, ',')) {
        cfg.group_caps.push_back(to_int(v, key));
      }
    } else if (key == "k") {
      cfg.k_list.clear();
      for (const std::string& v : split(value, ',')) {
        cfg.k_list.push_back(to_int(v, key));
      }
    } else if (key == "epsilon") {
      cfg.epsilon_list.clear();
      for (const std::string& v : split(value, ',')) {
        cfg.epsilon_list.push_back(to_double(v, key));
      }
    } else if (key == "b") {
      cfg.b_list.clear();
      for (const std::string& v : split(value, ',')) {
        cfg.b_list.push_back(to_int(v, key));
      }
    } else if (key == "noise_method") cfg.noise_method = value;
    else if (key == "noise_style") cfg.noise_style = value;
    else if (key == "algorithms") cfg.algorithms = split(value, ',');
    else if (key == "repetitions") cfg.repetitions = to_int(value, key);
    else if (key == "seed") cfg.seed = to_u64(value, key);
    else if (key == "lazy") cfg.lazy = to_bool(value, key);
    else if (key == "threads") cfg.threads = to_int(value, key);
    else if (key == "out") cfg.out = value;
    else if (key == "dump_solutions") cfg.dump_solutions = to_bool(value, key);
    else if (key == "timing") cfg.timing = to_bool(value, key);
    else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  return parse_config(in);
}

std::shared_ptr<const Objective> build_objective(const ExperimentConfig& cfg,
                                                 int k, uint64_t instance_seed) {
  if (cfg.kind == "coverage") {
    return gen_coverage_objective(cfg.n, k, cfg.universe, instance_seed,
                                  cfg.density);
  }
  if (cfg.kind == "sensor") {
    SensorModel model;
    if (!cfg.data_path.empty()) {
      model = load_sensor_csv(cfg.data_path, cfg.bins);
      if (model.types < k) {
        throw std::invalid_argument("sensor data has fewer types than k");
      }
      // Keep the first k sensor types, matching the sweep convention.
      model.types = k;
      size_t cols = static_cast<size_t>(k) * static_cast<size_t>(model.locations);
      for (auto& row : model.records) row.resize(cols);
      model.domain_sizes.resize(cols);
    } else {
      model = gen_sensor(cfg.n, k, cfg.records, cfg.bins, instance_seed,
                         cfg.correlation);
    }
    return std::make_shared<EntropyObjective>(std::move(model), cfg.log2);
  }
  if (cfg.kind == "cascade") {
    if (!cfg.data_path.empty()) {
      CascadeModel model =
          load_edge_list(cfg.data_path, k, cfg.samples,
                         derive_seed(instance_seed, "live-edges"),
                         cfg.default_edge_prob);
      return std::make_shared<SpreadObjective>(std::move(model));
    }
    return gen_cascade_objective(cfg.n, k, cfg.edge_density, cfg.samples,
                                 instance_seed);
  }
  throw std::invalid_argument("unknown objective kind: " + cfg.kind);
}

Constraint build_constraint(const ExperimentConfig& cfg, int k, int b) {
  if (cfg.constraint == "ts") return Constraint::total_size(b);
  if (cfg.constraint == "is") {
    return Constraint::individual_size(std::vector<int>(static_cast<size_t>(k), b));
  }
  return Constraint::group_size(cfg.groups, cfg.group_caps);
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();

  std::vector<SweepPoint> points;
  for (int k : cfg.k_list) {
    for (double eps : cfg.epsilon_list) {
      for (int b : cfg.b_list) points.push_back({k, eps, b});
    }
  }

  std::vector<SweepResult> results(points.size());
  if (cfg.threads <= 1) {
    for (size_t p = 0; p < points.size(); ++p) {
      results[p] = run_sweep_point(cfg, points[p]);
    }
  } else {
    // Sweep points run in parallel; rows are emitted in sweep order below,
    // so scheduling cannot affect the output.
    size_t next = 0;
    while (next < points.size()) {
      size_t batch = std::min(static_cast<size_t>(cfg.threads),
                              points.size() - next);
      std::vector<std::future<SweepResult>> futures;
      for (size_t i = 0; i < batch; ++i) {
        size_t p = next + i;
        futures.push_back(std::async(std::launch::async, [&cfg, &points, p] {
          return run_sweep_point(cfg, points[p]);
        }));
      }
      for (size_t i = 0; i < batch; ++i) {
        results[next + i] = futures[i].get();
      }
      next += batch;
    }
  }

  out << "kind,constraint,method,style,k,epsilon,b,algorithm,rep,agg,"
         "F_value,f_value,eval_count,error";
  if (cfg.timing) out << ",wall_ms";
  if (cfg.dump_solutions) out << ",solution";
  out << "\n";

  auto prefix = [&](const SweepPoint& pt) {
    std::ostringstream row;
    row << cfg.kind << "," << cfg.constraint << "," << cfg.noise_method << ","
        << cfg.noise_style << "," << pt.k << "," << fmt(pt.epsilon) << ","
        << pt.b << ",";
    return row.str();
  };

  for (size_t p = 0; p < points.size(); ++p) {
    const SweepPoint& pt = points[p];
    const SweepResult& res = results[p];
    if (!res.error.empty()) {
      std::string safe = res.error;
      for (char& c : safe) {
        if (c == ',' || c == '\n') c = ';';
      }
      for (const std::string& alg : cfg.algorithms) {
        out << prefix(pt) << alg << ",,,,,," << safe;
        if (cfg.timing) out << ",";
        if (cfg.dump_solutions) out << ",";
        out << "\n";
      }
      continue;
    }
    for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto& reps = res.per_algorithm[a];
      for (size_t r = 0; r < reps.size(); ++r) {
        const Measurement& m = reps[r];
        out << prefix(pt) << cfg.algorithms[a] << "," << r << ",,"
            << fmt(m.F_value) << "," << fmt(m.f_value) << ","
            << static_cast<long>(m.eval_count) << ",";
        if (cfg.timing) out << "," << fmt(m.wall_ms);
        if (cfg.dump_solutions) out << "," << m.solution;
        out << "\n";
      }
      // mean / population std over repetitions
      auto stat = [&](auto pick) {
        double mean = 0.0;
        for (const Measurement& m : reps) mean += pick(m);
        mean /= static_cast<double>(reps.size());
        double var = 0.0;
        for (const Measurement& m : reps) {
          double d = pick(m) - mean;
          var += d * d;
        }
        var /= static_cast<double>(reps.size());
        return std::pair<double, double>{mean, std::sqrt(var)};
      };
      auto [f_mean, f_std] = stat([](const Measurement& m) { return m.F_value; });
      auto [g_mean, g_std] = stat([](const Measurement& m) { return m.f_value; });
      auto [e_mean, e_std] = stat([](const Measurement& m) { return m.eval_count; });
      auto [w_mean, w_std] = stat([](const Measurement& m) { return m.wall_ms; });
      out << prefix(pt) << cfg.algorithms[a] << ",,mean," << fmt(f_mean) << ","
          << fmt(g_mean) << "," << fmt(e_mean) << ",";
      if (cfg.timing) out << "," << fmt(w_mean);
      if (cfg.dump_solutions) out << ",";
      out << "\n";
      out << prefix(pt) << cfg.algorithms[a] << ",,std," << fmt(f_std) << ","
          << fmt(g_std) << "," << fmt(e_std) << ",";
      if (cfg.timing) out << "," << fmt(w_std);
      if (cfg.dump_solutions) out << ",";
      out << "\n";
    }
  }
}

std::string run_experiment_to_string(const ExperimentConfig& cfg) {
  std::ostringstream out;
  run_experiment(cfg, out);
  return out.str();
}

}  // namespace ksub
