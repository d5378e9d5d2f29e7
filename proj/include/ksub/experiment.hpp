#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ksub/constraint.hpp"
#include "ksub/noise.hpp"
#include "ksub/objective.hpp"

namespace ksub {

// Flat key = value experiment description; see README for the key list.
struct ExperimentConfig {
  // objective
  std::string kind;       // coverage | sensor | cascade
  std::string data_path;  // optional ingestion source
  int n = 20;
  int universe = 40;        // coverage
  double density = 0.35;    // coverage
  int records = 200;        // sensor
  int bins = 5;             // sensor
  double correlation = 0.7; // sensor
  bool log2 = false;        // sensor: entropy base
  double edge_density = 0.1;      // cascade
  int samples = 32;               // cascade live-edge samples
  double default_edge_prob = 0.1; // cascade ingestion fallback

  // constraint
  std::string constraint = "ts";  // ts | is | group
  std::vector<std::vector<int>> groups;
  std::vector<int> group_caps;

  // sweeps
  std::vector<int> k_list{1};
  std::vector<double> epsilon_list{0.3};
  std::vector<int> b_list{3};

  // noise
  std::string noise_method = "meang";  // ag | maxg | meang
  std::string noise_style = "as";      // as | adr

  // run
  std::vector<std::string> algorithms{"greedy_F", "greedy_f", "random"};
  int repetitions = 1;
  uint64_t seed = 0;
  bool lazy = false;
  int threads = 1;
  std::string out;
  bool dump_solutions = false;
  bool timing = false;

  void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
ExperimentConfig load_config(const std::string& path);

NoiseMethod parse_noise_method(const std::string& s);
NoiseStyle parse_noise_style(const std::string& s);

// Instance factory shared by the runner and the CLI one-off commands.
// For sensors the generated/ingested table is cut down to the first k types;
// for cascades and coverage the instance is built for k directly.
std::shared_ptr<const Objective> build_objective(const ExperimentConfig& cfg,
                                                 int k, uint64_t instance_seed);

Constraint build_constraint(const ExperimentConfig& cfg, int k, int b);

// Executes the sweep-by-repetition grid and writes the frozen CSV schema:
//   kind,constraint,method,style,k,epsilon,b,algorithm,rep,agg,
//   F_value,f_value,eval_count,error[,wall_ms][,solution]
// Raw rows carry agg="", aggregate rows carry agg=mean|std (population
// standard deviation). Output is byte-identical for identical (config, seed)
// unless timing is enabled.
void run_experiment(const ExperimentConfig& cfg, std::ostream& out);

std::string run_experiment_to_string(const ExperimentConfig& cfg);

}  // namespace ksub
