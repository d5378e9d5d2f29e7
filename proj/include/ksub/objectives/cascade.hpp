#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ksub/bits.hpp"
#include "ksub/graph.hpp"
#include "ksub/objective.hpp"

namespace ksub {

// Independent-cascade influence model with k topics. Edge (u, v) transmits
// topic i with probability probs[edge][i-1]. The expected spread is estimated
// on `samples` live-edge graphs fixed at construction (common random
// numbers), which makes the objective an exact k-coverage function.
struct CascadeModel {
  DirectedGraph graph;
  int topics = 1;
  std::vector<std::vector<double>> edge_probs;  // per edge, per topic
  int samples = 1;
  uint64_t sample_seed = 0;
};

class SpreadObjective final : public Objective {
 public:
  explicit SpreadObjective(CascadeModel model);

  std::string name() const override { return "spread"; }
  bool claims_exact_ksubmodular() const override { return true; }

  const CascadeModel& model() const { return model_; }

 protected:
  double value_of(const Assignment& x) const override;

 private:
  CascadeModel model_;
  // reach_[r][i-1][node]: forward-reachable set of `node` in the r-th
  // live-edge sample of topic i.
  std::vector<std::vector<std::vector<Bits>>> reach_;
};

double spread_eval(const CascadeModel& model, const Assignment& x);

// Random digraph with iid edges and per-topic probabilities drawn uniformly
// on a small grid in [p_lo, p_hi].
CascadeModel gen_cascade(int nodes, int topics, double edge_density,
                         int samples, uint64_t seed, double p_lo = 0.05,
                         double p_hi = 0.4);

std::shared_ptr<SpreadObjective> gen_cascade_objective(int nodes, int topics,
                                                       double edge_density,
                                                       int samples,
                                                       uint64_t seed);

// Edge-list format: one edge per line, "src dst [p_1 ... p_k]", whitespace
// separated. Lines without probabilities use `default_prob` for every topic.
void write_edge_list(const CascadeModel& model, std::ostream& out);
CascadeModel read_edge_list(std::istream& in, int topics, int samples,
                            uint64_t sample_seed, double default_prob);
CascadeModel load_edge_list(const std::string& path, int topics, int samples,
                            uint64_t sample_seed, double default_prob = 0.1);

}  // namespace ksub
