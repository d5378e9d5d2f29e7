#pragma once

#include <cstdint>
#include <vector>

#include "ksub/assignment.hpp"
#include "ksub/constraint.hpp"
#include "ksub/graph.hpp"
#include "ksub/objective.hpp"

namespace ksub {

struct GreedyStep {
  int iteration;   // 1-based
  int element;     // e^(j)
  int dimension;   // i^(j), in [1, k]
  double gain;     // marginal gain at selection time
  double value;    // objective value after the step
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
  Assignment solution;
  uint64_t eval_count = 0;  // oracle calls made by the run

  double value() const { return steps.empty() ? 0.0 : steps.back().value; }
};

// Ties between equal gains go to the smallest element id, then the smallest
// dimension id.
enum class TieBreak { smallest_index };

// Greedy under a total-size budget: exactly B iterations, each adding the
// (element, dimension) pair of maximum marginal gain. With lazy=true a
// stale-upper-bound priority queue is used instead of a full scan; the two
// modes provably coincide only when the objective is exactly k-submodular.
GreedyTrace greedy_ts(const Objective& obj, int budget, bool lazy = false,
                      TieBreak tie = TieBreak::smallest_index);

// Greedy under individual caps B_1..B_k: a dimension leaves the candidate set
// once its cap is reached; terminates with |supp_i| = B_i for every i.
GreedyTrace greedy_is(const Objective& obj, const std::vector<int>& caps,
                      bool lazy = false, TieBreak tie = TieBreak::smallest_index);

// Greedy under group caps: all dimensions of a group leave the candidate set
// once the group's total support reaches its cap.
GreedyTrace greedy_group(const Objective& obj,
                         const std::vector<std::vector<int>>& groups,
                         const std::vector<int>& caps, bool lazy = false,
                         TieBreak tie = TieBreak::smallest_index);

// Dispatch on the constraint kind.
GreedyTrace greedy(const Objective& obj, const Constraint& c, bool lazy = false,
                   TieBreak tie = TieBreak::smallest_index);

// Uniformly random feasible assignment saturating the constraint.
Assignment baseline_random(const GroundSet& gs, const Constraint& c,
                           uint64_t seed);

// Top-B nodes by out-degree (ties by node id ascending), each assigned a
// uniformly random dimension. Total-size constraint only.
Assignment baseline_degree(const DirectedGraph& graph, const GroundSet& gs,
                           int budget, uint64_t seed);

}  // namespace ksub
