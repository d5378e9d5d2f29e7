#include "ksub/greedy.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "ksub/rng.hpp"

namespace ksub {

namespace {

// Tracks which dimensions can still take elements under the active constraint.
class DimensionBudget {
 public:
  DimensionBudget(const Constraint& c, const GroundSet& gs)
      : constraint_(&c), counts_(static_cast<size_t>(gs.k), 0) {
    if (c.kind() == Constraint::Kind::group_size) {
      group_used_.assign(c.groups().size(), 0);
      group_of_.resize(static_cast<size_t>(gs.k));
      for (int d = 1; d <= gs.k; ++d) {
        group_of_[static_cast<size_t>(d - 1)] = c.group_of(d);
      }
    }
    total_iterations_ = (c.kind() == Constraint::Kind::total_size)
                            ? c.budget()
                            : c.total_budget();
  }

  int total_iterations() const { return total_iterations_; }

  bool active(int dim) const {
    switch (constraint_->kind()) {
      case Constraint::Kind::total_size:
        return total_ < constraint_->budget();
      case Constraint::Kind::individual_size:
        return counts_[static_cast<size_t>(dim - 1)] <
               constraint_->caps()[static_cast<size_t>(dim - 1)];
      case Constraint::Kind::group_size: {
        int g = group_of_[static_cast<size_t>(dim - 1)];
        return group_used_[static_cast<size_t>(g)] <
               constraint_->caps()[static_cast<size_t>(g)];
      }
    }
    return false;
  }

  void add(int dim) {
    ++total_;
    ++counts_[static_cast<size_t>(dim - 1)];
    if (constraint_->kind() == Constraint::Kind::group_size) {
      ++group_used_[static_cast<size_t>(group_of_[static_cast<size_t>(dim - 1)])];
    }
  }

 private:
  const Constraint* constraint_;
  std::vector<int> counts_;
  std::vector<int> group_used_;
  std::vector<int> group_of_;
  int total_ = 0;
  int total_iterations_ = 0;
};

struct Candidate {
  double gain = -std::numeric_limits<double>::infinity();
  double value = 0.0;
  int element = -1;
  int dimension = 0;
};

// Stale-upper-bound entry for the lazy queue.
struct LazyEntry {
  double bound;
  double value;  // objective value behind the bound (valid when fresh)
  int element;
  int dimension;
  int stamp;  // iteration at which the bound was computed; 0 = never
};

// Max-heap on bound; equal bounds pop in (element, dimension) ascending order
// so lazy selection applies the same tie-break as the exhaustive scan.
struct LazyEntryLess {
  bool operator()(const LazyEntry& a, const LazyEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.element != b.element) return a.element > b.element;
    return a.dimension > b.dimension;
  }
};

GreedyTrace run_eager(const Objective& obj, const Constraint& c) {
  const GroundSet& gs = obj.ground_set();
  DimensionBudget budget(c, gs);
  Assignment x(gs);
  uint64_t evals = 0;

  double base = obj.eval(x);
  ++evals;

  GreedyTrace trace{{}, x, 0};
  int iterations = budget.total_iterations();
  trace.steps.reserve(static_cast<size_t>(iterations));

  for (int j = 1; j <= iterations; ++j) {
    Candidate best;
    for (int e = 0; e < gs.n; ++e) {
      if (x.label(e) != 0) continue;
      for (int i = 1; i <= gs.k; ++i) {
        if (!budget.active(i)) continue;
        x.set(e, i);
        double v = obj.eval(x);
        ++evals;
        x.set(e, 0);
        double g = v - base;
        if (g > best.gain) best = {g, v, e, i};
      }
    }
    if (best.element < 0) {
      throw std::logic_error("greedy ran out of candidates");
    }
    x.set(best.element, best.dimension);
    budget.add(best.dimension);
    trace.steps.push_back({j, best.element, best.dimension, best.gain, best.value});
    base = best.value;
  }

  trace.solution = x;
  trace.eval_count = evals;
  return trace;
}

GreedyTrace run_lazy(const Objective& obj, const Constraint& c) {
  const GroundSet& gs = obj.ground_set();
  DimensionBudget budget(c, gs);
  Assignment x(gs);
  uint64_t evals = 0;

  double base = obj.eval(x);
  ++evals;

  std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyEntryLess> queue;
  for (int e = 0; e < gs.n; ++e) {
    for (int i = 1; i <= gs.k; ++i) {
      queue.push({std::numeric_limits<double>::infinity(), 0.0, e, i, 0});
    }
  }

  GreedyTrace trace{{}, x, 0};
  int iterations = budget.total_iterations();
  trace.steps.reserve(static_cast<size_t>(iterations));

  for (int j = 1; j <= iterations; ++j) {
    LazyEntry chosen{};
    for (;;) {
      if (queue.empty()) throw std::logic_error("lazy greedy queue exhausted");
      LazyEntry top = queue.top();
      queue.pop();
      if (x.label(top.element) != 0) continue;
      if (!budget.active(top.dimension)) continue;
      if (top.stamp == j) {
        chosen = top;
        break;
      }
      x.set(top.element, top.dimension);
      double v = obj.eval(x);
      ++evals;
      x.set(top.element, 0);
      queue.push({v - base, v, top.element, top.dimension, j});
    }
    x.set(chosen.element, chosen.dimension);
    budget.add(chosen.dimension);
    trace.steps.push_back({j, chosen.element, chosen.dimension, chosen.bound,
                           chosen.value});
    base = chosen.value;
  }

  trace.solution = x;
  trace.eval_count = evals;
  return trace;
}

}  // namespace

GreedyTrace greedy(const Objective& obj, const Constraint& c, bool lazy,
                   TieBreak) {
  c.validate(obj.ground_set());
  return lazy ? run_lazy(obj, c) : run_eager(obj, c);
}

GreedyTrace greedy_ts(const Objective& obj, int budget, bool lazy, TieBreak tie) {
  return greedy(obj, Constraint::total_size(budget), lazy, tie);
}

GreedyTrace greedy_is(const Objective& obj, const std::vector<int>& caps,
                      bool lazy, TieBreak tie) {
  return greedy(obj, Constraint::individual_size(caps), lazy, tie);
}

GreedyTrace greedy_group(const Objective& obj,
                         const std::vector<std::vector<int>>& groups,
                         const std::vector<int>& caps, bool lazy, TieBreak tie) {
  return greedy(obj, Constraint::group_size(groups, caps), lazy, tie);
}

Assignment baseline_random(const GroundSet& gs, const Constraint& c,
                           uint64_t seed) {
  c.validate(gs);
  Rng rng(seed);

  std::vector<int> perm(static_cast<size_t>(gs.n));
  for (int e = 0; e < gs.n; ++e) perm[static_cast<size_t>(e)] = e;
  rng.shuffle(perm);

  Assignment x(gs);
  size_t next = 0;
  switch (c.kind()) {
    case Constraint::Kind::total_size:
      for (int t = 0; t < c.budget(); ++t) {
        x.set(perm[next++], rng.next_int(1, gs.k));
      }
      break;
    case Constraint::Kind::individual_size:
      for (int i = 1; i <= gs.k; ++i) {
        for (int t = 0; t < c.caps()[static_cast<size_t>(i - 1)]; ++t) {
          x.set(perm[next++], i);
        }
      }
      break;
    case Constraint::Kind::group_size:
      for (size_t g = 0; g < c.groups().size(); ++g) {
        const auto& dims = c.groups()[g];
        for (int t = 0; t < c.caps()[g]; ++t) {
          int d = dims[static_cast<size_t>(
              rng.next_below(static_cast<uint64_t>(dims.size())))];
          x.set(perm[next++], d);
        }
      }
      break;
  }
  return x;
}

Assignment baseline_degree(const DirectedGraph& graph, const GroundSet& gs,
                           int budget, uint64_t seed) {
  if (graph.node_count < gs.n) {
    throw std::invalid_argument("graph does not cover the ground set");
  }
  if (budget < 1 || budget > gs.n) {
    throw std::invalid_argument("degree baseline budget out of range");
  }
  std::vector<int> deg = graph.out_degrees();
  std::vector<int> order(static_cast<size_t>(gs.n));
  for (int e = 0; e < gs.n; ++e) order[static_cast<size_t>(e)] = e;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (deg[static_cast<size_t>(a)] != deg[static_cast<size_t>(b)]) {
      return deg[static_cast<size_t>(a)] > deg[static_cast<size_t>(b)];
    }
    return a < b;
  });

  Rng rng(seed);
  Assignment x(gs);
  for (int t = 0; t < budget; ++t) {
    x.set(order[static_cast<size_t>(t)], rng.next_int(1, gs.k));
  }
  return x;
}

}  // namespace ksub
