#include "ksub/interpolate.hpp"

#include <stdexcept>

namespace ksub {

namespace {

// Smallest element of supp_dim(o) \ supp_dim(x); dim = 0 compares whole
// supports.
int smallest_fresh(const Assignment& o, const Assignment& x, int dim) {
  for (int e = 0; e < o.n(); ++e) {
    bool in_o = dim == 0 ? o.label(e) != 0 : o.label(e) == dim;
    bool in_x = dim == 0 ? x.label(e) != 0 : x.label(e) == dim;
    if (in_o && !in_x) return e;
  }
  throw std::logic_error("interpolation ran out of optimal-solution elements");
}

}  // namespace

std::vector<Assignment> interpolated_optimum_ts(const GreedyTrace& trace,
                                                const Assignment& opt) {
  int budget = static_cast<int>(trace.steps.size());
  if (opt.support_size() != budget) {
    throw std::invalid_argument(
        "total-size interpolation needs |supp(opt)| equal to the budget");
  }

  GroundSet gs(opt.n(), opt.k());
  Assignment x(gs);
  Assignment o = opt;
  std::vector<Assignment> sequence{o};

  for (const GreedyStep& step : trace.steps) {
    int e = step.element;
    int i = step.dimension;
    // S^(j) = supp(o^(j-1)) \ supp(x^(j-1)); drop e if present, else the
    // smallest element of S^(j).
    int out = (o.label(e) != 0) ? e : smallest_fresh(o, x, 0);
    o.set(out, 0);
    o.set(e, i);
    x.set(e, i);
    sequence.push_back(o);
  }

  if (!(o == trace.solution)) {
    throw std::logic_error("interpolated sequence did not reach the greedy solution");
  }
  return sequence;
}

std::vector<Assignment> interpolated_optimum_is(const GreedyTrace& trace,
                                                const Assignment& opt) {
  const Assignment& sol = trace.solution;
  for (int i = 1; i <= opt.k(); ++i) {
    if (opt.support_size(i) != sol.support_size(i)) {
      throw std::invalid_argument(
          "individual-size interpolation needs opt to match the greedy "
          "per-dimension support sizes");
    }
  }

  GroundSet gs(opt.n(), opt.k());
  Assignment x(gs);
  Assignment o = opt;
  std::vector<Assignment> sequence{o};

  for (const GreedyStep& step : trace.steps) {
    int e = step.element;
    int i = step.dimension;
    int prev_label = o.label(e);
    if (prev_label != 0 && prev_label != i) {
      // e sits in another dimension i' of o^(j-1): swap it into i and move a
      // fresh element of dimension i over to i'.
      int moved = smallest_fresh(o, x, i);
      o.set(e, 0);
      o.set(moved, 0);
      o.set(e, i);
      o.set(moved, prev_label);
    } else {
      int out = (prev_label == i) ? e : smallest_fresh(o, x, i);
      o.set(out, 0);
      o.set(e, i);
    }
    x.set(e, i);
    sequence.push_back(o);
  }

  if (!(o == trace.solution)) {
    throw std::logic_error("interpolated sequence did not reach the greedy solution");
  }
  return sequence;
}

}  // namespace ksub
