#pragma once

#include <vector>

#include "ksub/assignment.hpp"
#include "ksub/greedy.hpp"

namespace ksub {

// Sequences o^(0), o^(1), ..., o^(B) morphing a budget-saturating solution
// `opt` into the greedy solution, one swap per greedy iteration. o^(B) equals
// the greedy solution and every intermediate keeps the saturated support
// profile. Where the construction leaves the swapped-out element free, the
// smallest id in the candidate set is taken.
//
// Total-size variant: `opt` must satisfy |supp(opt)| = number of greedy steps.
std::vector<Assignment> interpolated_optimum_ts(const GreedyTrace& trace,
                                                const Assignment& opt);

// Individual-size variant: `opt` must match the greedy solution's per-dimension
// support sizes. Handles the two swap cases (the greedy element occupied in a
// different dimension of o^(j-1), or not present at all).
std::vector<Assignment> interpolated_optimum_is(const GreedyTrace& trace,
                                                const Assignment& opt);

}  // namespace ksub
