#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ksub/assignment.hpp"
#include "ksub/constraint.hpp"
#include "ksub/objective.hpp"

namespace ksub {

// Caps on exhaustive enumeration. The verifiers walk all (k+1)^n label
// arrays; the optimizer walks only feasible ones.
struct EnumerationBudget {
  int max_n = 12;
  int max_k = 4;
  uint64_t max_states = 200'000'000;
};

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Property {
  monotone,
  orthant_submodular,
  pairwise_monotone,
  k_submodular,
  as_envelope,
  adr_envelope,
};

std::string to_string(Property p);

// Counterexample data for a failed property. `points` holds the assignments
// involved (x alone, or x and its extension y) and `values` the measured
// quantities, so the violation can be re-checked by direct evaluation.
struct Witness {
  std::vector<Assignment> points;
  int element = -1;
  int dimension = 0;
  int dimension2 = 0;
  std::vector<double> values;
  std::string detail;
};

struct VerifierReport {
  Property property;
  bool holds = true;
  double epsilon = 0.0;  // envelope checks only
  std::optional<Witness> witness;
};

std::string to_string(const VerifierReport& report);

// a <= b up to a relative slack that absorbs float noise in otherwise exact
// real-arithmetic inequalities.
inline bool leq_slack(double a, double b, double rel = 1e-9) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return a <= b + rel * scale;
}

// Exhaustive maximization over feasible assignments; ties break to the
// lexicographically smallest label array. With saturate=true only assignments
// that exactly meet the caps are considered (used by the interpolated-optimum
// construction, which needs a full-support optimum).
std::pair<Assignment, double> brute_force_max(
    const Objective& obj, const Constraint& c,
    const EnumerationBudget& budget = {}, bool saturate = false);

// Single-step extension gains are nonnegative. Equivalent to monotonicity
// over the whole lattice, at O(nk (k+1)^n) instead of O((k+1)^{2n}).
VerifierReport verify_monotone(const Objective& obj,
                               const EnumerationBudget& budget = {});

// Diminishing returns per dimension: Delta_{u,i} f(x) >= Delta_{u,i} f(y) for
// comparable x <= y. Checked over single-step pairs y = x + (w,j), which is
// equivalent (gains telescope along any chain between comparable points).
VerifierReport verify_orthant_submodular(const Objective& obj,
                                         const EnumerationBudget& budget = {});

// Delta_{u,i} f(x) + Delta_{u,j} f(x) >= 0 for i != j.
VerifierReport verify_pairwise_monotone(const Objective& obj,
                                        const EnumerationBudget& budget = {});

// Both halves of the k-submodularity definition; first violation wins, with
// orthant submodularity scanned before pairwise monotonicity.
VerifierReport verify_k_submodular(const Objective& obj,
                                   const EnumerationBudget& budget = {});

// (1-eps) f(x) <= F(x) <= (1+eps) f(x) for every assignment.
VerifierReport verify_as_envelope(const Objective& noisy, const Objective& base,
                                  double epsilon,
                                  const EnumerationBudget& budget = {});

// Which marginals the ADR envelope check walks. `full` scans every (x, u, i)
// with u unassigned; `chains` restricts to ascending-id chain edges, the set
// on which chain-summed noisy objectives are defined to satisfy the envelope.
enum class AdrScan { full, chains };

// (1-eps) Delta_{u,i} f(x) <= Delta_{u,i} F(x) <= (1+eps) Delta_{u,i} f(x).
VerifierReport verify_adr_envelope(const Objective& noisy, const Objective& base,
                                   double epsilon, AdrScan scan = AdrScan::full,
                                   const EnumerationBudget& budget = {});

// Tightest epsilon for which the multiplicative sandwich holds:
// max over x of |F(x)/f(x) - 1|, with 0 where both vanish and +infinity when
// f(x) = 0 but F(x) != 0.
double min_epsilon_as(const Objective& noisy, const Objective& base,
                      const EnumerationBudget& budget = {});

}  // namespace ksub
