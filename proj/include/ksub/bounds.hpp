#pragma once

#include <string>

namespace ksub {

// Closed-form greedy approximation ratios for every combination of
// dimension regime, constraint, noise class, and which function the greedy
// ran on. B is the total budget (for individual caps, their sum).
enum class KRegime { k1, k_ge2 };
enum class BoundConstraint { ts, is };
enum class FunctionClass { as, adr };
enum class SolutionSource { on_noisy, on_base };

struct BoundQuery {
  KRegime k_regime = KRegime::k_ge2;
  BoundConstraint constraint = BoundConstraint::ts;
  FunctionClass function_class = FunctionClass::as;
  SolutionSource source = SolutionSource::on_noisy;
  double epsilon = 0.0;
  int budget = 1;  // B; ignored by the B-independent formulas
};

struct BoundResult {
  double value = 0.0;
  std::string formula;       // which closed form produced the value
  bool via_as_reduction = false;  // gain-envelope class served through the
                                  // value-envelope transfer result
};

// Evaluates the matching formula. Queries for the gain-envelope class with
// the base function's solution have no dedicated closed form; they are served
// by the class inclusion plus the solution-transfer factor and flagged in the
// result.
BoundResult ratio(const BoundQuery& query);

}  // namespace ksub
