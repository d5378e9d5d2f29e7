#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ksub/noise.hpp"
#include "ksub/objective.hpp"

namespace ksub {

// Fixed two-element instances on which the noisy constructions provably lose
// a property. Each fixture pins the noise values, so the violating marginal
// is deterministic. Elements: v = 0, u = 1 (u is the element whose marginal
// at {v} exceeds its marginal at the empty assignment).
struct Counterexample {
  std::string name;
  std::string description;
  std::shared_ptr<const Objective> base;   // f
  std::shared_ptr<const Objective> noisy;  // F
  double epsilon;
  NoiseStyle style;
};

// F(x) = xi(x) f(x) with xi({u}) = 1-eps, xi({v}) = xi({u,v}) = 1:
// not k-submodular.
Counterexample ag_as_counterexample(double epsilon = 0.5);

// Element noise xi(u) = 1-eps, xi(v) = 1 aggregated by max: not k-submodular.
Counterexample maxg_as_counterexample(double epsilon = 0.5);

// Element noise aggregated by mean, f({u,v}) = 1.5 f({u}): not k-submodular.
Counterexample meang_as_counterexample(double epsilon = 0.5);

// Gain-perturbed variants with the same noise values: not k-submodular.
Counterexample ag_adr_counterexample(double epsilon = 0.5);
Counterexample maxg_adr_counterexample(double epsilon = 0.5);
Counterexample meang_adr_counterexample(double epsilon = 0.5);

// Two-element F with F({e1}) = (1+eps) f({e1}) and
// F({e1,e2}) = (1-eps) f({e1,e2}): inside the value envelope but the marginal
// of e2 at {e1} breaks the gain envelope. Elements: e1 = 0, e2 = 1.
Counterexample as_not_adr_counterexample(double epsilon = 0.3);

std::vector<Counterexample> all_counterexamples();

}  // namespace ksub
