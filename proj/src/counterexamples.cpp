#include "ksub/counterexamples.hpp"

#include "ksub/objectives/coverage.hpp"

namespace ksub {

namespace {

constexpr int kV = 0;
constexpr int kU = 1;

// Modular f over {v, u} with the given weights; f({u,v}) - f({v}) = f({u})
// holds for any modular function.
std::shared_ptr<const Objective> modular_pair(double weight_v, double weight_u) {
  return ModularObjective::uniform_dims(GroundSet(2, 1), {weight_v, weight_u});
}

std::vector<uint8_t> labels_of(std::initializer_list<int> ls) {
  std::vector<uint8_t> out;
  for (int l : ls) out.push_back(static_cast<uint8_t>(l));
  return out;
}

}  // namespace

Counterexample ag_as_counterexample(double epsilon) {
  auto f = modular_pair(1.0, 1.0);
  NoiseOverrides overrides;
  overrides.assignment_xi[labels_of({0, 0})] = 1.0;
  overrides.assignment_xi[labels_of({0, 1})] = 1.0 - epsilon;  // {u}
  overrides.assignment_xi[labels_of({1, 0})] = 1.0;            // {v}
  overrides.assignment_xi[labels_of({1, 1})] = 1.0;            // {u,v}
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::ag, NoiseStyle::as, epsilon, 0}, f,
      std::move(overrides));
  return {"ag-as",
          "per-assignment noise deflating {u} only; the gain of u grows from "
          "the empty assignment to {v}",
          f, F, epsilon, NoiseStyle::as};
}

Counterexample maxg_as_counterexample(double epsilon) {
  auto f = modular_pair(1.0, 1.0);
  NoiseOverrides overrides;
  overrides.element_xi = {1.0, 1.0 - epsilon};  // xi(v), xi(u)
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::maxg, NoiseStyle::as, epsilon, 0}, f,
      std::move(overrides));
  return {"maxg-as",
          "max-aggregated element noise; pairing u with the clean v restores "
          "its full gain",
          f, F, epsilon, NoiseStyle::as};
}

Counterexample meang_as_counterexample(double epsilon) {
  // f({u}) = 1, f({v}) = 0.5, so f({u,v}) = 1.5 f({u}) and
  // f({u,v}) - f({v}) = f({u}).
  auto f = modular_pair(0.5, 1.0);
  NoiseOverrides overrides;
  overrides.element_xi = {1.0, 1.0 - epsilon};
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::meang, NoiseStyle::as, epsilon, 0}, f,
      std::move(overrides));
  return {"meang-as",
          "mean-aggregated element noise; averaging with the clean v dilutes "
          "u's deflation",
          f, F, epsilon, NoiseStyle::as};
}

Counterexample ag_adr_counterexample(double epsilon) {
  auto f = modular_pair(1.0, 1.0);
  NoiseOverrides overrides;
  overrides.assignment_xi[labels_of({0, 0})] = 1.0 - epsilon;  // base point 0
  overrides.assignment_xi[labels_of({1, 0})] = 1.0;            // base point {v}
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::ag, NoiseStyle::adr, epsilon, 0}, f,
      std::move(overrides));
  return {"ag-adr",
          "gains deflated at the empty assignment but clean at {v}",
          f, F, epsilon, NoiseStyle::adr};
}

Counterexample maxg_adr_counterexample(double epsilon) {
  auto f = modular_pair(1.0, 1.0);
  NoiseOverrides overrides;
  overrides.element_xi = {1.0, 1.0 - epsilon};
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::maxg, NoiseStyle::adr, epsilon, 0}, f,
      std::move(overrides));
  return {"maxg-adr",
          "max-aggregated gain noise; u's gain at {v} uses the clean max",
          f, F, epsilon, NoiseStyle::adr};
}

Counterexample meang_adr_counterexample(double epsilon) {
  auto f = modular_pair(1.0, 1.0);
  NoiseOverrides overrides;
  overrides.element_xi = {1.0, 1.0 - epsilon};
  auto F = make_noisy_with_overrides(
      NoiseSpec{NoiseMethod::meang, NoiseStyle::adr, epsilon, 0}, f,
      std::move(overrides));
  return {"meang-adr",
          "mean-aggregated gain noise; u's gain at {v} averages in the clean v",
          f, F, epsilon, NoiseStyle::adr};
}

Counterexample as_not_adr_counterexample(double epsilon) {
  // Coverage with disjoint positive-weight sets: f({e1}) = 1, f({e2}) = 2,
  // f({e1,e2}) = 3.
  CoverageInstance inst;
  inst.universe_size = 3;
  inst.gs = GroundSet(2, 1);
  inst.weights = {1.0, 1.0, 1.0};
  inst.sets = {{{0}}, {{1, 2}}};
  auto f = std::make_shared<CoverageObjective>(inst);

  double f1 = 1.0, f2 = 2.0, f12 = 3.0;
  std::map<std::vector<uint8_t>, double> table;
  table[labels_of({0, 0})] = 0.0;
  table[labels_of({1, 0})] = (1.0 + epsilon) * f1;
  table[labels_of({0, 1})] = (1.0 - epsilon) * f2;
  table[labels_of({1, 1})] = (1.0 - epsilon) * f12;
  auto F = std::make_shared<ExplicitObjective>(GroundSet(2, 1), std::move(table),
                                               "as_not_adr");
  return {"as-not-adr",
          "value envelope tight at opposite ends of {e1} and {e1,e2}; the "
          "marginal of e2 at {e1} falls below (1-eps) df",
          f, F, epsilon, NoiseStyle::adr};
}

std::vector<Counterexample> all_counterexamples() {
  return {ag_as_counterexample(),   maxg_as_counterexample(),
          meang_as_counterexample(), ag_adr_counterexample(),
          maxg_adr_counterexample(), meang_adr_counterexample(),
          as_not_adr_counterexample()};
}

}  // namespace ksub
