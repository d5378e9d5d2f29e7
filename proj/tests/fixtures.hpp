#pragma once

#include <memory>

#include "ksub/objectives/cascade.hpp"
#include "ksub/objectives/coverage.hpp"
#include "ksub/objectives/sensor.hpp"

namespace fixtures {

// Shared instances referenced across the suites by number.

// #1: coverage, n=6, k=2, seed 42
inline std::shared_ptr<ksub::CoverageObjective> coverage1() {
  return ksub::gen_coverage_objective(6, 2, 12, 42);
}

// #2: coverage, n=6, k=3, seed 7
inline std::shared_ptr<ksub::CoverageObjective> coverage2() {
  return ksub::gen_coverage_objective(6, 3, 12, 7);
}

// #3: cascade graph, 7 nodes, seed 3
inline ksub::CascadeModel cascade3() {
  return ksub::gen_cascade(7, 2, 0.3, 8, 3);
}

// #4: sensor table, 4 locations, 2 types, seed 4
inline ksub::SensorModel sensor4() {
  return ksub::gen_sensor(4, 2, 60, 4, 4);
}

}  // namespace fixtures
