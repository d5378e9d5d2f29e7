#include "ksub/objectives/coverage.hpp"

#include <stdexcept>

#include "ksub/rng.hpp"

namespace ksub {

CoverageObjective::CoverageObjective(CoverageInstance instance)
    : Objective(instance.gs), instance_(std::move(instance)) {
  const GroundSet& gs = instance_.gs;
  if (static_cast<int>(instance_.weights.size()) != instance_.universe_size) {
    throw std::invalid_argument("coverage needs one weight per universe item");
  }
  for (double w : instance_.weights) {
    if (w < 0.0) throw std::invalid_argument("coverage weights must be >= 0");
  }
  if (static_cast<int>(instance_.sets.size()) != gs.n) {
    throw std::invalid_argument("coverage needs one set row per element");
  }
  masks_.resize(static_cast<size_t>(gs.n));
  for (int e = 0; e < gs.n; ++e) {
    if (static_cast<int>(instance_.sets[static_cast<size_t>(e)].size()) != gs.k) {
      throw std::invalid_argument("coverage needs one set per dimension");
    }
    masks_[static_cast<size_t>(e)].assign(static_cast<size_t>(gs.k),
                                          Bits(instance_.universe_size));
    for (int i = 0; i < gs.k; ++i) {
      for (int item : instance_.sets[static_cast<size_t>(e)][static_cast<size_t>(i)]) {
        if (item < 0 || item >= instance_.universe_size) {
          throw std::invalid_argument("coverage item out of range");
        }
        masks_[static_cast<size_t>(e)][static_cast<size_t>(i)].set(item);
      }
    }
  }
}

double CoverageObjective::value_of(const Assignment& x) const {
  Bits covered(instance_.universe_size);
  for (int e = 0; e < x.n(); ++e) {
    int l = x.label(e);
    if (l != 0) covered |= masks_[static_cast<size_t>(e)][static_cast<size_t>(l - 1)];
  }
  return covered.weighted_count(instance_.weights);
}

CoverageInstance gen_coverage(int n, int k, int universe_size, uint64_t seed,
                              double density) {
  Rng rng(seed);
  CoverageInstance inst;
  inst.universe_size = universe_size;
  inst.gs = GroundSet(n, k);
  inst.weights.resize(static_cast<size_t>(universe_size));
  for (int u = 0; u < universe_size; ++u) {
    inst.weights[static_cast<size_t>(u)] = static_cast<double>(rng.next_int(1, 9));
  }
  inst.sets.resize(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    inst.sets[static_cast<size_t>(e)].resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (int u = 0; u < universe_size; ++u) {
        if (rng.next_unit() < density) {
          inst.sets[static_cast<size_t>(e)][static_cast<size_t>(i)].push_back(u);
        }
      }
    }
  }
  return inst;
}

std::shared_ptr<CoverageObjective> gen_coverage_objective(int n, int k,
                                                          int universe_size,
                                                          uint64_t seed,
                                                          double density) {
  return std::make_shared<CoverageObjective>(
      gen_coverage(n, k, universe_size, seed, density));
}

}  // namespace ksub
