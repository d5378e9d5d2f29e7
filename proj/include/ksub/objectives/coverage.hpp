#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ksub/bits.hpp"
#include "ksub/objective.hpp"

namespace ksub {

// Weighted coverage over a finite universe: placing element e in dimension i
// covers the item set sets[e][i-1], and f(x) is the total weight of items
// covered by any selected (element, dimension) pair. Monotone k-submodular.
struct CoverageInstance {
  int universe_size = 0;
  GroundSet gs{1, 1};
  std::vector<double> weights;                      // per universe item
  std::vector<std::vector<std::vector<int>>> sets;  // sets[e][i-1] = item ids
};

class CoverageObjective final : public Objective {
 public:
  explicit CoverageObjective(CoverageInstance instance);

  std::string name() const override { return "coverage"; }
  bool claims_exact_ksubmodular() const override { return true; }

  const CoverageInstance& instance() const { return instance_; }

 protected:
  double value_of(const Assignment& x) const override;

 private:
  CoverageInstance instance_;
  std::vector<std::vector<Bits>> masks_;  // masks_[e][i-1]
};

// Random instance: integer item weights in [1, 9] (exact in double
// arithmetic, so marginal gains carry no rounding noise) and each (element,
// dimension) set drawn item-by-item with the given density.
CoverageInstance gen_coverage(int n, int k, int universe_size, uint64_t seed,
                              double density = 0.35);

std::shared_ptr<CoverageObjective> gen_coverage_objective(
    int n, int k, int universe_size, uint64_t seed, double density = 0.35);

}  // namespace ksub
