#pragma once

// Reference implementations used as independent oracles. Deliberately
// straightforward and kept apart from the library code paths they check:
// plain double loops, marginal gains via two eval calls, std::map counting.

#include <cmath>
#include <map>
#include <vector>

#include "ksub/assignment.hpp"
#include "ksub/objective.hpp"
#include "ksub/objectives/sensor.hpp"

namespace oracle {

struct Pick {
  int element;
  int dimension;
  double gain;
  double value;
};

// Unoptimized scan-everything greedy. `dim_open(i, x)` says whether dimension
// i may still take an element.
template <typename DimOpen>
std::vector<Pick> naive_greedy(const ksub::Objective& obj, int iterations,
                               DimOpen dim_open) {
  const ksub::GroundSet& gs = obj.ground_set();
  ksub::Assignment x(gs);
  std::vector<Pick> picks;
  for (int j = 0; j < iterations; ++j) {
    bool have = false;
    Pick best{-1, 0, 0.0, 0.0};
    for (int e = 0; e < gs.n; ++e) {
      if (x.label(e) != 0) continue;
      for (int i = 1; i <= gs.k; ++i) {
        if (!dim_open(i, x)) continue;
        double before = obj.eval(x);
        double after = obj.eval(x.with(e, i));
        double gain = after - before;
        if (!have || gain > best.gain) {
          best = {e, i, gain, after};
          have = true;
        }
      }
    }
    x.set(best.element, best.dimension);
    picks.push_back(best);
  }
  return picks;
}

inline std::vector<Pick> naive_greedy_ts(const ksub::Objective& obj, int budget) {
  return naive_greedy(obj, budget, [](int, const ksub::Assignment&) {
    return true;
  });
}

inline std::vector<Pick> naive_greedy_is(const ksub::Objective& obj,
                                         const std::vector<int>& caps) {
  int total = 0;
  for (int c : caps) total += c;
  return naive_greedy(obj, total, [&caps](int i, const ksub::Assignment& x) {
    return x.support_size(i) < caps[static_cast<size_t>(i - 1)];
  });
}

inline std::vector<Pick> naive_greedy_group(
    const ksub::Objective& obj, const std::vector<std::vector<int>>& groups,
    const std::vector<int>& caps) {
  int total = 0;
  for (int c : caps) total += c;
  return naive_greedy(obj, total,
                      [&groups, &caps](int i, const ksub::Assignment& x) {
                        for (size_t g = 0; g < groups.size(); ++g) {
                          for (int d : groups[g]) {
                            if (d == i) {
                              int used = 0;
                              for (int dd : groups[g]) {
                                used += x.support_size(dd);
                              }
                              return used < caps[g];
                            }
                          }
                        }
                        return false;
                      });
}

// Histogram-and-sum entropy over the selected columns.
inline double naive_entropy(const ksub::SensorModel& model,
                            const std::vector<int>& columns) {
  if (columns.empty()) return 0.0;
  std::map<std::vector<int>, int> counts;
  for (const auto& record : model.records) {
    std::vector<int> tuple;
    for (int c : columns) tuple.push_back(record[static_cast<size_t>(c)]);
    counts[tuple] += 1;
  }
  double total = static_cast<double>(model.records.size());
  double h = 0.0;
  for (const auto& [tuple, count] : counts) {
    double p = count / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace oracle
