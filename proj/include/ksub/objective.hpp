#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ksub/assignment.hpp"

namespace ksub {

// Evaluation oracle over assignments. Implementations must be pure functions
// of the assignment (safe for concurrent read-only evaluation) and normalized
// so that the all-zero assignment evaluates to 0. The call counter tracks the
// number of eval() invocations.
class Objective {
 public:
  virtual ~Objective() = default;

  double eval(const Assignment& x) const {
    eval_count_.fetch_add(1, std::memory_order_relaxed);
    return value_of(x);
  }

  const GroundSet& ground_set() const { return gs_; }

  virtual std::string name() const = 0;

  // True when the implementation is exactly k-submodular by construction
  // (coverage, entropy, fixed-sample spread). Noisy wrappers return false.
  virtual bool claims_exact_ksubmodular() const { return false; }

  uint64_t eval_count() const {
    return eval_count_.load(std::memory_order_relaxed);
  }
  void reset_eval_count() const {
    eval_count_.store(0, std::memory_order_relaxed);
  }

 protected:
  explicit Objective(GroundSet gs) : gs_(gs) {}

  virtual double value_of(const Assignment& x) const = 0;

 private:
  GroundSet gs_;
  mutable std::atomic<uint64_t> eval_count_{0};
};

// Delta_{e,i} f(x) = f(x with e assigned i) - f(x). Requires e unassigned.
inline double marginal_gain(const Objective& obj, const Assignment& x, int e,
                            int i) {
  if (x.label(e) != 0) {
    throw std::invalid_argument("marginal gain of an already assigned element: " +
                                std::to_string(e));
  }
  if (i < 1 || i > obj.ground_set().k) {
    throw std::invalid_argument("dimension out of range: " + std::to_string(i));
  }
  double before = obj.eval(x);
  double after = obj.eval(x.with(e, i));
  return after - before;
}

// f(x) = sum over selected elements of a per-dimension weight. Modular, hence
// monotone k-submodular when all weights are nonnegative.
class ModularObjective final : public Objective {
 public:
  // weights[i-1][e] = value of placing element e in dimension i.
  ModularObjective(GroundSet gs, std::vector<std::vector<double>> weights)
      : Objective(gs), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != gs.k) {
      throw std::invalid_argument("modular objective needs k weight rows");
    }
    for (const auto& row : weights_) {
      if (static_cast<int>(row.size()) != gs.n) {
        throw std::invalid_argument("modular weight row has wrong length");
      }
      for (double w : row) {
        if (w < 0.0) nonnegative_ = false;
      }
    }
  }

  // Same weight for an element regardless of dimension.
  static std::shared_ptr<ModularObjective> uniform_dims(GroundSet gs,
                                                        std::vector<double> w) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(gs.k), w);
    return std::make_shared<ModularObjective>(gs, std::move(rows));
  }

  std::string name() const override { return "modular"; }
  bool claims_exact_ksubmodular() const override { return nonnegative_; }

 protected:
  double value_of(const Assignment& x) const override {
    double total = 0.0;
    for (int e = 0; e < x.n(); ++e) {
      int l = x.label(e);
      if (l != 0) total += weights_[static_cast<size_t>(l - 1)][static_cast<size_t>(e)];
    }
    return total;
  }

 private:
  std::vector<std::vector<double>> weights_;
  bool nonnegative_ = true;
};

// Objective backed by an explicit value per assignment. Used for the small
// fixed instances where values are pinned pointwise.
class ExplicitObjective final : public Objective {
 public:
  ExplicitObjective(GroundSet gs, std::map<std::vector<uint8_t>, double> table,
                    std::string name)
      : Objective(gs), table_(std::move(table)), name_(std::move(name)) {}

  std::string name() const override { return name_; }

 protected:
  double value_of(const Assignment& x) const override {
    auto it = table_.find(x.labels());
    if (it == table_.end()) {
      throw std::invalid_argument("no tabulated value for assignment " +
                                  x.to_string());
    }
    return it->second;
  }

 private:
  std::map<std::vector<uint8_t>, double> table_;
  std::string name_;
};

}  // namespace ksub
