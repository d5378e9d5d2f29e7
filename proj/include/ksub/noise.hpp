#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ksub/assignment.hpp"
#include "ksub/constraint.hpp"
#include "ksub/objective.hpp"

namespace ksub {

enum class NoiseMethod { ag, maxg, meang };
enum class NoiseStyle { as, adr };

std::string to_string(NoiseMethod m);
std::string to_string(NoiseStyle s);

struct NoiseSpec {
  NoiseMethod method = NoiseMethod::meang;
  NoiseStyle style = NoiseStyle::as;
  double epsilon = 0.0;
  uint64_t seed = 0;

  void validate() const;
};

// Injective order-independent encoding of an assignment: the fixed-width
// label array itself.
inline std::vector<uint8_t> canonical(const Assignment& x) {
  return x.labels();
}

// Pinned noise values for the fixed counterexample instances. Entries not
// present fall back to the seeded hash draw.
struct NoiseOverrides {
  std::map<std::vector<uint8_t>, double> assignment_xi;
  std::vector<double> element_xi;
};

// F built from a monotone k-submodular base f.
//
// AS style evaluates F(x) = xi(x) * f(x) directly: AG pins F at f's greedy
// solution to (1+eps) f and draws per-assignment xi in [1-eps, 1] elsewhere;
// MaxG/MeanG draw one xi per element and aggregate over supp(x) by max or
// mean.
//
// ADR style perturbs marginal gains, xi(x, e) * Delta_{e,i} f(x), and defines
// F(x) as the sum of perturbed gains along the canonical chain of x (elements
// of supp(x) added in ascending id order). That makes F a total function; the
// gain envelope is guaranteed on chain edges, not on arbitrary marginals.
//
// Every draw is a pure function of (seed, key), so evaluation order, process
// restarts, and thread interleavings cannot change F.
class NoisyObjective final : public Objective {
 public:
  NoisyObjective(std::shared_ptr<const Objective> base, NoiseSpec spec,
                 NoiseOverrides overrides = {});

  const NoiseSpec& spec() const { return spec_; }
  const Objective& base() const { return *base_; }

  // AG only: f's greedy solution x_f that the construction favors.
  const std::optional<Assignment>& pinned_solution() const { return pinned_; }

  double xi_element(int e) const;

  std::string name() const override;
  bool claims_exact_ksubmodular() const override {
    return spec_.epsilon == 0.0 && base_->claims_exact_ksubmodular();
  }

 protected:
  double value_of(const Assignment& x) const override;

 private:
  friend std::shared_ptr<NoisyObjective> make_ag_as(
      std::shared_ptr<const Objective>, const Constraint&, double, uint64_t);
  friend std::shared_ptr<NoisyObjective> make_ag_adr(
      std::shared_ptr<const Objective>, const Constraint&, double, uint64_t);

  double xi_assignment(const Assignment& x) const;
  double eval_as(const Assignment& x) const;
  double eval_adr(const Assignment& x) const;

  std::shared_ptr<const Objective> base_;
  NoiseSpec spec_;
  NoiseOverrides overrides_;
  std::optional<Assignment> pinned_;                // AG-AS: x_f
  std::set<std::vector<uint8_t>> trajectory_;       // AG-ADR: prefixes of f's run
  std::vector<double> element_xi_;                  // MaxG/MeanG
};

// AG: runs the greedy matching the constraint on f to obtain x_f, pins
// F(x_f) = (1+eps) f(x_f), and draws per-assignment noise elsewhere.
std::shared_ptr<NoisyObjective> make_ag_as(std::shared_ptr<const Objective> f,
                                           const Constraint& c, double epsilon,
                                           uint64_t seed);

std::shared_ptr<NoisyObjective> make_maxg_as(std::shared_ptr<const Objective> f,
                                             double epsilon, uint64_t seed);

std::shared_ptr<NoisyObjective> make_meang_as(std::shared_ptr<const Objective> f,
                                              double epsilon, uint64_t seed);

// ADR variants. AG inflates marginals taken at f's greedy trajectory prefixes
// by (1+eps) and draws per-assignment noise elsewhere; MaxG/MeanG aggregate
// element noise including the incoming element.
std::shared_ptr<NoisyObjective> make_ag_adr(std::shared_ptr<const Objective> f,
                                            const Constraint& c, double epsilon,
                                            uint64_t seed);

std::shared_ptr<NoisyObjective> make_maxg_adr(std::shared_ptr<const Objective> f,
                                              double epsilon, uint64_t seed);

std::shared_ptr<NoisyObjective> make_meang_adr(std::shared_ptr<const Objective> f,
                                               double epsilon, uint64_t seed);

// Dispatch on spec. The constraint is required for AG.
std::shared_ptr<NoisyObjective> make_noisy(const NoiseSpec& spec,
                                           std::shared_ptr<const Objective> f,
                                           const Constraint* c = nullptr);

// Construction with pinned noise values and no greedy pin; used by the fixed
// regression instances.
std::shared_ptr<NoisyObjective> make_noisy_with_overrides(
    const NoiseSpec& spec, std::shared_ptr<const Objective> f,
    NoiseOverrides overrides);

}  // namespace ksub
