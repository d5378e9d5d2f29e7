#include "ksub/exact.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ksub {

namespace {

constexpr double kRelSlack = 1e-9;

uint64_t saturating_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a * b;
}

uint64_t state_count(const GroundSet& gs) {
  uint64_t states = 1;
  for (int e = 0; e < gs.n; ++e) {
    states = saturating_mul(states, static_cast<uint64_t>(gs.k) + 1);
  }
  return states;
}

void check_budget(const GroundSet& gs, const EnumerationBudget& budget,
                  uint64_t states) {
  if (gs.n > budget.max_n || gs.k > budget.max_k || states > budget.max_states) {
    std::ostringstream msg;
    msg << "enumeration budget exceeded: n=" << gs.n << ", k=" << gs.k
        << ", states=" << states << " (caps: n<=" << budget.max_n
        << ", k<=" << budget.max_k << ", states<=" << budget.max_states << ")";
    throw BudgetExceededError(msg.str());
  }
}

// sum_{s<=cap} C(n,s) k^s, saturating: upper bound on feasible assignments.
uint64_t feasible_state_bound(const GroundSet& gs, int cap) {
  uint64_t total = 0;
  uint64_t binom = 1;  // C(n, s)
  uint64_t pow_k = 1;  // k^s
  for (int s = 0; s <= cap && s <= gs.n; ++s) {
    uint64_t term = saturating_mul(binom, pow_k);
    if (total > std::numeric_limits<uint64_t>::max() - term) {
      return std::numeric_limits<uint64_t>::max();
    }
    total += term;
    binom = saturating_mul(binom, static_cast<uint64_t>(gs.n - s)) /
            static_cast<uint64_t>(s + 1);
    pow_k = saturating_mul(pow_k, static_cast<uint64_t>(gs.k));
  }
  return total;
}

// All eval values indexed by the mixed-radix rank of the label array, when it
// fits; otherwise evaluates on the fly. Takes the verifier loops from
// O(states * n^2 k^2) oracle calls down to O(states).
class ValueOracle {
 public:
  ValueOracle(const Objective& obj, uint64_t states) : obj_(obj) {
    const GroundSet& gs = obj.ground_set();
    if (states <= kTableCap) {
      table_.resize(states);
      Assignment x(gs);
      uint64_t rank = 0;
      for (;;) {
        table_[rank] = obj.eval(x);
        ++rank;
        if (!advance(x)) break;
      }
    }
  }

  double operator()(const Assignment& x) const {
    if (table_.empty()) return obj_.eval(x);
    return table_[rank_of(x)];
  }

  // Advances the label array one step in lexicographic order (the last
  // element is least significant). Returns false after the final array.
  static bool advance(Assignment& x) {
    for (int e = x.n() - 1; e >= 0; --e) {
      int l = x.label(e);
      if (l < x.k()) {
        x.set(e, l + 1);
        return true;
      }
      x.set(e, 0);
    }
    return false;
  }

 private:
  static constexpr uint64_t kTableCap = 1ULL << 24;

  uint64_t rank_of(const Assignment& x) const {
    uint64_t rank = 0;
    uint64_t radix = static_cast<uint64_t>(x.k()) + 1;
    for (int e = 0; e < x.n(); ++e) {
      rank = rank * radix + static_cast<uint64_t>(x.label(e));
    }
    return rank;
  }

  const Objective& obj_;
  std::vector<double> table_;
};

Witness make_witness(std::vector<Assignment> points, int element, int dim,
                     int dim2, std::vector<double> values, std::string detail) {
  Witness w;
  w.points = std::move(points);
  w.element = element;
  w.dimension = dim;
  w.dimension2 = dim2;
  w.values = std::move(values);
  w.detail = std::move(detail);
  return w;
}

}  // namespace

std::string to_string(Property p) {
  switch (p) {
    case Property::monotone: return "monotone";
    case Property::orthant_submodular: return "orthant_submodular";
    case Property::pairwise_monotone: return "pairwise_monotone";
    case Property::k_submodular: return "k_submodular";
    case Property::as_envelope: return "as_envelope";
    case Property::adr_envelope: return "adr_envelope";
  }
  return "?";
}

std::string to_string(const VerifierReport& report) {
  std::ostringstream out;
  out << to_string(report.property);
  if (report.property == Property::as_envelope ||
      report.property == Property::adr_envelope) {
    out << "(eps=" << report.epsilon << ")";
  }
  out << ": " << (report.holds ? "holds" : "VIOLATED");
  if (report.witness) {
    const Witness& w = *report.witness;
    out << "\n  witness: " << w.detail;
    for (size_t i = 0; i < w.points.size(); ++i) {
      out << "\n    x" << i << " = " << w.points[i].to_string();
    }
    if (!w.values.empty()) {
      out << "\n    values:";
      for (double v : w.values) out << " " << v;
    }
  }
  return out.str();
}

std::pair<Assignment, double> brute_force_max(const Objective& obj,
                                              const Constraint& c,
                                              const EnumerationBudget& budget,
                                              bool saturate) {
  const GroundSet& gs = obj.ground_set();
  c.validate(gs);
  check_budget(gs, budget, feasible_state_bound(gs, c.total_budget()));

  Assignment x(gs);
  std::optional<Assignment> best;
  double best_value = -std::numeric_limits<double>::infinity();

  // Per-dimension counters drive pruning; DFS assigns labels 0..k in order,
  // so the first maximum seen is the lexicographically smallest one.
  std::vector<int> dim_counts(static_cast<size_t>(gs.k), 0);
  int total = 0;

  auto cap_allows = [&](int dim) {
    switch (c.kind()) {
      case Constraint::Kind::total_size:
        return total < c.budget();
      case Constraint::Kind::individual_size:
        return dim_counts[static_cast<size_t>(dim - 1)] <
               c.caps()[static_cast<size_t>(dim - 1)];
      case Constraint::Kind::group_size: {
        int g = c.group_of(dim);
        int used = 0;
        for (int d : c.groups()[static_cast<size_t>(g)]) {
          used += dim_counts[static_cast<size_t>(d - 1)];
        }
        return used < c.caps()[static_cast<size_t>(g)];
      }
    }
    return false;
  };

  auto remaining_to_saturate = [&]() {
    return c.total_budget() - total;
  };

  auto consider = [&]() {
    if (saturate && remaining_to_saturate() != 0) return;
    double v = obj.eval(x);
    if (v > best_value) {
      best_value = v;
      best = x;
    }
  };

  auto dfs = [&](auto&& self, int e) -> void {
    if (e == gs.n) {
      consider();
      return;
    }
    // Saturation needs enough elements left for the unmet caps.
    if (saturate && remaining_to_saturate() > gs.n - e) return;
    self(self, e + 1);  // label 0
    for (int i = 1; i <= gs.k; ++i) {
      if (!cap_allows(i)) continue;
      x.set(e, i);
      ++dim_counts[static_cast<size_t>(i - 1)];
      ++total;
      self(self, e + 1);
      --total;
      --dim_counts[static_cast<size_t>(i - 1)];
      x.set(e, 0);
    }
  };
  dfs(dfs, 0);

  if (!best) throw std::logic_error("no feasible assignment enumerated");
  return {*best, best_value};
}

VerifierReport verify_monotone(const Objective& obj,
                               const EnumerationBudget& budget) {
  const GroundSet& gs = obj.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);
  ValueOracle value(obj, states);

  VerifierReport report{Property::monotone, true, 0.0, std::nullopt};
  Assignment x(gs);
  for (;;) {
    double fx = value(x);
    for (int e = 0; e < gs.n; ++e) {
      if (x.label(e) != 0) continue;
      for (int i = 1; i <= gs.k; ++i) {
        double fy = value(x.with(e, i));
        if (!leq_slack(fx, fy, kRelSlack)) {
          report.holds = false;
          report.witness = make_witness(
              {x}, e, i, 0, {fx, fy},
              "negative gain: f(x + (e=" + std::to_string(e) +
                  ", i=" + std::to_string(i) + ")) < f(x)");
          return report;
        }
      }
    }
    if (!ValueOracle::advance(x)) break;
  }
  return report;
}

VerifierReport verify_orthant_submodular(const Objective& obj,
                                         const EnumerationBudget& budget) {
  const GroundSet& gs = obj.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);
  ValueOracle value(obj, states);

  VerifierReport report{Property::orthant_submodular, true, 0.0, std::nullopt};
  Assignment x(gs);
  for (;;) {
    double fx = value(x);
    // Single-step pairs x <= y = x + (w, j) suffice: the diminishing-returns
    // comparison telescopes along any chain between comparable assignments.
    for (int w = 0; w < gs.n; ++w) {
      if (x.label(w) != 0) continue;
      for (int j = 1; j <= gs.k; ++j) {
        Assignment y = x.with(w, j);
        double fy = value(y);
        for (int u = 0; u < gs.n; ++u) {
          if (u == w || x.label(u) != 0) continue;
          for (int i = 1; i <= gs.k; ++i) {
            double gain_x = value(x.with(u, i)) - fx;
            double gain_y = value(y.with(u, i)) - fy;
            if (!leq_slack(gain_y, gain_x, kRelSlack)) {
              report.holds = false;
              report.witness = make_witness(
                  {x, y}, u, i, 0, {gain_x, gain_y},
                  "diminishing returns fails for element " + std::to_string(u) +
                      " in dimension " + std::to_string(i) +
                      ": gain at x < gain at y >= x");
              return report;
            }
          }
        }
      }
    }
    if (!ValueOracle::advance(x)) break;
  }
  return report;
}

VerifierReport verify_pairwise_monotone(const Objective& obj,
                                        const EnumerationBudget& budget) {
  const GroundSet& gs = obj.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);
  ValueOracle value(obj, states);

  VerifierReport report{Property::pairwise_monotone, true, 0.0, std::nullopt};
  Assignment x(gs);
  for (;;) {
    double fx = value(x);
    for (int u = 0; u < gs.n; ++u) {
      if (x.label(u) != 0) continue;
      for (int i = 1; i <= gs.k; ++i) {
        double gain_i = value(x.with(u, i)) - fx;
        for (int j = i + 1; j <= gs.k; ++j) {
          double gain_j = value(x.with(u, j)) - fx;
          if (!leq_slack(0.0, gain_i + gain_j, kRelSlack)) {
            report.holds = false;
            report.witness = make_witness(
                {x}, u, i, j, {gain_i, gain_j},
                "pairwise monotonicity fails for element " + std::to_string(u) +
                    " in dimensions " + std::to_string(i) + "," +
                    std::to_string(j));
            return report;
          }
        }
      }
    }
    if (!ValueOracle::advance(x)) break;
  }
  return report;
}

VerifierReport verify_k_submodular(const Objective& obj,
                                   const EnumerationBudget& budget) {
  VerifierReport orthant = verify_orthant_submodular(obj, budget);
  if (!orthant.holds) {
    orthant.property = Property::k_submodular;
    return orthant;
  }
  VerifierReport pairwise = verify_pairwise_monotone(obj, budget);
  pairwise.property = Property::k_submodular;
  return pairwise;
}

VerifierReport verify_as_envelope(const Objective& noisy, const Objective& base,
                                  double epsilon,
                                  const EnumerationBudget& budget) {
  const GroundSet& gs = noisy.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);

  VerifierReport report{Property::as_envelope, true, epsilon, std::nullopt};
  Assignment x(gs);
  for (;;) {
    double f = base.eval(x);
    double F = noisy.eval(x);
    if (!leq_slack((1.0 - epsilon) * f, F, kRelSlack) ||
        !leq_slack(F, (1.0 + epsilon) * f, kRelSlack)) {
      report.holds = false;
      report.witness = make_witness(
          {x}, -1, 0, 0, {F, f},
          "F(x) outside [(1-eps) f(x), (1+eps) f(x)]");
      return report;
    }
    if (!ValueOracle::advance(x)) break;
  }
  return report;
}

VerifierReport verify_adr_envelope(const Objective& noisy, const Objective& base,
                                   double epsilon, AdrScan scan,
                                   const EnumerationBudget& budget) {
  const GroundSet& gs = noisy.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);
  ValueOracle F(noisy, states);
  ValueOracle f(base, states);

  VerifierReport report{Property::adr_envelope, true, epsilon, std::nullopt};
  Assignment x(gs);
  for (;;) {
    double Fx = F(x);
    double fx = f(x);
    int max_supp_id = -1;
    for (int e = 0; e < gs.n; ++e) {
      if (x.label(e) != 0) max_supp_id = e;
    }
    for (int u = 0; u < gs.n; ++u) {
      if (x.label(u) != 0) continue;
      if (scan == AdrScan::chains && u < max_supp_id) continue;
      for (int i = 1; i <= gs.k; ++i) {
        Assignment y = x.with(u, i);
        double gain_F = F(y) - Fx;
        double gain_f = f(y) - fx;
        if (!leq_slack((1.0 - epsilon) * gain_f, gain_F, kRelSlack) ||
            !leq_slack(gain_F, (1.0 + epsilon) * gain_f, kRelSlack)) {
          report.holds = false;
          report.witness = make_witness(
              {x}, u, i, 0, {gain_F, gain_f},
              "marginal of element " + std::to_string(u) + " in dimension " +
                  std::to_string(i) +
                  " outside [(1-eps) df, (1+eps) df] at x");
          return report;
        }
      }
    }
    if (!ValueOracle::advance(x)) break;
  }
  return report;
}

double min_epsilon_as(const Objective& noisy, const Objective& base,
                      const EnumerationBudget& budget) {
  const GroundSet& gs = noisy.ground_set();
  uint64_t states = state_count(gs);
  check_budget(gs, budget, states);

  double worst = 0.0;
  Assignment x(gs);
  for (;;) {
    double f = base.eval(x);
    double F = noisy.eval(x);
    if (f == 0.0) {
      if (F != 0.0) return std::numeric_limits<double>::infinity();
    } else {
      worst = std::max(worst, std::abs(F / f - 1.0));
    }
    if (!ValueOracle::advance(x)) break;
  }
  return worst;
}

}  // namespace ksub
