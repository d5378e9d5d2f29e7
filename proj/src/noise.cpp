#include "ksub/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "ksub/greedy.hpp"
#include "ksub/rng.hpp"

namespace ksub {

namespace {

// One uniform draw in [1-eps, 1] from a keyed hash. eps = 0 yields exactly 1.
double xi_draw(uint64_t seed, char tag, const std::vector<uint8_t>& key,
               double epsilon) {
  std::vector<uint8_t> buf;
  buf.reserve(key.size() + 1);
  buf.push_back(static_cast<uint8_t>(tag));
  buf.insert(buf.end(), key.begin(), key.end());
  double u = unit_from_bits(hash_bytes(seed, buf));
  return 1.0 - epsilon + epsilon * u;
}

std::vector<uint8_t> element_key(int e) {
  std::vector<uint8_t> key(4);
  key[0] = static_cast<uint8_t>(e & 0xff);
  key[1] = static_cast<uint8_t>((e >> 8) & 0xff);
  key[2] = static_cast<uint8_t>((e >> 16) & 0xff);
  key[3] = static_cast<uint8_t>((e >> 24) & 0xff);
  return key;
}

}  // namespace

std::string to_string(NoiseMethod m) {
  switch (m) {
    case NoiseMethod::ag: return "ag";
    case NoiseMethod::maxg: return "maxg";
    case NoiseMethod::meang: return "meang";
  }
  return "?";
}

std::string to_string(NoiseStyle s) {
  return s == NoiseStyle::as ? "as" : "adr";
}

void NoiseSpec::validate() const {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("noise epsilon must lie in [0, 1]");
  }
}

NoisyObjective::NoisyObjective(std::shared_ptr<const Objective> base,
                               NoiseSpec spec, NoiseOverrides overrides)
    : Objective(base->ground_set()),
      base_(std::move(base)),
      spec_(spec),
      overrides_(std::move(overrides)) {
  spec_.validate();
  if (spec_.method != NoiseMethod::ag) {
    const GroundSet& gs = base_->ground_set();
    if (!overrides_.element_xi.empty()) {
      if (static_cast<int>(overrides_.element_xi.size()) != gs.n) {
        throw std::invalid_argument("element noise override needs n entries");
      }
      element_xi_ = overrides_.element_xi;
    } else {
      element_xi_.resize(static_cast<size_t>(gs.n));
      for (int e = 0; e < gs.n; ++e) {
        element_xi_[static_cast<size_t>(e)] =
            xi_draw(spec_.seed, 'E', element_key(e), spec_.epsilon);
      }
    }
  }
}

double NoisyObjective::xi_element(int e) const {
  if (element_xi_.empty()) {
    throw std::logic_error("no element noise for this generation method");
  }
  return element_xi_[static_cast<size_t>(e)];
}

double NoisyObjective::xi_assignment(const Assignment& x) const {
  std::vector<uint8_t> key = canonical(x);
  if (auto it = overrides_.assignment_xi.find(key);
      it != overrides_.assignment_xi.end()) {
    return it->second;
  }
  return xi_draw(spec_.seed, 'A', key, spec_.epsilon);
}

std::string NoisyObjective::name() const {
  return to_string(spec_.method) + "_" + to_string(spec_.style) +
         "(eps=" + std::to_string(spec_.epsilon) +
         ") over " + base_->name();
}

double NoisyObjective::value_of(const Assignment& x) const {
  return spec_.style == NoiseStyle::as ? eval_as(x) : eval_adr(x);
}

double NoisyObjective::eval_as(const Assignment& x) const {
  if (pinned_ && x == *pinned_) {
    return (1.0 + spec_.epsilon) * base_->eval(x);
  }
  switch (spec_.method) {
    case NoiseMethod::ag:
      return xi_assignment(x) * base_->eval(x);
    case NoiseMethod::maxg:
    case NoiseMethod::meang: {
      std::vector<int> supp = x.support();
      if (supp.empty()) return 0.0;
      double agg;
      if (spec_.method == NoiseMethod::maxg) {
        agg = element_xi_[static_cast<size_t>(supp[0])];
        for (size_t t = 1; t < supp.size(); ++t) {
          agg = std::max(agg, element_xi_[static_cast<size_t>(supp[t])]);
        }
      } else {
        double sum = 0.0;
        for (int e : supp) sum += element_xi_[static_cast<size_t>(e)];
        agg = sum / static_cast<double>(supp.size());
      }
      return agg * base_->eval(x);
    }
  }
  return 0.0;
}

double NoisyObjective::eval_adr(const Assignment& x) const {
  const GroundSet& gs = base_->ground_set();
  Assignment prefix(gs);
  double f_prev = base_->eval(prefix);
  double total = 0.0;
  double run_max = 0.0;
  double run_sum = 0.0;
  int count = 0;

  for (int e : x.support()) {
    double mult;
    switch (spec_.method) {
      case NoiseMethod::ag:
        mult = trajectory_.count(canonical(prefix))
                   ? 1.0 + spec_.epsilon
                   : xi_assignment(prefix);
        break;
      case NoiseMethod::maxg: {
        double xe = element_xi_[static_cast<size_t>(e)];
        mult = count == 0 ? xe : std::max(xe, run_max);
        break;
      }
      case NoiseMethod::meang: {
        double xe = element_xi_[static_cast<size_t>(e)];
        mult = (xe + run_sum) / static_cast<double>(count + 1);
        break;
      }
      default:
        mult = 1.0;
    }

    prefix.set(e, x.label(e));
    double f_next = base_->eval(prefix);
    total += mult * (f_next - f_prev);
    f_prev = f_next;
    if (spec_.method != NoiseMethod::ag) {
      double xe = element_xi_[static_cast<size_t>(e)];
      run_max = std::max(run_max, xe);
      run_sum += xe;
    }
    ++count;
  }
  return total;
}

std::shared_ptr<NoisyObjective> make_ag_as(std::shared_ptr<const Objective> f,
                                           const Constraint& c, double epsilon,
                                           uint64_t seed) {
  NoiseSpec spec{NoiseMethod::ag, NoiseStyle::as, epsilon, seed};
  auto obj = std::make_shared<NoisyObjective>(f, spec);
  obj->pinned_ = greedy(*f, c).solution;
  return obj;
}

std::shared_ptr<NoisyObjective> make_ag_adr(std::shared_ptr<const Objective> f,
                                            const Constraint& c, double epsilon,
                                            uint64_t seed) {
  NoiseSpec spec{NoiseMethod::ag, NoiseStyle::adr, epsilon, seed};
  auto obj = std::make_shared<NoisyObjective>(f, spec);
  GreedyTrace trace = greedy(*f, c);
  Assignment prefix(f->ground_set());
  obj->trajectory_.insert(canonical(prefix));
  for (const GreedyStep& step : trace.steps) {
    prefix.set(step.element, step.dimension);
    obj->trajectory_.insert(canonical(prefix));
  }
  return obj;
}

std::shared_ptr<NoisyObjective> make_maxg_as(std::shared_ptr<const Objective> f,
                                             double epsilon, uint64_t seed) {
  return std::make_shared<NoisyObjective>(
      f, NoiseSpec{NoiseMethod::maxg, NoiseStyle::as, epsilon, seed});
}

std::shared_ptr<NoisyObjective> make_meang_as(std::shared_ptr<const Objective> f,
                                              double epsilon, uint64_t seed) {
  return std::make_shared<NoisyObjective>(
      f, NoiseSpec{NoiseMethod::meang, NoiseStyle::as, epsilon, seed});
}

std::shared_ptr<NoisyObjective> make_maxg_adr(std::shared_ptr<const Objective> f,
                                              double epsilon, uint64_t seed) {
  return std::make_shared<NoisyObjective>(
      f, NoiseSpec{NoiseMethod::maxg, NoiseStyle::adr, epsilon, seed});
}

std::shared_ptr<NoisyObjective> make_meang_adr(std::shared_ptr<const Objective> f,
                                               double epsilon, uint64_t seed) {
  return std::make_shared<NoisyObjective>(
      f, NoiseSpec{NoiseMethod::meang, NoiseStyle::adr, epsilon, seed});
}

std::shared_ptr<NoisyObjective> make_noisy(const NoiseSpec& spec,
                                           std::shared_ptr<const Objective> f,
                                           const Constraint* c) {
  if (spec.method == NoiseMethod::ag) {
    if (c == nullptr) {
      throw std::invalid_argument("adversarial generation needs the constraint");
    }
    return spec.style == NoiseStyle::as
               ? make_ag_as(f, *c, spec.epsilon, spec.seed)
               : make_ag_adr(f, *c, spec.epsilon, spec.seed);
  }
  return std::make_shared<NoisyObjective>(f, spec);
}

std::shared_ptr<NoisyObjective> make_noisy_with_overrides(
    const NoiseSpec& spec, std::shared_ptr<const Objective> f,
    NoiseOverrides overrides) {
  return std::make_shared<NoisyObjective>(f, spec, std::move(overrides));
}

}  // namespace ksub
