#include "ksub/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ksub {

namespace {

void check(const BoundQuery& q) {
  if (q.epsilon < 0.0 || q.epsilon > 1.0) {
    throw std::invalid_argument("bound query epsilon must lie in [0, 1]");
  }
  if (q.budget < 1) {
    throw std::invalid_argument("bound query budget must be >= 1");
  }
}

// (1 / (1 + 4 B eps / (1-eps)^2)) (1 - ((1-eps)/(1+eps))^{2B} (1 - 1/B)^B),
// 0 at eps = 1 by continuity.
double single_dim_value_envelope(double eps, int b) {
  if (eps >= 1.0) return 0.0;
  double bb = static_cast<double>(b);
  double lead = 1.0 / (1.0 + 4.0 * bb * eps / ((1.0 - eps) * (1.0 - eps)));
  double decay = std::pow((1.0 - eps) / (1.0 + eps), 2.0 * bb) *
                 std::pow(1.0 - 1.0 / bb, bb);
  return lead * (1.0 - decay);
}

}  // namespace

BoundResult ratio(const BoundQuery& q) {
  check(q);
  double eps = q.epsilon;
  double b = static_cast<double>(q.budget);
  bool k1 = q.k_regime == KRegime::k1;
  bool ts = q.constraint == BoundConstraint::ts;

  if (q.source == SolutionSource::on_base) {
    // Transfer factor (1-eps)/(1+eps) on the exact-greedy ratio. The
    // gain-envelope class inherits the same guarantee through its inclusion
    // in the value-envelope class.
    double alpha = k1 ? 1.0 - std::exp(-1.0) : (ts ? 0.5 : 1.0 / 3.0);
    double value = (1.0 - eps) / (1.0 + eps) * alpha;
    std::string base = k1 ? "(1-eps)/(1+eps) (1-1/e)"
                          : (ts ? "(1-eps)/(2(1+eps))" : "(1-eps)/(3(1+eps))");
    return {value, base, q.function_class == FunctionClass::adr};
  }

  if (k1) {
    if (q.function_class == FunctionClass::as) {
      return {single_dim_value_envelope(eps, q.budget),
              "1/(1+4Beps/(1-eps)^2) (1-((1-eps)/(1+eps))^{2B}(1-1/B)^B)",
              false};
    }
    double a = (1.0 - eps) / (1.0 + eps);
    return {1.0 - std::exp(-a), "1-e^{-(1-eps)/(1+eps)}", false};
  }

  if (q.function_class == FunctionClass::as) {
    if (ts) {
      return {(1.0 - eps) * (1.0 - eps) /
                  (2.0 * (1.0 - eps + eps * b) * (1.0 + eps)),
              "(1-eps)^2 / (2(1-eps+eps B)(1+eps))", false};
    }
    return {(1.0 - eps) * (1.0 - eps) /
                ((3.0 - 3.0 * eps + 2.0 * eps * b) * (1.0 + eps)),
            "(1-eps)^2 / ((3-3eps+2eps B)(1+eps))", false};
  }

  if (ts) {
    return {(1.0 - eps) / 2.0, "(1-eps)/2", false};
  }
  return {(1.0 - eps) / (3.0 + eps), "(1-eps)/(3+eps)", false};
}

}  // namespace ksub
