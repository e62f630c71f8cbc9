#pragma once

#include <string>
#include <vector>

namespace svrrg {

/// The admissibility constants of the convergence guarantee, evaluated at a
/// concrete (k, tau, alpha). c1 depends on alpha; c0 is then computed with
/// that c1, and the step-size condition alpha < c0*tau is checked afterwards
/// (the only evaluation order that makes every quantity computable from the
/// inputs). A nonpositive c1 means alpha is too large for the guarantee; it
/// is reported through the flags rather than thrown.
struct TheoremConstants {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  bool positive[6] = {false, false, false, false, false, false};
  bool all_positive() const {
    for (bool p : positive)
      if (!p) return false;
    return true;
  }
};

TheoremConstants theorem_constants(int k, double tau, double alpha);

struct ConditionCheck {
  std::string name;
  bool satisfied = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Evaluated admissibility report: the four conditions on (theta0, alpha, m),
/// the derived step-size ceiling and epoch-length floor, the epoch budget
/// T = ceil(log(1/eps)/log(2/phi)) and the per-step contraction factor
/// 1 - c1*alpha*tau.
struct TheoremReport {
  TheoremConstants constants;
  double tau = 0.0, alpha = 0.0, m = 0.0, phi = 0.0, eps = 0.0, theta0 = 0.0;
  double alpha_max = 0.0;  // min{ c0*tau, (c1/(8 c2)) * tau * phi^2 }
  double m_min = 0.0;      // 3 log(2/phi) / (c1 * alpha * tau)
  long epoch_budget = 0;
  double contraction = 0.0;
  std::vector<ConditionCheck> conditions;
  bool all_satisfied() const {
    if (!constants.all_positive()) return false;
    for (const auto& c : conditions)
      if (!c.satisfied) return false;
    return true;
  }
};

/// Preconditions: eps in (0,1), phi in (0, 1/ceil(log2(1/eps))); violations
/// throw std::invalid_argument.
TheoremReport check_theorem_conditions(int k, double tau, double alpha, double m, double phi,
                                       double eps, double theta0);

std::string format_report(const TheoremReport& report);            // aligned text
std::string format_report_key_values(const TheoremReport& report); // machine-readable

}  // namespace svrrg
