#include "svrrg/theorem.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace svrrg {

TheoremConstants theorem_constants(int k, double tau, double alpha) {
  if (k < 1) throw std::invalid_argument("theorem_constants: k must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("theorem_constants: tau must be > 0");
  // alpha = 0 is admitted arithmetically so the condition checker can report
  // the boundary case as a failed open-interval condition rather than erroring.
  if (!(alpha >= 0.0)) throw std::invalid_argument("theorem_constants: alpha must be >= 0");

  const double kk = static_cast<double>(k) * k;
  TheoremConstants c;
  c.c1 = (2.0 / tau) *
         (tau / 8.0 - 2.0 * alpha * (1.0 + 2.0 * alpha) * (1.0 + 24.0 * kk) -
          (118400.0 / 3.0) * alpha);
  c.c2 = 96.0 * (kk * (1.0 + 2.0 * alpha) + 823.0);
  c.c3 = 4.0 * (1.0 + 2.0 * alpha) + 192.0 * (kk * (1.0 + 2.0 * alpha) + 7400.0 / 9.0);

  const double b1 = 1.0 / (32.0 * std::sqrt(3.0 * k * tau * tau));
  const double b2 = 1.0 / (c.c1 * tau * tau);
  // Third branch rationalized: (-S + sqrt(S^2 + e)) / (24 tau (1+24k^2)) with
  // S = 118406 + 144 k^2 and e = 18 tau (1+24k^2) cancels catastrophically in
  // the printed form; multiply through by (S + sqrt(S^2+e)) to get
  // 3 / (4 (S + sqrt(S^2+e))).
  const double S = 118406.0 + 144.0 * kk;
  const double e = 18.0 * tau * (1.0 + 24.0 * kk);
  const double b3 = 3.0 / (4.0 * (S + std::sqrt(S * S + e)));
  c.c0 = std::min(b1, std::min(b2, b3));

  c.c4 = 20.0 / (1.0 - 5.0 * c.c0 * tau) + c.c0 * c.c3 * tau;
  c.c5 = (c.c4 > 0.0) ? std::sqrt(2.0 * c.c4) : 0.0;

  const double vals[6] = {c.c0, c.c1, c.c2, c.c3, c.c4, c.c5};
  for (int i = 0; i < 6; ++i) c.positive[i] = std::isfinite(vals[i]) && vals[i] > 0.0;
  return c;
}

TheoremReport check_theorem_conditions(int k, double tau, double alpha, double m, double phi,
                                       double eps, double theta0) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("check_theorem_conditions: eps must be in (0,1)");
  const double phi_cap = 1.0 / std::ceil(std::log2(1.0 / eps));
  if (!(phi > 0.0 && phi < phi_cap))
    throw std::invalid_argument(
        "check_theorem_conditions: phi must be in (0, 1/ceil(log2(1/eps))) = (0, " +
        std::to_string(phi_cap) + ")");

  TheoremReport r;
  r.constants = theorem_constants(k, tau, alpha);
  r.tau = tau;
  r.alpha = alpha;
  r.m = m;
  r.phi = phi;
  r.eps = eps;
  r.theta0 = theta0;

  const auto& c = r.constants;
  r.alpha_max = std::min(c.c0 * tau, (c.c1 / (8.0 * c.c2)) * tau * phi * phi);
  const double log2phi = std::log(2.0 / phi);
  r.m_min = 3.0 * log2phi / (c.c1 * alpha * tau);  // +inf at alpha = 0: condition 3 fails
  r.epoch_budget = static_cast<long>(std::ceil(std::log(1.0 / eps) / log2phi));
  r.contraction = 1.0 - c.c1 * alpha * tau;

  r.conditions.push_back({"theta0 < 1/2", theta0 < 0.5, theta0, 0.5});
  r.conditions.push_back(
      {"alpha in (0, min{c0 tau, (c1/8c2) tau phi^2})", alpha > 0.0 && alpha < r.alpha_max,
       alpha, r.alpha_max});
  r.conditions.push_back({"m >= 3 log(2/phi) / (c1 alpha tau)",
                          std::isfinite(r.m_min) && m >= r.m_min, m, r.m_min});
  const double drift = c.c3 * k * m * alpha * alpha +
                       c.c5 * k * std::sqrt(m * alpha * alpha * log2phi);
  r.conditions.push_back(
      {"c3 k m a^2 + c5 k sqrt(m a^2 log(2/phi)) <= 1/2 - theta0", drift <= 0.5 - theta0,
       drift, 0.5 - theta0});
  return r;
}

namespace {
std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-12.6g", v);
  return buf;
}
}  // namespace

std::string format_report(const TheoremReport& r) {
  std::ostringstream os;
  const char* names[6] = {"c0", "c1", "c2", "c3", "c4", "c5"};
  const double vals[6] = {r.constants.c0, r.constants.c1, r.constants.c2,
                          r.constants.c3, r.constants.c4, r.constants.c5};
  os << "constants at tau=" << g6(r.tau) << " alpha=" << g6(r.alpha) << "\n";
  for (int i = 0; i < 6; ++i)
    os << "  " << names[i] << " = " << g6(vals[i])
       << (r.constants.positive[i] ? "" : "  (NOT positive)") << "\n";
  os << "derived\n";
  os << "  alpha_max   = " << g6(r.alpha_max) << "\n";
  os << "  m_min       = " << g6(r.m_min) << "\n";
  os << "  T           = " << r.epoch_budget << "\n";
  os << "  contraction = " << g6(r.contraction) << "\n";
  os << "conditions\n";
  for (const auto& c : r.conditions)
    os << "  [" << (c.satisfied ? "PASS" : "FAIL") << "] " << c.name << "  (lhs=" << g6(c.lhs)
       << " rhs=" << g6(c.rhs) << ")\n";
  os << (r.all_satisfied() ? "theorem: all conditions satisfied"
                           : "theorem: NOT all conditions satisfied")
     << "\n";
  return os.str();
}

std::string format_report_key_values(const TheoremReport& r) {
  std::ostringstream os;
  os << "c0=" << g17(r.constants.c0) << "\nc1=" << g17(r.constants.c1)
     << "\nc2=" << g17(r.constants.c2) << "\nc3=" << g17(r.constants.c3)
     << "\nc4=" << g17(r.constants.c4) << "\nc5=" << g17(r.constants.c5) << "\n";
  os << "alpha_max=" << g17(r.alpha_max) << "\nm_min=" << g17(r.m_min)
     << "\nepoch_budget=" << r.epoch_budget << "\ncontraction=" << g17(r.contraction) << "\n";
  for (std::size_t i = 0; i < r.conditions.size(); ++i)
    os << "condition" << (i + 1) << "=" << (r.conditions[i].satisfied ? "pass" : "fail") << "\n";
  os << "all_satisfied=" << (r.all_satisfied() ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace svrrg
