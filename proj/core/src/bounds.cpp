#include "lcmi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lcmi/scalar.hpp"

namespace lcmi {
namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

Thm1Bound thm1_bound(const BinaryLinearCode& code, double t, const EngineLimits& limits) {
  require_unit(t, "t");
  if (t == 0.0) return {0.0, 0.0, 0.0};  // both sides vanish
  const double eta = sdpi_eta_bsc(t);
  const double bec = bec_mi_exact(code, eta, limits).value;
  const double denom = static_cast<double>(code.length()) * eta;
  return {alpha(t) * bec, bec, denom > 0.0 ? bec / denom : 0.0};
}

double sam_psi_bound(const BinaryLinearCode& code, double t, double t1,
                     const EngineLimits& limits) {
  require_unit(t, "t");
  require_unit(t1, "t1");
  const double eta = sdpi_eta_bsc(t);
  if (t1 < eta - 1e-12)
    throw std::domain_error("sam_psi_bound: t1 = " + std::to_string(t1) +
                            " is below eta_t = " + std::to_string(eta));
  if (t1 == 0.0) return 0.0;  // then t = 0 and psi_0 vanishes identically
  const double bec = bec_mi_exact(code, t1, limits).value;
  const double x = clamp_unit(bec / (code.length() * t1));
  return code.length() * psi(t, x);
}

double sam_mgl_entropy_bound(const BinaryLinearCode& code, double t,
                             const EngineLimits& limits) {
  require_unit(t, "t");
  const double eta = sdpi_eta_bsc(t);
  double x = 0.0;
  if (eta > 0.0) {
    const double bec = bec_mi_exact(code, eta, limits).value;
    x = clamp_unit(bec / (code.length() * eta));
  }
  return code.length() * mgl_phi(t, x);
}

double combining_bound(double i1, double h, double eta, int n) {
  if (n < 1) throw std::domain_error("combining_bound: n must be >= 1");
  require_unit(eta, "eta");
  if (!(i1 >= 0.0) || !(h >= 0.0))
    throw std::domain_error("combining_bound: I1 and H must be nonnegative");
  if (eta == 0.0) {
    if (i1 > 1e-15)
      throw std::domain_error("combining_bound: eta = 0 is inconsistent with I1 > 0");
    return 0.0;
  }
  if (i1 > eta * h + 1e-9)
    throw std::domain_error("combining_bound: I1 > eta H violates eta >= I1/H; "
                            "the supplied eta is not a valid upper bound");
  return i1 * (1.0 - std::pow(1.0 - eta, n)) / eta;
}

double combining_exp_relaxation(double i1, double eta, int n) {
  if (n < 1) throw std::domain_error("combining_exp_relaxation: n must be >= 1");
  require_unit(eta, "eta");
  if (!(i1 >= 0.0)) throw std::domain_error("combining_exp_relaxation: I1 must be nonnegative");
  if (eta == 0.0) return n * i1;  // limit of (1-exp(-n eta))/eta
  return i1 * (-std::expm1(-static_cast<double>(n) * eta)) / eta;
}

CombiningUpperBounds combining_upper_bounds(double i1, double h, int n,
                                            std::optional<double> c_mc) {
  if (n < 1) throw std::domain_error("combining_upper_bounds: n must be >= 1");
  CombiningUpperBounds ub{n * i1, h, std::nullopt};
  if (c_mc) {
    require_unit(*c_mc, "c_mc");
    ub.more_capable = (1.0 - std::pow(1.0 - *c_mc, n)) * h;
  }
  return ub;
}

double thm3_bound(int n, double rate, double eps, double t) {
  if (n < 1) throw std::domain_error("thm3_bound: n must be >= 1");
  if (!(rate > 0.0 && rate < 1.0)) throw std::domain_error("thm3_bound: rate must lie in (0,1)");
  if (!(eps >= 0.0 && eps <= rate))
    throw std::domain_error("thm3_bound: eps must lie in [0,rate]");
  require_unit(t, "t");
  const double factor = n * (1.0 - eps / rate);
  if (t < tstar(rate)) return factor * t;
  return factor * t * rate / sdpi_eta_bsc(t);
}

double estimate_epsilon(const BinaryLinearCode& code, int grid_points,
                        const EngineLimits& limits) {
  if (grid_points < 1) throw std::invalid_argument("estimate_epsilon: need a nonempty grid");
  const double rate = code.rate();
  if (!(rate > 0.0 && rate < 1.0))
    throw std::domain_error("estimate_epsilon: code rate must lie in (0,1)");
  const BecRankProfile profile(code, limits.exact_subset_limit);
  const int n = code.length();
  double min_fraction = 1.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double t = rate + (1.0 - rate) * i / grid_points;
    min_fraction = std::min(min_fraction, profile.mi(t) / n);
  }
  return rate - min_fraction;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

BoundReport verify(std::string bound_name, std::string params, double bound_value,
                   const MIResult& measured, BoundKind kind, const VerdictPolicy& policy) {
  BoundReport r;
  r.bound_name = std::move(bound_name);
  r.params = std::move(params);
  r.bound_value = bound_value;
  r.measured_value = measured.value;
  r.measured_std_err = measured.std_err;
  r.slack = kind == BoundKind::kLowerBound ? measured.value - bound_value
                                           : bound_value - measured.value;
  if (r.slack >= -policy.tol)
    r.verdict = Verdict::kHolds;
  else if (r.slack >= -policy.tol - policy.z * measured.std_err - policy.widen)
    r.verdict = Verdict::kInconclusive;
  else
    r.verdict = Verdict::kViolated;
  return r;
}

BoundReport check_bec_ratio_monotone(const BinaryLinearCode& code, std::span<const double> t_grid,
                                     double tol, const EngineLimits& limits) {
  if (t_grid.size() < 2)
    throw std::invalid_argument("check_bec_ratio_monotone: need at least two grid points");
  const BecRankProfile profile(code, limits.exact_subset_limit);
  double prev_t = 0.0, prev_ratio = 0.0;
  double max_increase = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0) || (!first && t <= prev_t))
      throw std::invalid_argument("check_bec_ratio_monotone: grid must ascend within (0,1]");
    const double ratio = profile.mi(t) / t;
    if (!first) max_increase = std::max(max_increase, ratio - prev_ratio);
    prev_t = t;
    prev_ratio = ratio;
    first = false;
  }
  MIResult measured{-max_increase, Method::kExact, 0.0, 0, 0};
  return verify("lemma1", "bec ratio monotonicity over " + std::to_string(t_grid.size()) +
                " grid points", 0.0, measured, BoundKind::kLowerBound, {tol, 0.0, 0.0});
}

}  // namespace lcmi
