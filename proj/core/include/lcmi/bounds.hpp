#pragma once

#include <optional>
#include <span>
#include <string>

#include "lcmi/engines.hpp"

namespace lcmi {

// For codewords uniform on a shifted linear code: the lower bound
// alpha_t * I_BEC^{(eta_t)}(X^n;Y^n) on the exact I_BSC^{(t)}(X^n;Y^n),
// together with the normalized BEC capacity fraction it is built from.
struct Thm1Bound {
  double bound;          // bits
  double bec_mi_at_eta;  // I_BEC^{(eta_t)} in bits
  double fraction;       // I_BEC^{(eta_t)} / (n eta_t)
};
Thm1Bound thm1_bound(const BinaryLinearCode& code, double t, const EngineLimits& limits = {});

// n psi_t( I_BEC^{(t1)} / (n t1) ): valid for any input, requires t1 >= eta_t.
double sam_psi_bound(const BinaryLinearCode& code, double t, double t1,
                     const EngineLimits& limits = {});

// n phi_t( I_BEC^{(eta_t)} / (n eta_t) ): lower bound on the exact H(Y^n) of
// the BSC of capacity t.
double sam_mgl_entropy_bound(const BinaryLinearCode& code, double t,
                             const EngineLimits& limits = {});

// Repeated-transmission lower bound I1 (1-(1-eta)^n) / eta, valid whenever
// eta upper-bounds the input-dependent SDPI coefficient of (P_X, W).
// Written in this form (rather than alpha (1-(1-eta)^n) H) so H cancels.
double combining_bound(double i1, double h, double eta, int n);

// Exponential relaxation (1-exp(-n eta))/eta * I1 <= combining_bound; for
// n*eta << 1 this is close to the obvious upper bound n*I1.
double combining_exp_relaxation(double i1, double eta, int n);

struct CombiningUpperBounds {
  double repeated;                    // n * I1
  double entropy;                     // H(P_X)
  std::optional<double> more_capable; // (1-(1-c_mc)^n) H, if c_mc supplied
};
CombiningUpperBounds combining_upper_bounds(double i1, double h, int n,
                                            std::optional<double> c_mc = std::nullopt);

// Two-branch lower bound on I_BSC^{(t)} for a rate-R code whose BEC mutual
// information stays within n*eps of capacity for every t > R:
// n (1-eps/R) * t for t < t*(R), and n (1-eps/R) * t R / eta_t above.
double thm3_bound(int n, double rate, double eps, double t);

// Smallest eps consistent with I_BEC^{(t)} >= n(R - eps) on a grid of
// grid_points capacities in (R, 1]; by monotonicity of I_BEC/t the binding
// point is the grid point nearest R.
double estimate_epsilon(const BinaryLinearCode& code, int grid_points = 512,
                        const EngineLimits& limits = {});

enum class Verdict { kHolds, kViolated, kInconclusive };
const char* to_string(Verdict v);

// Whether the bound is claimed below or above the measured quantity; slack
// is always measured in the safe direction (>= 0 when the bound holds).
enum class BoundKind { kLowerBound, kUpperBound };

struct VerdictPolicy {
  double tol = 1e-9;   // exact-vs-exact tolerance, in bits
  double z = 4.0;      // Monte Carlo noise band, in standard errors
  double widen = 0.0;  // extra inconclusive band (e.g. estimated eta)
};

struct BoundReport {
  std::string bound_name;
  std::string params;  // provenance: code, channel, grid point, seed, eta source
  double bound_value = 0.0;
  double measured_value = 0.0;
  double measured_std_err = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::kInconclusive;
};

// Verdict rule: holds when slack >= -tol; a shortfall inside the Monte Carlo
// noise band z * std_err (or the widened band) is inconclusive rather than
// violated; anything deeper is violated.
BoundReport verify(std::string bound_name, std::string params, double bound_value,
                   const MIResult& measured, BoundKind kind = BoundKind::kLowerBound,
                   const VerdictPolicy& policy = {});

// Checks that t -> I_BEC^{(t)}/t is non-increasing across an ascending grid
// of positive capacities; measured_value is minus the largest successive
// increase of the ratio.
BoundReport check_bec_ratio_monotone(const BinaryLinearCode& code, std::span<const double> t_grid,
                                     double tol = 1e-12, const EngineLimits& limits = {});

}  // namespace lcmi
