#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmi/channels.hpp"
#include "lcmi/codes.hpp"

namespace lcmi {

enum class Method { kExact, kMonteCarlo };
const char* to_string(Method m);

struct MIResult {
  double value = 0.0;        // bits
  Method method = Method::kExact;
  double std_err = 0.0;      // bits; always 0 for exact results
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct EngineLimits {
  int exact_subset_limit = 24;      // BEC engine enumerates 2^n erasure subsets
  int exact_enum_limit = 24;        // BSC engines do 2^n coset work
  std::uint64_t type_budget = 5'000'000;        // max output type classes
  std::uint64_t bms_exact_budget = 1ull << 28;  // |states|^n * 2^n work cap
  bool operator==(const EngineLimits&) const = default;
};

// Raised when an exact engine would exceed its enumeration budget; the
// message names the Monte Carlo fallback.
struct EngineLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset-rank profile of a code: count(s, r) = number of coordinate subsets
// of size s whose generator columns span rank r. Built by one 2^n
// depth-first sweep with an incrementally maintained GF(2) basis; afterwards
// every BEC query I_BEC^{(t)} = E_S[rank(G_S)] costs O(n k), which is what
// makes dense t-grids (monotonicity checks, epsilon estimation) cheap.
class BecRankProfile {
 public:
  explicit BecRankProfile(const BinaryLinearCode& code,
                          int subset_limit = EngineLimits{}.exact_subset_limit);

  double mi(double t) const;  // I_BEC^{(t)}(X^n;Y^n) in bits
  int length() const { return n_; }
  int dimension() const { return k_; }
  std::uint64_t count(int size, int rank) const { return counts_[size * (k_ + 1) + rank]; }

 private:
  int n_, k_;
  std::vector<std::uint64_t> counts_;
};

// Exact I_BEC via the rank profile; independent of the shift u.
MIResult bec_mi_exact(const BinaryLinearCode& code, double t, const EngineLimits& limits = {});

// Unbiased estimate of E[rank(G_S)] from `samples` sampled erasure sets.
MIResult bec_mi_mc(const BinaryLinearCode& code, double t, std::uint64_t samples,
                   std::uint64_t seed);

// Exact I_BSC of capacity t: H(Y^n) - n h(p) with H(Y^n) accumulated over
// the 2^{n-k} cosets of C (P(y) is constant on each).
MIResult bsc_mi_exact(const BinaryLinearCode& code, double t, const EngineLimits& limits = {});

// Exact H(Y^n) in bits for the BSC of capacity t.
double output_entropy_bsc_exact(const BinaryLinearCode& code, double t,
                                const EngineLimits& limits = {});

// Exact MI when coordinate i passes through BSC(crossovers[i]).
MIResult heterogeneous_bsc_mi_exact(const BinaryLinearCode& code,
                                    std::span<const double> crossovers,
                                    const EngineLimits& limits = {});

// MI over a BMS channel: expectation over revealed state vectors of the
// heterogeneous-BSC MI. Exact mode enumerates all |states|^n vectors within
// budget; Monte Carlo mode averages over `samples` sampled vectors.
MIResult bms_mi(const BinaryLinearCode& code, const BmsChannel& ch, Method mode,
                std::uint64_t samples = 0, std::uint64_t seed = 0,
                const EngineLimits& limits = {});

// Exact I(X;Y^n) when the same X ~ P_X is transmitted n times through the
// channel. Enumerates output type classes (Y^n is exchangeable given X),
// with multinomial log-coefficients from a cumulative log-factorial table.
MIResult repeated_input_mi_exact(const Dmc& ch, int n, const EngineLimits& limits = {});

// Lower estimate of the input-dependent SDPI coefficient eta(P_X, W):
// max of the chi-square contraction (squared second singular value of the
// divergence transition matrix), a KL-ratio grid search over binary input
// perturbations (|X| = 2 only, golden-section refined), and I(P_X,W)/H(P_X).
// Never an upper bound; callers needing a certified eta must supply one.
struct EtaEstimate {
  double eta;
  std::string method;  // route attaining the max: "chi2" | "kl_grid" | "mi_ratio"
};
EtaEstimate sdpi_eta_estimate(const Dmc& ch);

}  // namespace lcmi
