#pragma once

#include <span>
#include <vector>

namespace lcmi {

// Shannon entropy of a finite distribution, in bits.
double shannon_entropy(std::span<const double> dist);

// Binary-input memoryless output-symmetric channel, represented as a finite
// mixture of BSC states: with probability `weight` the transmitted bit passes
// a BSC of the given crossover, and the state index is revealed at the
// output. Crossovers are stored canonically in [0,1/2] (output relabeling);
// zero-weight states are dropped. Continuous-state channels must be
// quantized by the caller to a finite mixture first.
struct BmsState {
  double weight;
  double crossover;
  bool operator==(const BmsState&) const = default;
};

class BmsChannel {
 public:
  explicit BmsChannel(std::vector<BmsState> states);
  const std::vector<BmsState>& states() const { return states_; }
  double capacity() const;  // sum of weight * (1 - h(crossover))

 private:
  std::vector<BmsState> states_;
};

BmsChannel bms_from_bsc(double t);  // one state of capacity t
BmsChannel bms_from_bec(double t);  // {(t, p=0), (1-t, p=1/2)}

// Two-state mixture whose capacity is exactly `capacity`: per-state
// capacities are placed at c + s(1-w) and c - s w, with the gap s scaled by
// `spread` in (0,1] of the largest value keeping both states inside (0,1).
BmsChannel bms_two_state(double weight, double capacity, double spread = 0.9);

double capacity(const BmsChannel& ch);

// Discrete memoryless channel with a designated input distribution.
// Rows of the transition matrix are indexed by input symbol and must be
// stochastic to 1e-12.
class Dmc {
 public:
  Dmc(std::vector<std::vector<double>> transition, std::vector<double> input_dist);

  int input_size() const { return static_cast<int>(input_dist_.size()); }
  int output_size() const { return static_cast<int>(w_.empty() ? 0 : w_[0].size()); }
  double w(int x, int y) const { return w_[x][y]; }
  const std::vector<std::vector<double>>& matrix() const { return w_; }
  const std::vector<double>& input_dist() const { return input_dist_; }

  std::vector<double> output_dist() const;
  double mutual_information() const;  // I(P_X, W) in bits

 private:
  std::vector<std::vector<double>> w_;
  std::vector<double> input_dist_;
};

// Single-use mutual information of the stored input distribution.
double capacity(const Dmc& ch);

Dmc dmc_bsc(double crossover, double prob_one);            // binary input, P(X=1) = prob_one
Dmc dmc_erasure(double e, std::vector<double> input_dist); // output alphabet |X|+1, last = '?'
Dmc dmc_identity(std::vector<double> input_dist);

// (1 - e^n) H(P_X): the exact value of I(P_X, EC_e^{(x)n}) when the same
// symbol is transmitted n times through an erasure channel.
double erasure_upper_bound_mi(double e, std::span<const double> input_dist, int n);

}  // namespace lcmi
