#include "lcmi/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lcmi/scalar.hpp"

namespace lcmi {
namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kSumTol = 1e-12;

void check_distribution(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative probability");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kSumTol)
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " + std::to_string(sum));
}

}  // namespace

double shannon_entropy(std::span<const double> dist) {
  check_distribution(dist, "shannon_entropy");
  double nats = 0.0;
  for (double v : dist)
    if (v > 0.0) nats -= v * std::log(v);
  return nats / kLn2;
}

BmsChannel::BmsChannel(std::vector<BmsState> states) {
  double total = 0.0;
  for (BmsState s : states) {
    if (!(s.weight >= 0.0)) throw std::invalid_argument("BmsChannel: negative state weight");
    if (!(s.crossover >= 0.0 && s.crossover <= 1.0))
      throw std::invalid_argument("BmsChannel: crossover outside [0,1]");
    total += s.weight;
    if (s.weight == 0.0) continue;
    if (s.crossover > 0.5) s.crossover = 1.0 - s.crossover;
    states_.push_back(s);
  }
  if (states_.empty() || std::fabs(total - 1.0) > kSumTol)
    throw std::invalid_argument("BmsChannel: state weights must sum to 1");
}

double BmsChannel::capacity() const {
  double c = 0.0;
  for (const BmsState& s : states_) c += s.weight * (1.0 - binary_entropy(s.crossover));
  return c;
}

BmsChannel bms_from_bsc(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("bms_from_bsc: capacity outside [0,1]");
  return BmsChannel({{1.0, binary_entropy_inv(1.0 - t)}});
}

BmsChannel bms_from_bec(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("bms_from_bec: capacity outside [0,1]");
  if (t == 0.0) return BmsChannel({{1.0, 0.5}});
  if (t == 1.0) return BmsChannel({{1.0, 0.0}});
  return BmsChannel({{t, 0.0}, {1.0 - t, 0.5}});
}

BmsChannel bms_two_state(double weight, double capacity, double spread) {
  if (!(weight > 0.0 && weight < 1.0))
    throw std::domain_error("bms_two_state: weight must lie in (0,1)");
  if (!(capacity > 0.0 && capacity < 1.0))
    throw std::domain_error("bms_two_state: capacity must lie in (0,1)");
  if (!(spread > 0.0 && spread <= 1.0))
    throw std::domain_error("bms_two_state: spread must lie in (0,1]");
  const double s = spread * std::min((1.0 - capacity) / (1.0 - weight), capacity / weight);
  const double c1 = capacity + s * (1.0 - weight);
  const double c2 = capacity - s * weight;
  return BmsChannel({{weight, binary_entropy_inv(1.0 - c1)},
                     {1.0 - weight, binary_entropy_inv(1.0 - c2)}});
}

double capacity(const BmsChannel& ch) { return ch.capacity(); }

Dmc::Dmc(std::vector<std::vector<double>> transition, std::vector<double> input_dist)
    : w_(std::move(transition)), input_dist_(std::move(input_dist)) {
  if (w_.empty() || w_.size() != input_dist_.size())
    throw std::invalid_argument("Dmc: transition rows must match the input alphabet");
  const std::size_t ny = w_[0].size();
  if (ny == 0) throw std::invalid_argument("Dmc: empty output alphabet");
  for (const auto& row : w_) {
    if (row.size() != ny) throw std::invalid_argument("Dmc: ragged transition matrix");
    check_distribution(row, "Dmc row");
  }
  check_distribution(input_dist_, "Dmc input distribution");
}

std::vector<double> Dmc::output_dist() const {
  std::vector<double> py(output_size(), 0.0);
  for (int x = 0; x < input_size(); ++x)
    for (int y = 0; y < output_size(); ++y) py[y] += input_dist_[x] * w_[x][y];
  return py;
}

double Dmc::mutual_information() const {
  const std::vector<double> py = output_dist();
  double nats = 0.0;
  for (int x = 0; x < input_size(); ++x) {
    if (input_dist_[x] == 0.0) continue;
    for (int y = 0; y < output_size(); ++y) {
      const double w = w_[x][y];
      if (w > 0.0) nats += input_dist_[x] * w * (std::log(w) - std::log(py[y]));
    }
  }
  return std::max(nats, 0.0) / kLn2;
}

double capacity(const Dmc& ch) { return ch.mutual_information(); }

Dmc dmc_bsc(double crossover, double prob_one) {
  if (!(crossover >= 0.0 && crossover <= 1.0))
    throw std::domain_error("dmc_bsc: crossover outside [0,1]");
  return Dmc({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}},
             {1.0 - prob_one, prob_one});
}

Dmc dmc_erasure(double e, std::vector<double> input_dist) {
  if (!(e >= 0.0 && e <= 1.0)) throw std::domain_error("dmc_erasure: e outside [0,1]");
  const int nx = static_cast<int>(input_dist.size());
  std::vector<std::vector<double>> w(nx, std::vector<double>(nx + 1, 0.0));
  for (int x = 0; x < nx; ++x) {
    w[x][x] = 1.0 - e;
    w[x][nx] = e;
  }
  return Dmc(std::move(w), std::move(input_dist));
}

Dmc dmc_identity(std::vector<double> input_dist) {
  const int nx = static_cast<int>(input_dist.size());
  std::vector<std::vector<double>> w(nx, std::vector<double>(nx, 0.0));
  for (int x = 0; x < nx; ++x) w[x][x] = 1.0;
  return Dmc(std::move(w), std::move(input_dist));
}

double erasure_upper_bound_mi(double e, std::span<const double> input_dist, int n) {
  if (!(e >= 0.0 && e <= 1.0)) throw std::domain_error("erasure_upper_bound_mi: e outside [0,1]");
  if (n < 1) throw std::domain_error("erasure_upper_bound_mi: n must be >= 1");
  return (1.0 - std::pow(e, n)) * shannon_entropy(input_dist);
}

}  // namespace lcmi
