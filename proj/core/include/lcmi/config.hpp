#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmi/channels.hpp"
#include "lcmi/codes.hpp"
#include "lcmi/engines.hpp"

namespace lcmi {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double start = 0.05;
  double stop = 0.95;
  int points = 19;
  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

// Sweep configuration. Serialized as flat `key = value` lines under
// [section] headers (diff-friendly in experiment logs); list entries repeat
// their key. parse_sweep_config(format_sweep_config(c)) == c.
struct SweepConfig {
  std::vector<std::string> corpus;    // code specs; empty = default corpus
  std::vector<std::string> channels;  // BMS channel specs (corollary sandwiches)
  std::vector<std::string> bounds;    // bound names; empty = default set
  GridSpec t_grid;
  int ratio_grid_points = 512;  // lemma1 monotonicity / epsilon grids
  int combining_n_min = 1;      // transmission counts for combining runs
  int combining_n_max = 200;
  EngineLimits limits;
  std::uint64_t mc_samples = 100'000;
  std::uint64_t master_seed = 1;
  double tol_inv = 1e-12;     // documented floor for the entropy-inverse solve
  double tol_verdict = 1e-9;  // exact-comparison verdict tolerance, in bits
  double z = 4.0;             // Monte Carlo noise band, in standard errors
  int workers = 0;            // 0 = LCMI_WORKERS env var, else hardware count
  std::string timestamp = "-";  // emitted verbatim; wall-clock would break
                                // byte-for-byte reproducibility of reports
  std::string csv_path = "reports.csv";
  std::string json_path = "reports.jsonl";

  bool operator==(const SweepConfig&) const = default;
};

SweepConfig parse_sweep_config(std::istream& in);
std::string format_sweep_config(const SweepConfig& config);

// Config with the default corpus and bound set filled in; an explicitly
// empty corpus in a config file stays empty (and sweeps to an empty report).
SweepConfig default_sweep_config();

// repetition:1..12, spc:3..12, hamming74, rm1:3, random:10:4:{101..105},
// random:14:7:{201..205}.
std::vector<std::string> default_corpus();
std::vector<std::string> default_bounds();

struct NamedCode {
  std::string name;
  BinaryLinearCode code;
};

// Code specs: repetition:N | spc:N | hamming74 | rm1:M | fullspace:N |
// random:N:K:SEED | file:PATH.
NamedCode make_code_from_spec(const std::string& spec);

struct NamedBmsChannel {
  std::string name;
  BmsChannel channel;
};

// Channel specs: bec:CAP | bsc:CAP | bscp:CROSSOVER | bms:w,p;w,p;...
NamedBmsChannel parse_bms_channel_spec(const std::string& spec);

// Repeated-transmission channel specs: bsc:CAP | bscp:CROSSOVER | ec:E, with
// the binary input distribution Bern(px). Closed-form eta / more-capable
// erasure parameters are attached where they are valid upper bounds.
struct NamedDmc {
  std::string name;
  Dmc dmc;
  std::optional<double> eta_closed_form;
  std::optional<double> c_mc;
};
NamedDmc parse_dmc_spec(const std::string& spec, double px);

int resolve_worker_count(int configured);

}  // namespace lcmi
