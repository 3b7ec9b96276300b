#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lcmi/bounds.hpp"
#include "lcmi/config.hpp"

namespace lcmi {

// One bound evaluation. Every record is reproducible from (config, run_id):
// run_id hashes the canonical config text, the timestamp is copied verbatim
// from the config, and Monte Carlo seeds derive from (master_seed, task).
// Numeric fields that do not apply (e.g. t for per-code checks, values of
// skipped tasks) are NaN and serialize as empty CSV cells / JSON nulls.
struct ReportRecord {
  std::string run_id;
  std::string timestamp;
  std::string code_name;
  int n = 0;
  int k = 0;
  std::string channel;
  double t = 0.0;
  std::string quantity;
  std::string method;  // exact | monte_carlo | skipped
  double value = 0.0;
  double std_err = 0.0;
  std::string bound_name;
  double bound_value = 0.0;
  double slack = 0.0;
  std::string verdict;
  std::uint64_t seed = 0;
  std::string reason;  // populated for skipped tasks
};

// Executes all (code, channel, t, bound) combinations of the config on a
// static-block-partitioned worker pool. Output is sorted by keys, never by
// completion order, so identical configs yield identical reports for any
// worker count.
std::vector<ReportRecord> run_sweep(const SweepConfig& config);

void write_csv(std::ostream& out, std::span<const ReportRecord> records);
void write_jsonl(std::ostream& out, std::span<const ReportRecord> records);

struct VerdictCounts {
  int holds = 0;
  int violated = 0;
  int inconclusive = 0;
};
VerdictCounts count_verdicts(std::span<const ReportRecord> records);

// Writes the CSV / JSON-lines files named by the config (empty path = skip).
VerdictCounts emit_reports(const std::vector<ReportRecord>& records, const SweepConfig& config);

std::string run_id_for(const SweepConfig& config);

// Formats a double with 12 significant digits (the report precision).
std::string format_g12(double v);

}  // namespace lcmi
