#include "lcmi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "lcmi/rng.hpp"
#include "lcmi/scalar.hpp"

namespace lcmi {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct TaskContext {
  const SweepConfig* cfg;
  std::string run_id;
};

ReportRecord base_record(const TaskContext& ctx, const NamedCode& nc) {
  ReportRecord r;
  r.run_id = ctx.run_id;
  r.timestamp = ctx.cfg->timestamp;
  r.code_name = nc.name;
  r.n = nc.code.length();
  r.k = nc.code.dimension();
  r.t = kNan;
  r.value = kNan;
  r.std_err = 0.0;
  r.bound_value = kNan;
  r.slack = kNan;
  return r;
}

void fill_from_report(ReportRecord& r, const BoundReport& b, const MIResult& measured) {
  r.method = to_string(measured.method);
  r.value = b.measured_value;
  r.std_err = b.measured_std_err;
  r.bound_name = b.bound_name;
  r.bound_value = b.bound_value;
  r.slack = b.slack;
  r.verdict = to_string(b.verdict);
  r.seed = measured.seed;
}

ReportRecord skipped(ReportRecord r, std::string bound_name, std::string quantity,
                     const std::string& why) {
  r.quantity = std::move(quantity);
  r.method = "skipped";
  r.bound_name = std::move(bound_name);
  r.verdict = to_string(Verdict::kInconclusive);
  r.reason = why;
  return r;
}

}  // namespace

std::string run_id_for(const SweepConfig& config) {
  // Worker count and output destinations never change the records, so they
  // stay out of the hash: a parallel run reproduces the single-worker id.
  SweepConfig semantic = config;
  semantic.workers = 0;
  semantic.csv_path.clear();
  semantic.json_path.clear();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(format_sweep_config(semantic))));
  return buf;
}

std::vector<ReportRecord> run_sweep(const SweepConfig& config) {
  const TaskContext ctx{&config, run_id_for(config)};
  const std::vector<std::string>& bound_names =
      config.bounds.empty() ? default_bounds() : config.bounds;

  std::vector<NamedCode> corpus;
  corpus.reserve(config.corpus.size());
  for (const auto& spec : config.corpus) corpus.push_back(make_code_from_spec(spec));
  std::vector<NamedBmsChannel> channels;
  for (const auto& spec : config.channels) channels.push_back(parse_bms_channel_spec(spec));

  const std::vector<double> t_grid = config.t_grid.values();
  const VerdictPolicy policy{config.tol_verdict, config.z, 0.0};
  const EngineLimits limits = config.limits;

  using Task = std::function<std::vector<ReportRecord>()>;
  std::vector<Task> tasks;

  auto grid_params = [](const NamedCode& nc, double t) {
    return nc.name + " t=" + format_g12(t);
  };

  for (const auto& nc : corpus) {
    for (const std::string& bound : bound_names) {
      if (bound == "thm1" || bound == "sam_psi" || bound == "sam_mgl") {
        for (double t : t_grid) {
          tasks.push_back([&, bound, t]() -> std::vector<ReportRecord> {
            ReportRecord r = base_record(ctx, nc);
            r.channel = "bsc";
            r.t = t;
            try {
              if (bound == "sam_mgl") {
                const MIResult h{output_entropy_bsc_exact(nc.code, t, limits), Method::kExact,
                                 0.0, 0, 0};
                const double b = sam_mgl_entropy_bound(nc.code, t, limits);
                r.quantity = "H_out_bsc_exact";
                fill_from_report(r, verify(bound, grid_params(nc, t), b, h,
                                           BoundKind::kLowerBound, policy), h);
              } else {
                const MIResult mi = bsc_mi_exact(nc.code, t, limits);
                const double b = bound == "thm1"
                                     ? thm1_bound(nc.code, t, limits).bound
                                     : sam_psi_bound(nc.code, t, sdpi_eta_bsc(t), limits);
                r.quantity = "I_bsc_exact";
                fill_from_report(r, verify(bound, grid_params(nc, t), b, mi,
                                           BoundKind::kLowerBound, policy), mi);
              }
            } catch (const EngineLimitError& e) {
              r = skipped(std::move(r), bound,
                          bound == "sam_mgl" ? "H_out_bsc_exact" : "I_bsc_exact", e.what());
              r.t = t;
            }
            return {r};
          });
        }
      } else if (bound == "lemma1") {
        tasks.push_back([&]() -> std::vector<ReportRecord> {
          ReportRecord r = base_record(ctx, nc);
          r.channel = "bec";
          try {
            std::vector<double> grid;
            grid.reserve(config.ratio_grid_points);
            for (int i = 1; i <= config.ratio_grid_points; ++i)
              grid.push_back(static_cast<double>(i) / config.ratio_grid_points);
            const BoundReport b = check_bec_ratio_monotone(nc.code, grid, 1e-12, limits);
            r.quantity = "neg_max_ratio_increase";
            fill_from_report(r, b, MIResult{b.measured_value, Method::kExact, 0.0, 0, 0});
          } catch (const EngineLimitError& e) {
            r = skipped(std::move(r), "lemma1", "neg_max_ratio_increase", e.what());
          }
          return {r};
        });
      } else if (bound == "cor1" || bound == "cor2") {
        for (const auto& nch : channels) {
          tasks.push_back([&, bound]() -> std::vector<ReportRecord> {
            ReportRecord base = base_record(ctx, nc);
            base.channel = nch.name;
            const double t = nch.channel.capacity();
            base.t = t;
            base.quantity = "I_bms_exact";
            try {
              const MIResult mi = bms_mi(nc.code, nch.channel, Method::kExact, 0, 0, limits);
              const double eta = sdpi_eta_bsc(t);
              const double lower_cap = bound == "cor1" ? eta : t;
              const double lo = alpha(t) * bec_mi_exact(nc.code, lower_cap, limits).value;
              const double hi = bec_mi_exact(nc.code, t, limits).value;
              const std::string params = nc.name + " " + nch.name;
              ReportRecord r1 = base, r2 = base;
              fill_from_report(r1, verify(bound + "_lower", params, lo, mi,
                                          BoundKind::kLowerBound, policy), mi);
              fill_from_report(r2, verify(bound + "_upper", params, hi, mi,
                                          BoundKind::kUpperBound, policy), mi);
              return {r1, r2};
            } catch (const EngineLimitError& e) {
              return {skipped(std::move(base), bound, "I_bms_exact", e.what())};
            }
          });
        }
      } else {
        throw ConfigError("sweep: unknown bound '" + bound + "'");
      }
    }
  }

  std::vector<std::vector<ReportRecord>> out(tasks.size());
  const int workers = std::max(1, std::min<int>(resolve_worker_count(config.workers),
                                                static_cast<int>(tasks.size())));
  if (workers <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
  } else {
    // Static block partition: assignment depends only on task count and
    // worker count, never on timing.
    const std::size_t block = (tasks.size() + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = static_cast<std::size_t>(w) * block;
        const std::size_t hi = std::min(tasks.size(), lo + block);
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            out[i] = tasks[i]();
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<ReportRecord> records;
  for (auto& group : out)
    for (auto& r : group) records.push_back(std::move(r));

  std::stable_sort(records.begin(), records.end(), [](const ReportRecord& a, const ReportRecord& b) {
    auto key = [](const ReportRecord& r) {
      return std::make_tuple(r.code_name, r.channel, r.bound_name,
                             std::isnan(r.t) ? -1.0 : r.t, r.quantity);
    };
    return key(a) < key(b);
  });
  return records;
}

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string csv_number(double v) {
  return std::isnan(v) ? std::string() : format_g12(v);
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ReportRecord> records) {
  out << "run_id,timestamp,code_name,n,k,channel,t,quantity,method,value,std_err,"
         "bound_name,bound_value,slack,verdict,seed,reason\n";
  for (const auto& r : records) {
    out << r.run_id << ',' << r.timestamp << ',' << r.code_name << ',' << r.n << ',' << r.k
        << ',' << r.channel << ',' << csv_number(r.t) << ',' << r.quantity << ',' << r.method
        << ',' << csv_number(r.value) << ',' << csv_number(r.std_err) << ',' << r.bound_name
        << ',' << csv_number(r.bound_value) << ',' << csv_number(r.slack) << ',' << r.verdict
        << ',' << r.seed << ',' << r.reason << '\n';
  }
}

void write_jsonl(std::ostream& out, std::span<const ReportRecord> records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["run_id"] = r.run_id;
    j["timestamp"] = r.timestamp;
    j["code_name"] = r.code_name;
    j["n"] = r.n;
    j["k"] = r.k;
    j["channel"] = r.channel;
    auto number = [](double v) {
      return std::isnan(v) ? nlohmann::ordered_json(nullptr)
                           : nlohmann::ordered_json(std::stod(format_g12(v)));
    };
    j["t"] = number(r.t);
    j["quantity"] = r.quantity;
    j["method"] = r.method;
    j["value"] = number(r.value);
    j["std_err"] = number(r.std_err);
    j["bound_name"] = r.bound_name;
    j["bound_value"] = number(r.bound_value);
    j["slack"] = number(r.slack);
    j["verdict"] = r.verdict;
    j["seed"] = r.seed;
    j["reason"] = r.reason;
    out << j.dump() << '\n';
  }
}

VerdictCounts count_verdicts(std::span<const ReportRecord> records) {
  VerdictCounts c;
  for (const auto& r : records) {
    if (r.verdict == "holds") ++c.holds;
    else if (r.verdict == "violated") ++c.violated;
    else ++c.inconclusive;
  }
  return c;
}

VerdictCounts emit_reports(const std::vector<ReportRecord>& records, const SweepConfig& config) {
  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open CSV output '" + config.csv_path + "'");
    write_csv(out, records);
    if (!out) throw std::runtime_error("error writing CSV output '" + config.csv_path + "'");
  }
  if (!config.json_path.empty()) {
    std::ofstream out(config.json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open JSON output '" + config.json_path + "'");
    write_jsonl(out, records);
    if (!out) throw std::runtime_error("error writing JSON output '" + config.json_path + "'");
  }
  return count_verdicts(records);
}

}  // namespace lcmi
