#include "lcmi/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lcmi/bounds.hpp"
#include "lcmi/config.hpp"
#include "lcmi/scalar.hpp"
#include "lcmi/sweep.hpp"

namespace lcmi {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int exit_for(const VerdictCounts& counts) { return counts.violated > 0 ? 1 : 0; }

void print_report(const BoundReport& r) {
  std::cout << r.bound_name << " [" << r.params << "]: bound=" << format_g12(r.bound_value)
            << " measured=" << format_g12(r.measured_value);
  if (r.measured_std_err > 0.0) std::cout << " std_err=" << format_g12(r.measured_std_err);
  std::cout << " slack=" << format_g12(r.slack) << " verdict=" << to_string(r.verdict) << '\n';
}

int exit_for(const BoundReport& r) { return r.verdict == Verdict::kViolated ? 1 : 0; }

struct MiArgs {
  std::string code, channel;
  bool mc = false;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  EngineLimits limits;
};

int run_mi(const MiArgs& a) {
  const NamedCode nc = make_code_from_spec(a.code);
  const NamedBmsChannel nch = parse_bms_channel_spec(a.channel);
  const std::string kind = a.channel.substr(0, a.channel.find(':'));
  MIResult res;
  if (kind == "bec") {
    const double t = nch.channel.capacity();
    res = a.mc ? bec_mi_mc(nc.code, t, a.samples, a.seed) : bec_mi_exact(nc.code, t, a.limits);
  } else if (!a.mc && (kind == "bsc" || kind == "bscp")) {
    res = bsc_mi_exact(nc.code, nch.channel.capacity(), a.limits);
  } else {
    res = bms_mi(nc.code, nch.channel, a.mc ? Method::kMonteCarlo : Method::kExact, a.samples,
                 a.seed, a.limits);
  }
  if (res.method == Method::kMonteCarlo)
    std::cout << format_g12(res.value) << ' ' << format_g12(res.std_err) << '\n';
  else
    std::cout << format_g12(res.value) << '\n';
  return 0;
}

struct VerifyArgs {
  std::string bound;
  std::string code;
  std::string channel;
  double iid_p = kNan;
  double t = kNan;
  double t1 = kNan;
  int ratio_points = 512;
  int grid_points = 512;
  EngineLimits limits;
  VerdictPolicy policy;
};

int run_verify(const VerifyArgs& a) {
  const bool has_t = !std::isnan(a.t);

  if (a.bound == "thm1" && !std::isnan(a.iid_p)) {
    // Product-input counterexample: for X^n ~ Bern(p)^n both sides scale
    // linearly in n, so the per-symbol comparison decides the verdict.
    if (!has_t) throw ConfigError("verify thm1 --iid-p requires --t");
    const double g = iid_bsc_mi_per_symbol(a.t, a.iid_p);
    const double bound = a.t * binary_entropy(a.iid_p);
    const MIResult measured{g, Method::kExact, 0.0, 0, 0};
    const BoundReport r =
        verify("thm1", "iid bern(" + format_g12(a.iid_p) + ") t=" + format_g12(a.t), bound,
               measured, BoundKind::kLowerBound, a.policy);
    print_report(r);
    return exit_for(r);
  }

  if (a.code.empty()) throw ConfigError("verify: --code is required");
  const NamedCode nc = make_code_from_spec(a.code);

  if (a.bound == "thm1" || a.bound == "sam_psi" || a.bound == "sam_mgl") {
    if (!has_t) throw ConfigError("verify " + a.bound + " requires --t");
    BoundReport r;
    const std::string params = nc.name + " t=" + format_g12(a.t);
    if (a.bound == "sam_mgl") {
      const MIResult h{output_entropy_bsc_exact(nc.code, a.t, a.limits), Method::kExact, 0, 0, 0};
      r = verify(a.bound, params, sam_mgl_entropy_bound(nc.code, a.t, a.limits), h,
                 BoundKind::kLowerBound, a.policy);
    } else {
      const MIResult mi = bsc_mi_exact(nc.code, a.t, a.limits);
      const double t1 = std::isnan(a.t1) ? sdpi_eta_bsc(a.t) : a.t1;
      const double bound = a.bound == "thm1" ? thm1_bound(nc.code, a.t, a.limits).bound
                                             : sam_psi_bound(nc.code, a.t, t1, a.limits);
      r = verify(a.bound, params, bound, mi, BoundKind::kLowerBound, a.policy);
    }
    print_report(r);
    return exit_for(r);
  }

  if (a.bound == "cor1" || a.bound == "cor2") {
    if (a.channel.empty()) throw ConfigError("verify " + a.bound + " requires --channel");
    const NamedBmsChannel nch = parse_bms_channel_spec(a.channel);
    const double t = nch.channel.capacity();
    const MIResult mi = bms_mi(nc.code, nch.channel, Method::kExact, 0, 0, a.limits);
    const double lower_cap = a.bound == "cor1" ? sdpi_eta_bsc(t) : t;
    const double lo = alpha(t) * bec_mi_exact(nc.code, lower_cap, a.limits).value;
    const double hi = bec_mi_exact(nc.code, t, a.limits).value;
    const std::string params = nc.name + " " + nch.name;
    const BoundReport rl =
        verify(a.bound + "_lower", params, lo, mi, BoundKind::kLowerBound, a.policy);
    const BoundReport rh =
        verify(a.bound + "_upper", params, hi, mi, BoundKind::kUpperBound, a.policy);
    print_report(rl);
    print_report(rh);
    return std::max(exit_for(rl), exit_for(rh));
  }

  if (a.bound == "lemma1") {
    std::vector<double> grid;
    for (int i = 1; i <= a.ratio_points; ++i)
      grid.push_back(static_cast<double>(i) / a.ratio_points);
    const BoundReport r = check_bec_ratio_monotone(nc.code, grid, 1e-12, a.limits);
    print_report(r);
    return exit_for(r);
  }

  if (a.bound == "thm3") {
    const double rate = nc.code.rate();
    const double eps = estimate_epsilon(nc.code, a.grid_points, a.limits);
    std::vector<double> ts = has_t ? std::vector<double>{a.t} : GridSpec{}.values();
    double min_slack = std::numeric_limits<double>::infinity();
    double worst_t = ts.front();
    for (double t : ts) {
      const double slack =
          bsc_mi_exact(nc.code, t, a.limits).value - thm3_bound(nc.code.length(), rate, eps, t);
      if (slack < min_slack) {
        min_slack = slack;
        worst_t = t;
      }
    }
    const MIResult measured{min_slack, Method::kExact, 0.0, 0, 0};
    const BoundReport r = verify(
        "thm3", nc.name + " eps=" + format_g12(eps) + " worst_t=" + format_g12(worst_t) +
        " over " + std::to_string(ts.size()) + " grid point(s)",
        0.0, measured, BoundKind::kLowerBound, a.policy);
    print_report(r);
    return exit_for(r);
  }

  throw ConfigError("verify: unknown bound '" + a.bound + "'");
}

struct CombiningArgs {
  double px = 0.5;
  std::string channel;
  std::string config_path;
  double eta = kNan;
  std::string eta_source = "closed_form";  // closed_form | user | estimated
  int n_min = -1;  // -1 = take the config's combining range
  int n_max = -1;
  double c_mc = kNan;
  double widen = kNan;
  std::string csv_path, json_path;
  EngineLimits limits;
};

int run_combining(const CombiningArgs& a) {
  SweepConfig base = default_sweep_config();
  base.csv_path.clear();
  base.json_path.clear();
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw ConfigError("cannot open config '" + a.config_path + "'");
    base = parse_sweep_config(in);
  }
  const int n_min = a.n_min > 0 ? a.n_min : base.combining_n_min;
  const int n_max = a.n_max > 0 ? a.n_max : base.combining_n_max;
  if (n_max < n_min) throw ConfigError("combining: n range is empty");

  const NamedDmc nd = parse_dmc_spec(a.channel, a.px);
  const double i1 = capacity(nd.dmc);
  const double h = shannon_entropy(nd.dmc.input_dist());

  double eta = kNan;
  std::string source = a.eta_source;
  if (!std::isnan(a.eta)) {
    eta = a.eta;
    source = "user";
  } else if (a.eta_source == "estimated") {
    const EtaEstimate est = sdpi_eta_estimate(nd.dmc);
    eta = est.eta;
    source = "estimated(" + est.method + ")";
  } else if (a.eta_source == "closed_form") {
    if (!nd.eta_closed_form)
      throw ConfigError("combining: no closed-form eta for '" + a.channel +
                        "'; pass --eta or --eta-source estimated");
    eta = *nd.eta_closed_form;
  } else {
    throw ConfigError("combining: unknown eta source '" + a.eta_source + "'");
  }

  VerdictPolicy policy{base.tol_verdict, base.z, 0.0};
  // An estimated eta is a lower estimate, so a spurious shortfall of the
  // bound must land in the inconclusive band rather than read as violated.
  if (std::isnan(a.widen)) {
    if (source.rfind("estimated", 0) == 0) policy.widen = 1e-6;
  } else {
    policy.widen = a.widen;
  }

  const std::optional<double> c_mc =
      !std::isnan(a.c_mc) ? std::optional<double>(a.c_mc) : nd.c_mc;

  SweepConfig out_cfg;
  out_cfg.csv_path = a.csv_path.empty() ? base.csv_path : a.csv_path;
  out_cfg.json_path = a.json_path.empty() ? base.json_path : a.json_path;
  const std::string params_base = nd.name + " px=" + format_g12(a.px) +
                                  " eta=" + format_g12(eta) + " source=" + source;

  std::vector<ReportRecord> records;
  auto add_record = [&](const BoundReport& b, const MIResult& mi, int n) {
    ReportRecord r;
    r.run_id = "combining";
    r.timestamp = "-";
    r.code_name = "repeated_input";
    r.n = n;
    r.k = 0;
    r.channel = nd.name + ",px=" + format_g12(a.px);
    r.t = kNan;
    r.quantity = "I_repeated_exact";
    r.method = to_string(mi.method);
    r.value = b.measured_value;
    r.std_err = b.measured_std_err;
    r.bound_name = b.bound_name;
    r.bound_value = b.bound_value;
    r.slack = b.slack;
    r.verdict = to_string(b.verdict);
    records.push_back(std::move(r));
  };

  double min_slack_lower = std::numeric_limits<double>::infinity();
  for (int n = n_min; n <= n_max; ++n) {
    const MIResult mi = repeated_input_mi_exact(nd.dmc, n, a.limits);
    const std::string params = params_base + " n=" + std::to_string(n);
    const double lower = combining_bound(i1, h, eta, n);
    const double relax = combining_exp_relaxation(i1, eta, n);
    const CombiningUpperBounds ub = combining_upper_bounds(i1, h, n, c_mc);
    const BoundReport rl = verify("thm2", params, lower, mi, BoundKind::kLowerBound, policy);
    min_slack_lower = std::min(min_slack_lower, rl.slack);
    add_record(rl, mi, n);
    add_record(verify("thm2_exp", params, relax, mi, BoundKind::kLowerBound, policy), mi, n);
    add_record(verify("ub_repeated", params, ub.repeated, mi, BoundKind::kUpperBound, policy), mi, n);
    add_record(verify("ub_entropy", params, ub.entropy, mi, BoundKind::kUpperBound, policy), mi, n);
    if (ub.more_capable)
      add_record(verify("ub_more_capable", params, *ub.more_capable, mi, BoundKind::kUpperBound,
                        policy), mi, n);
  }

  const VerdictCounts counts = emit_reports(records, out_cfg);
  std::cout << "combining " << params_base << ": n=" << n_min << ".." << n_max
            << " min_thm2_slack=" << format_g12(min_slack_lower) << " verdicts: " << counts.holds
            << " holds, " << counts.violated << " violated, " << counts.inconclusive
            << " inconclusive\n";
  return exit_for(counts);
}

struct EpsilonArgs {
  std::string code;
  int grid_points = 512;
  int t_points = 19;
  std::string csv_path, json_path;
  EngineLimits limits;
  VerdictPolicy policy;
};

int run_epsilon(const EpsilonArgs& a) {
  const NamedCode nc = make_code_from_spec(a.code);
  const double rate = nc.code.rate();
  const double eps = estimate_epsilon(nc.code, a.grid_points, a.limits);
  const double ts = tstar(rate);

  SweepConfig out_cfg;
  out_cfg.csv_path = a.csv_path;
  out_cfg.json_path = a.json_path;

  std::vector<ReportRecord> records;
  auto add_record = [&](const BoundReport& b, double t) {
    ReportRecord r;
    r.run_id = "epsilon";
    r.timestamp = "-";
    r.code_name = nc.name;
    r.n = nc.code.length();
    r.k = nc.code.dimension();
    r.channel = "bsc";
    r.t = t;
    r.quantity = "I_bsc_exact";
    r.method = "exact";
    r.value = b.measured_value;
    r.std_err = 0.0;
    r.bound_name = b.bound_name;
    r.bound_value = b.bound_value;
    r.slack = b.slack;
    r.verdict = to_string(b.verdict);
    records.push_back(std::move(r));
  };

  GridSpec grid;
  grid.points = a.t_points;
  for (double t : grid.values()) {
    const MIResult mi = bsc_mi_exact(nc.code, t, a.limits);
    const double bound = thm3_bound(nc.code.length(), rate, eps, t);
    add_record(verify("thm3", nc.name + " eps=" + format_g12(eps) + " t=" + format_g12(t), bound,
                      mi, BoundKind::kLowerBound, a.policy), t);
  }
  // Branch continuity at t*: both cases of the bound agree there.
  {
    const double factor = nc.code.length() * (1.0 - eps / rate);
    const double below = factor * ts;
    const double above = factor * ts * rate / sdpi_eta_bsc(ts);
    const MIResult measured{below, Method::kExact, 0.0, 0, 0};
    add_record(verify("thm3_continuity", nc.name + " tstar=" + format_g12(ts), above, measured,
                      BoundKind::kLowerBound, a.policy), ts);
  }

  const VerdictCounts counts = emit_reports(records, out_cfg);
  std::cout << "epsilon " << nc.name << ": R=" << format_g12(rate) << " eps=" << format_g12(eps)
            << " tstar=" << format_g12(ts) << " verdicts: " << counts.holds << " holds, "
            << counts.violated << " violated, " << counts.inconclusive << " inconclusive\n";
  return exit_for(counts);
}

struct ScalarsArgs {
  int points = 100;
  double x = 0.5;
  std::string csv_path;
};

int run_scalars(const ScalarsArgs& a) {
  if (a.points < 1) throw ConfigError("scalars: --points must be >= 1");
  std::ostringstream out;
  out << "t,crossover,eta,alpha,phi_x,psi_x\n";
  for (int i = 0; i <= a.points; ++i) {
    const double t = static_cast<double>(i) / a.points;
    out << format_g12(t) << ',' << format_g12(binary_entropy_inv(1.0 - t)) << ','
        << format_g12(sdpi_eta_bsc(t)) << ',' << format_g12(alpha(t)) << ','
        << format_g12(mgl_phi(t, a.x)) << ',' << format_g12(psi(t, a.x)) << '\n';
  }
  if (a.csv_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(a.csv_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open CSV output '" + a.csv_path + "'");
    file << out.str();
  }
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"exact and Monte Carlo mutual information for binary linear codes over "
               "binary-input channels, with bound verification"};
  app.require_subcommand(1);

  MiArgs mi_args;
  CLI::App* mi = app.add_subcommand("mi", "compute one mutual-information value");
  mi->add_option("--code", mi_args.code, "code spec, e.g. repetition:3")->required();
  mi->add_option("--channel", mi_args.channel, "channel spec, e.g. bec:0.5")->required();
  mi->add_flag("--mc", mi_args.mc, "Monte Carlo estimate instead of exact");
  bool exact_flag = false;
  mi->add_flag("--exact", exact_flag, "exact computation (default)");
  mi->add_option("--samples", mi_args.samples, "Monte Carlo samples");
  mi->add_option("--seed", mi_args.seed, "Monte Carlo seed");
  mi->add_option("--subset-limit", mi_args.limits.exact_subset_limit, "BEC 2^n subset limit");
  mi->add_option("--enum-limit", mi_args.limits.exact_enum_limit, "BSC 2^n enumeration limit");

  VerifyArgs verify_args;
  CLI::App* ver = app.add_subcommand("verify", "run one named bound check");
  ver->add_option("bound", verify_args.bound,
                  "thm1 | sam_psi | sam_mgl | cor1 | cor2 | lemma1 | thm3")->required();
  ver->add_option("--code", verify_args.code, "code spec");
  ver->add_option("--channel", verify_args.channel, "BMS channel spec (cor1/cor2)");
  ver->add_option("--iid-p", verify_args.iid_p, "replace the code by iid Bern(p) input (thm1)");
  ver->add_option("--t", verify_args.t, "BSC capacity");
  ver->add_option("--t1", verify_args.t1, "BEC capacity for sam_psi (default eta_t)");
  ver->add_option("--ratio-points", verify_args.ratio_points, "lemma1 grid points");
  ver->add_option("--grid-points", verify_args.grid_points, "epsilon grid points (thm3)");
  ver->add_option("--tol", verify_args.policy.tol, "verdict tolerance in bits");

  std::string sweep_config_path, sweep_csv, sweep_json;
  int sweep_workers = -1;
  CLI::App* sw = app.add_subcommand("sweep", "full corpus x grid bound verification");
  sw->add_option("--config", sweep_config_path, "sweep config file (default: built-in corpus)");
  sw->add_option("--csv", sweep_csv, "override CSV output path");
  sw->add_option("--json", sweep_json, "override JSON-lines output path");
  sw->add_option("--workers", sweep_workers, "override worker count");

  CombiningArgs comb_args;
  CLI::App* comb = app.add_subcommand("combining", "repeated-transmission bound suite");
  comb->add_option("--px", comb_args.px, "P(X=1) of the binary input")->required();
  comb->add_option("--channel", comb_args.channel, "bsc:CAP | bscp:P | ec:E")->required();
  comb->add_option("--config", comb_args.config_path, "sweep config supplying n range and tolerances");
  comb->add_option("--eta", comb_args.eta, "user-supplied SDPI upper bound");
  comb->add_option("--eta-source", comb_args.eta_source, "closed_form | estimated");
  comb->add_option("--n-min", comb_args.n_min, "smallest transmission count");
  comb->add_option("--n-max", comb_args.n_max, "largest transmission count");
  comb->add_option("--c-mc", comb_args.c_mc, "more-capable erasure parameter for the upper bound");
  comb->add_option("--widen", comb_args.widen, "extra inconclusive band in bits");
  comb->add_option("--csv", comb_args.csv_path, "CSV output path");
  comb->add_option("--json", comb_args.json_path, "JSON-lines output path");

  EpsilonArgs eps_args;
  CLI::App* eps = app.add_subcommand("epsilon", "information-capacity gap analysis for a code");
  eps->add_option("--code", eps_args.code, "code spec")->required();
  eps->add_option("--grid-points", eps_args.grid_points, "epsilon grid points");
  eps->add_option("--t-points", eps_args.t_points, "verification grid points");
  eps->add_option("--csv", eps_args.csv_path, "CSV output path");
  eps->add_option("--json", eps_args.json_path, "JSON-lines output path");

  ScalarsArgs scalar_args;
  CLI::App* sc = app.add_subcommand("scalars", "tabulate h^{-1}, eta_t, alpha_t, phi/psi");
  sc->add_option("--points", scalar_args.points, "grid resolution over [0,1]");
  sc->add_option("--x", scalar_args.x, "argument for the phi/psi columns");
  sc->add_option("--csv", scalar_args.csv_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mi) return run_mi(mi_args);
    if (*ver) return run_verify(verify_args);
    if (*sw) {
      SweepConfig cfg = default_sweep_config();
      if (!sweep_config_path.empty()) {
        std::ifstream in(sweep_config_path);
        if (!in) throw ConfigError("cannot open config '" + sweep_config_path + "'");
        cfg = parse_sweep_config(in);
      }
      if (!sweep_csv.empty()) cfg.csv_path = sweep_csv;
      if (!sweep_json.empty()) cfg.json_path = sweep_json;
      if (sweep_workers >= 0) cfg.workers = sweep_workers;
      const std::vector<ReportRecord> records = run_sweep(cfg);
      const VerdictCounts counts = emit_reports(records, cfg);
      std::cout << "records: " << records.size() << "; verdicts: " << counts.holds << " holds, "
                << counts.violated << " violated, " << counts.inconclusive << " inconclusive\n";
      return exit_for(counts);
    }
    if (*comb) return run_combining(comb_args);
    if (*eps) return run_epsilon(eps_args);
    if (*sc) return run_scalars(scalar_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace lcmi
