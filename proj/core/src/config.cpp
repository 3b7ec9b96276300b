#include "lcmi/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <thread>

#include "lcmi/scalar.hpp"

namespace lcmi {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected a number, got '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected an integer, got '" + s + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (points < 1) throw ConfigError("grid: points must be >= 1");
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < points; ++i)
    out.push_back(start + (stop - start) * i / (points - 1));
  return out;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  cfg.corpus.clear();
  cfg.channels.clear();
  cfg.bounds.clear();
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (section == "corpus" && key == "code") cfg.corpus.push_back(value);
    else if (section == "channels" && key == "channel") cfg.channels.push_back(value);
    else if (section == "bounds" && key == "bound") cfg.bounds.push_back(value);
    else if (section == "grid" && key == "t_start") cfg.t_grid.start = parse_double(value, where);
    else if (section == "grid" && key == "t_stop") cfg.t_grid.stop = parse_double(value, where);
    else if (section == "grid" && key == "t_points") cfg.t_grid.points = static_cast<int>(parse_int(value, where));
    else if (section == "grid" && key == "ratio_points") cfg.ratio_grid_points = static_cast<int>(parse_int(value, where));
    else if (section == "combining" && key == "n_min") cfg.combining_n_min = static_cast<int>(parse_int(value, where));
    else if (section == "combining" && key == "n_max") cfg.combining_n_max = static_cast<int>(parse_int(value, where));
    else if (section == "engine" && key == "exact_subset_limit") cfg.limits.exact_subset_limit = static_cast<int>(parse_int(value, where));
    else if (section == "engine" && key == "exact_enum_limit") cfg.limits.exact_enum_limit = static_cast<int>(parse_int(value, where));
    else if (section == "engine" && key == "type_budget") cfg.limits.type_budget = static_cast<std::uint64_t>(parse_int(value, where));
    else if (section == "mc" && key == "samples") cfg.mc_samples = static_cast<std::uint64_t>(parse_int(value, where));
    else if (section == "mc" && key == "master_seed") cfg.master_seed = static_cast<std::uint64_t>(parse_int(value, where));
    else if (section == "tolerances" && key == "tol_inv") cfg.tol_inv = parse_double(value, where);
    else if (section == "tolerances" && key == "tol_verdict") cfg.tol_verdict = parse_double(value, where);
    else if (section == "tolerances" && key == "z") cfg.z = parse_double(value, where);
    else if (section == "run" && key == "workers") cfg.workers = static_cast<int>(parse_int(value, where));
    else if (section == "run" && key == "timestamp") cfg.timestamp = value;
    else if (section == "run" && key == "csv") cfg.csv_path = value;
    else if (section == "run" && key == "json") cfg.json_path = value;
    else throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
  }
  if (cfg.t_grid.points < 1) throw ConfigError("config: t_points must be >= 1");
  if (cfg.ratio_grid_points < 2) throw ConfigError("config: ratio_points must be >= 2");
  if (cfg.combining_n_min < 1 || cfg.combining_n_max < cfg.combining_n_min)
    throw ConfigError("config: combining n range must satisfy 1 <= n_min <= n_max");
  if (cfg.limits.exact_subset_limit < 1 || cfg.limits.exact_enum_limit < 1 ||
      cfg.limits.type_budget < 1)
    throw ConfigError("config: engine limits must be positive");
  if (cfg.mc_samples < 1) throw ConfigError("config: mc samples must be >= 1");
  if (cfg.tol_inv < 1e-15) throw ConfigError("config: tol_inv below achievable precision");
  if (cfg.workers < 0) throw ConfigError("config: workers must be >= 0");
  return cfg;
}

std::string format_sweep_config(const SweepConfig& cfg) {
  std::ostringstream out;
  out << "[corpus]\n";
  for (const auto& c : cfg.corpus) out << "code = " << c << '\n';
  out << "[channels]\n";
  for (const auto& c : cfg.channels) out << "channel = " << c << '\n';
  out << "[bounds]\n";
  for (const auto& b : cfg.bounds) out << "bound = " << b << '\n';
  out << "[grid]\n";
  out << "t_start = " << format_double(cfg.t_grid.start) << '\n';
  out << "t_stop = " << format_double(cfg.t_grid.stop) << '\n';
  out << "t_points = " << cfg.t_grid.points << '\n';
  out << "ratio_points = " << cfg.ratio_grid_points << '\n';
  out << "[combining]\n";
  out << "n_min = " << cfg.combining_n_min << '\n';
  out << "n_max = " << cfg.combining_n_max << '\n';
  out << "[engine]\n";
  out << "exact_subset_limit = " << cfg.limits.exact_subset_limit << '\n';
  out << "exact_enum_limit = " << cfg.limits.exact_enum_limit << '\n';
  out << "type_budget = " << cfg.limits.type_budget << '\n';
  out << "[mc]\n";
  out << "samples = " << cfg.mc_samples << '\n';
  out << "master_seed = " << cfg.master_seed << '\n';
  out << "[tolerances]\n";
  out << "tol_inv = " << format_double(cfg.tol_inv) << '\n';
  out << "tol_verdict = " << format_double(cfg.tol_verdict) << '\n';
  out << "z = " << format_double(cfg.z) << '\n';
  out << "[run]\n";
  out << "workers = " << cfg.workers << '\n';
  out << "timestamp = " << cfg.timestamp << '\n';
  out << "csv = " << cfg.csv_path << '\n';
  out << "json = " << cfg.json_path << '\n';
  return out.str();
}

SweepConfig default_sweep_config() {
  SweepConfig cfg;
  cfg.corpus = default_corpus();
  cfg.bounds = default_bounds();
  return cfg;
}

std::vector<std::string> default_corpus() {
  std::vector<std::string> out;
  for (int n = 1; n <= 12; ++n) out.push_back("repetition:" + std::to_string(n));
  for (int n = 3; n <= 12; ++n) out.push_back("spc:" + std::to_string(n));
  out.push_back("hamming74");
  out.push_back("rm1:3");
  for (int s = 101; s <= 105; ++s) out.push_back("random:10:4:" + std::to_string(s));
  for (int s = 201; s <= 205; ++s) out.push_back("random:14:7:" + std::to_string(s));
  return out;
}

std::vector<std::string> default_bounds() {
  return {"thm1", "sam_psi", "sam_mgl", "lemma1"};
}

NamedCode make_code_from_spec(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t want) {
    if (parts.size() != want)
      throw ConfigError("code spec '" + spec + "': expected " + std::to_string(want - 1) +
                        " parameter(s)");
  };
  try {
    if (kind == "repetition") {
      arity(2);
      return {spec, repetition(static_cast<int>(parse_int(parts[1], spec)))};
    }
    if (kind == "spc") {
      arity(2);
      return {spec, single_parity_check(static_cast<int>(parse_int(parts[1], spec)))};
    }
    if (kind == "hamming74") {
      arity(1);
      return {spec, hamming_7_4()};
    }
    if (kind == "rm1") {
      arity(2);
      return {spec, reed_muller_1(static_cast<int>(parse_int(parts[1], spec)))};
    }
    if (kind == "fullspace") {
      arity(2);
      return {spec, full_space(static_cast<int>(parse_int(parts[1], spec)))};
    }
    if (kind == "random") {
      arity(4);
      return {spec, random_code(static_cast<int>(parse_int(parts[1], spec)),
                                static_cast<int>(parse_int(parts[2], spec)),
                                static_cast<std::uint64_t>(parse_int(parts[3], spec)))};
    }
    if (kind == "file") {
      arity(2);
      std::ifstream in(parts[1]);
      if (!in) throw ConfigError("code spec '" + spec + "': cannot open file");
      return {spec, parse_code_file(in)};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("code spec '" + spec + "': " + e.what());
  }
  throw ConfigError("code spec '" + spec + "': unknown kind '" + kind + "'");
}

NamedBmsChannel parse_bms_channel_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "bec") return {spec, bms_from_bec(parse_double(rest, spec))};
    if (kind == "bsc") return {spec, bms_from_bsc(parse_double(rest, spec))};
    if (kind == "bscp") return {spec, BmsChannel({{1.0, parse_double(rest, spec)}})};
    if (kind == "bms") {
      std::vector<BmsState> states;
      for (const std::string& entry : split(rest, ';')) {
        const auto wp = split(entry, ',');
        if (wp.size() != 2)
          throw ConfigError("channel spec '" + spec + "': state must be 'weight,crossover'");
        states.push_back({parse_double(trim(wp[0]), spec), parse_double(trim(wp[1]), spec)});
      }
      return {spec, BmsChannel(std::move(states))};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channel spec '" + spec + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError("channel spec '" + spec + "': " + e.what());
  }
  throw ConfigError("channel spec '" + spec + "': unknown kind '" + kind + "'");
}

NamedDmc parse_dmc_spec(const std::string& spec, double px) {
  if (!(px > 0.0 && px < 1.0))
    throw ConfigError("repeated-input channel: P(X=1) must lie in (0,1)");
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "bscp" || kind == "bsc") {
      const double v = parse_double(rest, spec);
      const double p = kind == "bscp" ? v : binary_entropy_inv(1.0 - v);
      const double t = 1.0 - binary_entropy(p);
      // (1-2p)^2 upper-bounds eta(P_X, BSC) for every input; the BSC of
      // capacity t is also less capable than the BEC of capacity t.
      const double d = 1.0 - 2.0 * p;
      return {spec, dmc_bsc(p, px), d * d, t};
    }
    if (kind == "ec") {
      const double e = parse_double(rest, spec);
      return {spec, dmc_erasure(e, {1.0 - px, px}), 1.0 - e, 1.0 - e};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channel spec '" + spec + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError("channel spec '" + spec + "': " + e.what());
  }
  throw ConfigError("repeated-input channel spec '" + spec + "': unknown kind '" + kind + "'");
}

int resolve_worker_count(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("LCMI_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace lcmi
