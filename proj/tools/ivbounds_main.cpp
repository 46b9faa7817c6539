// ivbounds: treatment-effect bound reports, model-compatibility checks, the
// response-type LP oracle, and the market difference-equation simulator, all
// behind one batch-friendly command line. Reports go to stdout as JSON (or
// CSV for panels), diagnostics to stderr. Exit codes: 0 success, 1 input or
// usage error, 2 domain verdict (incompatible law, unstable config).

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivb/bounds.hpp"
#include "ivb/feasibility.hpp"
#include "ivb/law_io.hpp"
#include "ivb/market.hpp"
#include "ivb/oracle.hpp"
#include "ivb/report_json.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ivb;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;

struct GlobalOpts {
  std::string format;  // "", "csv", "json"
  bool exact = false;
  bool floating = false;
  double tol = -1;  // negative: unset
  bool pretty = false;
  std::string glob;
};

struct OracleOpts {
  bool no_defiers = false;
  std::string ordered;  // comma-separated arm labels
};

struct CheckOpts {
  std::string joint_path;
  int grid_n = 0;  // 0: plain compatibility verdict
};

struct SimulateOpts {
  std::string config_path;
  long panel = 0;  // 0: single interval
  std::uint64_t seed = 0;
  double delta = 0;  // 0: take from config
  double noise_sd_d = 0.5;
  double noise_sd_s = 0.5;
  double eps_d = 0;
  double eps_s = 0;
  double conv_tol = 1e-6;
};

using AnyLaw = std::variant<ObservedLaw<Rat>, ObservedLaw<double>>;

std::string detect_format(const std::string& path, const GlobalOpts& g) {
  if (!g.format.empty()) return g.format;
  auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".csv") return "csv";
  if (ext == ".json") return "json";
  throw std::invalid_argument("cannot detect input format for '" + path +
                              "': pass --format csv|json");
}

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

bool pmf_has_string_values(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("arms") || !j.at("arms").is_array()) return false;
  for (const auto& arm : j.at("arms")) {
    if (!arm.is_object() || !arm.contains("pmf") || !arm.at("pmf").is_object()) continue;
    for (const auto& [key, value] : arm.at("pmf").items())
      if (value.is_string()) return true;
  }
  return false;
}

template <typename T>
void reject_invalid(const ObservedLaw<T>& law, const std::string& path) {
  auto violations = validate_law(law, scalar_traits<T>::tol());
  if (violations.empty()) return;
  for (const auto& v : violations) std::cerr << path << ": " << v.message << "\n";
  throw std::invalid_argument("invalid law in '" + path + "'");
}

AnyLaw load_law(const std::string& path, const GlobalOpts& g) {
  const std::string format = detect_format(path, g);
  if (format == "csv") {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    ObservedLaw<Rat> law = law_from_counts_csv(in);
    reject_invalid(law, path);
    if (g.floating) return to_float(law);
    return law;
  }
  nlohmann::json j = parse_json_file(path);
  const bool rational = g.exact || (!g.floating && pmf_has_string_values(j));
  if (rational) {
    ObservedLaw<Rat> law = law_from_json<Rat>(j);
    reject_invalid(law, path);
    return law;
  }
  ObservedLaw<double> law = law_from_json<double>(j);
  reject_invalid(law, path);
  return law;
}

template <typename T>
const char* mode_of(const ObservedLaw<T>&) {
  return scalar_traits<T>::mode_name;
}

void print_report(const ordered_json& report, const GlobalOpts& g) {
  std::cout << (g.pretty ? report.dump(2) : report.dump()) << "\n";
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
bool intervals_match(const Interval<T>& a, const Interval<T>& b) {
  if constexpr (scalar_traits<T>::exact)
    return a == b;
  else
    return interval_gap(a, b) <= scalar_traits<T>::tol();
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_bounds(const AnyLaw& any, const RunManifest& manifest, const GlobalOpts& g) {
  return std::visit(
      [&](const auto& law) {
        auto rep = sharp_report(law);
        print_report(bounds_report_json(rep, manifest), g);
        return rep.compatible ? kExitOk : kExitVerdict;
      },
      any);
}

int cmd_oracle(AnyLaw any, const OracleOpts& opts, RunManifest manifest, const GlobalOpts& g) {
  return std::visit(
      [&](auto law) {
        using T = typename std::decay_t<decltype(law)>::value_type;
        if (!opts.ordered.empty()) {
          const auto labels = split_csv_list(opts.ordered);
          if (static_cast<int>(labels.size()) != law.K)
            throw std::invalid_argument("--ordered must list all " + std::to_string(law.K) +
                                        " arm labels");
          std::vector<int> order;
          for (const auto& label : labels) {
            auto it = std::find(law.arm_labels.begin(), law.arm_labels.end(), label);
            if (it == law.arm_labels.end())
              throw std::invalid_argument("unknown arm label '" + label + "' in --ordered");
            order.push_back(static_cast<int>(it - law.arm_labels.begin()) + 1);
          }
          law = permute_arms(law, order);
        }
        auto rep = oracle_ace_bounds(law, opts.no_defiers);
        int matches = -1;
        if (rep.feasible) {
          Interval<T> closed =
              opts.no_defiers
                  ? natural_bounds(law)
                  : ace_from_marginals(
                        marginal_interval(g_value(law, 0, 0).value, g_value(law, 0, 1).value),
                        marginal_interval(g_value(law, 1, 0).value, g_value(law, 1, 1).value));
          matches = intervals_match(rep.ace, closed) ? 1 : 0;
        } else if (!opts.no_defiers) {
          matches = iv_compatible(law) ? 0 : 1;
        }
        print_report(oracle_report_json(rep, matches, manifest), g);
        return rep.feasible ? kExitOk : kExitVerdict;
      },
      std::move(any));
}

int cmd_check(const AnyLaw& any, const CheckOpts& opts, const RunManifest& manifest,
              const GlobalOpts& g) {
  return std::visit(
      [&](const auto& law) {
        using T = typename std::decay_t<decltype(law)>::value_type;
        if (!opts.joint_path.empty()) {
          auto joint = joint_from_json<T>(parse_json_file(opts.joint_path));
          auto records = check_joint(law, joint);
          bool all_ok = true;
          for (const auto& rec : records) {
            print_report(inequality_record_json(rec), g);
            all_ok = all_ok && rec.satisfied;
          }
          print_report(ordered_json{{"all_satisfied", all_ok}, {"manifest", manifest_json(manifest)}},
                       g);
          return all_ok ? kExitOk : kExitVerdict;
        }
        if (opts.grid_n > 0) {
          bool independent;
          try {
            independent = variation_independence_probe(law, opts.grid_n);
          } catch (const std::runtime_error& e) {
            if (std::string(e.what()) == "no feasible rectangle") {
              std::cerr << "error: no feasible rectangle\n";
              return kExitVerdict;
            }
            throw;
          }
          print_report(ordered_json{{"variation_independent", independent},
                                    {"grid_n", opts.grid_n},
                                    {"manifest", manifest_json(manifest)}},
                       g);
          return independent ? kExitOk : kExitVerdict;
        }
        const bool compatible = iv_compatible(law);
        ordered_json out;
        out["compatible"] = compatible;
        if (compatible) {
          auto res = joint_feasible(law);
          out["witness"] = joint_to_json<T>(res.witness);
          if constexpr (scalar_traits<T>::exact)
            out["witness_float"] = joint_to_json<double>(to_float(res.witness));
        } else {
          out["witness"] = nullptr;
        }
        out["manifest"] = manifest_json(manifest);
        print_report(out, g);
        return compatible ? kExitOk : kExitVerdict;
      },
      any);
}

MarketConfig config_from_json(const nlohmann::json& j, const SimulateOpts& opts) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const char* kKnown[] = {"alpha_d", "beta_d", "alpha_s", "beta_s",
                                 "lambda",  "delta",  "p_init"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown),
                     [&](const char* k) { return key == k; }) == std::end(kKnown))
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  auto need = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
      throw std::invalid_argument(std::string("config needs numeric '") + key + "'");
    return j.at(key).get<double>();
  };
  MarketConfig cfg;
  cfg.alpha_d = need("alpha_d");
  cfg.beta_d = need("beta_d");
  cfg.alpha_s = need("alpha_s");
  cfg.beta_s = need("beta_s");
  cfg.lambda = need("lambda");
  if (opts.delta > 0)
    cfg.delta = opts.delta;
  else
    cfg.delta = need("delta");
  cfg.p_init = j.contains("p_init") ? need("p_init") : 0.0;
  return cfg;
}

ordered_json config_json(const MarketConfig& cfg) {
  return {{"alpha_d", cfg.alpha_d}, {"beta_d", cfg.beta_d}, {"alpha_s", cfg.alpha_s},
          {"beta_s", cfg.beta_s},   {"lambda", cfg.lambda}, {"delta", cfg.delta},
          {"p_init", cfg.p_init}};
}

int cmd_simulate(const SimulateOpts& opts, const RunManifest& manifest, const GlobalOpts& g) {
  MarketConfig cfg = config_from_json(parse_json_file(opts.config_path), opts);
  validate_config(cfg);
  auto [contraction, stable] = stability(cfg);

  if (opts.panel > 0) {
    if (!stable) {
      std::cerr << "error: will not equilibrate within the unit interval (contraction "
                << format_double(contraction) << ")\n";
      return kExitVerdict;
    }
    auto rows = run_panel(cfg, opts.panel, opts.noise_sd_d, opts.noise_sd_s, opts.seed);
    std::cout << "# manifest: " << manifest_json(manifest).dump() << "\n";
    std::cout << "t,p_bar,q_bar,eps_d,eps_s\n";
    for (const auto& row : rows)
      std::cout << row.t << "," << format_double(row.p_bar) << "," << format_double(row.q_bar)
                << "," << format_double(row.eps_d) << "," << format_double(row.eps_s) << "\n";
    return kExitOk;
  }

  auto avg = simulate_interval(cfg, opts.eps_d, opts.eps_s, opts.conv_tol);
  auto [p_star, q_star] = equilibrium_point(cfg, opts.eps_d, opts.eps_s);
  ordered_json out;
  out["config"] = config_json(cfg);
  out["eps_d"] = opts.eps_d;
  out["eps_s"] = opts.eps_s;
  out["p_star"] = p_star;
  out["q_star"] = q_star;
  out["contraction"] = contraction;
  out["stable"] = stable;
  out["averages"] = averages_json(avg);
  out["manifest"] = manifest_json(manifest);
  print_report(out, g);
  return stable ? kExitOk : kExitVerdict;
}

// ----------------------------------------------------------- glob fan-out

std::vector<std::string> expand_glob(const std::string& pattern) {
  std::filesystem::path pat(pattern);
  std::filesystem::path dir = pat.parent_path();
  if (dir.empty()) dir = ".";
  std::string name_pat = pat.filename().string();
  std::string rx;
  for (char c : name_pat) {
    if (c == '*')
      rx += ".*";
    else if (c == '?')
      rx += '.';
    else if (std::string("\\^$.|()[]{}+").find(c) != std::string::npos)
      rx += std::string("\\") + c;
    else
      rx += c;
  }
  std::regex re(rx);
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir))
    throw std::invalid_argument("glob directory '" + dir.string() + "' does not exist");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (std::regex_match(entry.path().filename().string(), re))
      out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::invalid_argument("no inputs match pattern '" + pattern + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  OracleOpts oracle_opts;
  CheckOpts check_opts;
  SimulateOpts sim_opts;
  std::string input_path;

  CLI::App app{"Sharp treatment-effect bounds, IV-model checks, and market simulation"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Input format override: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* exact_flag = app.add_flag("--exact", g.exact, "Force exact rational arithmetic");
  app.add_flag("--float", g.floating, "Force double-precision arithmetic")
      ->excludes(exact_flag);
  app.add_option("--tol", g.tol, "Float-mode comparison tolerance (default 1e-9)");
  app.add_flag("--pretty", g.pretty, "Indent JSON output");
  app.add_option("--glob", g.glob, "Process every file matching this pattern");

  auto* bounds_cmd = app.add_subcommand("bounds", "Sharp and natural ACE bound report");
  bounds_cmd->add_option("input", input_path, "Counts CSV or law JSON");

  auto* oracle_cmd = app.add_subcommand("oracle", "Response-type LP certification");
  oracle_cmd->add_option("input", input_path, "Counts CSV or law JSON");
  oracle_cmd->add_flag("--no-defiers", oracle_opts.no_defiers,
                       "Restrict to monotone treatment response (requires --ordered)");
  oracle_cmd->add_option("--ordered", oracle_opts.ordered,
                         "Comma-separated arm labels, lowest instrument level first");

  auto* check_cmd = app.add_subcommand("check", "Model-compatibility checks");
  check_cmd->add_option("input", input_path, "Counts CSV or law JSON");
  check_cmd->add_option("--joint", check_opts.joint_path,
                        "Evaluate all inequality records against this joint JSON");
  check_cmd->add_option("--grid", check_opts.grid_n, "Variation-independence grid probe size")
      ->check(CLI::Range(2, 1000));

  auto* sim_cmd = app.add_subcommand("simulate", "Market difference-equation simulation");
  sim_cmd->add_option("config", sim_opts.config_path, "Market config JSON")->required();
  sim_cmd->add_option("--panel", sim_opts.panel, "Simulate this many unit intervals as a panel")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_opts.seed, "Disturbance RNG seed (panel mode)");
  sim_cmd->add_option("--delta", sim_opts.delta, "Step size override; inverse must be integer");
  sim_cmd->add_option("--noise-sd-d", sim_opts.noise_sd_d, "Demand disturbance sd (default 0.5)");
  sim_cmd->add_option("--noise-sd-s", sim_opts.noise_sd_s, "Supply disturbance sd (default 0.5)");
  sim_cmd->add_option("--eps-d", sim_opts.eps_d, "Fixed demand disturbance (single interval)");
  sim_cmd->add_option("--eps-s", sim_opts.eps_s, "Fixed supply disturbance (single interval)");
  sim_cmd->add_option("--converge-tol", sim_opts.conv_tol,
                      "End-state residual threshold for the converged flag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g.tol >= 0) float_tolerance() = g.tol;
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    if (command != "simulate" && oracle_opts.no_defiers && oracle_opts.ordered.empty())
      throw std::invalid_argument("--no-defiers requires --ordered");
    if (command == "simulate" && !g.glob.empty())
      throw std::invalid_argument("--glob applies to law commands only");
    if (command != "simulate" && g.glob.empty() && input_path.empty())
      throw std::invalid_argument("give an input path or --glob");
    if (command != "simulate" && !g.glob.empty() && !input_path.empty())
      throw std::invalid_argument("give either an input path or --glob, not both");

    // Canonical flag list for the manifest.
    std::vector<std::string> flags;
    if (!g.format.empty()) flags.push_back("format=" + g.format);
    if (g.exact) flags.push_back("exact");
    if (g.floating) flags.push_back("float");
    if (g.tol >= 0) flags.push_back("tol=" + format_double(g.tol));
    if (g.pretty) flags.push_back("pretty");
    if (!g.glob.empty()) flags.push_back("glob=" + g.glob);
    if (oracle_opts.no_defiers) flags.push_back("no-defiers");
    if (!oracle_opts.ordered.empty()) flags.push_back("ordered=" + oracle_opts.ordered);
    if (!check_opts.joint_path.empty()) flags.push_back("joint=" + check_opts.joint_path);
    if (check_opts.grid_n > 0) flags.push_back("grid=" + std::to_string(check_opts.grid_n));
    if (sim_opts.panel > 0) flags.push_back("panel=" + std::to_string(sim_opts.panel));
    if (sim_cmd->count("--seed") > 0) flags.push_back("seed=" + std::to_string(sim_opts.seed));
    if (sim_opts.delta > 0) flags.push_back("delta=" + format_double(sim_opts.delta));
    if (sim_cmd->count("--noise-sd-d") > 0)
      flags.push_back("noise-sd-d=" + format_double(sim_opts.noise_sd_d));
    if (sim_cmd->count("--noise-sd-s") > 0)
      flags.push_back("noise-sd-s=" + format_double(sim_opts.noise_sd_s));
    if (sim_cmd->count("--eps-d") > 0) flags.push_back("eps-d=" + format_double(sim_opts.eps_d));
    if (sim_cmd->count("--eps-s") > 0) flags.push_back("eps-s=" + format_double(sim_opts.eps_s));

    RunManifest manifest;
    manifest.command = command;
    manifest.flags = flags;
    manifest.seed = sim_opts.seed;

    if (command == "simulate") {
      manifest.inputs = {sim_opts.config_path};
      manifest.mode = "float";
      return cmd_simulate(sim_opts, manifest, g);
    }

    const std::vector<std::string> inputs =
        g.glob.empty() ? std::vector<std::string>{input_path} : expand_glob(g.glob);
    int worst = kExitOk;
    for (const auto& path : inputs) {
      AnyLaw law = load_law(path, g);
      RunManifest m = manifest;
      m.inputs = {path};
      m.mode = std::visit([](const auto& l) { return std::string(mode_of(l)); }, law);
      int code = kExitOk;
      if (command == "bounds")
        code = cmd_bounds(law, m, g);
      else if (command == "oracle")
        code = cmd_oracle(std::move(law), oracle_opts, m, g);
      else
        code = cmd_check(law, check_opts, m, g);
      worst = std::max(worst, code);
    }
    return worst;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
