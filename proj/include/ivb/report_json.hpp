#pragma once

// JSON report assembly. Every report embeds a RunManifest so a result can be
// traced back to its command line. Key order is fixed (ordered_json) and
// doubles use the library's shortest round-trip printing, so identical runs
// produce byte-identical output. Exact-mode scalars serialize as "num/den"
// strings, with a float twin field alongside for casual readers.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivb/bounds.hpp"
#include "ivb/feasibility.hpp"
#include "ivb/law_io.hpp"
#include "ivb/market.hpp"
#include "ivb/oracle.hpp"

namespace ivb {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> flags;  // canonical "name=value" strings
  std::uint64_t seed = 0;
  std::string mode;  // "rational" | "float"
};

inline nlohmann::ordered_json manifest_json(const RunManifest& m) {
  return {{"command", m.command}, {"inputs", m.inputs}, {"flags", m.flags},
          {"seed", m.seed},       {"mode", m.mode},     {"version", kToolVersion}};
}

namespace detail {

template <typename T>
nlohmann::ordered_json interval_json(const Interval<T>& iv) {
  return {scalar_to_json<T>(iv.lo), scalar_to_json<T>(iv.hi)};
}

template <typename T>
nlohmann::ordered_json interval_float_json(const Interval<T>& iv) {
  return {to_double(iv.lo), to_double(iv.hi)};
}

inline nlohmann::ordered_json branch_json(const EnvelopeBranch& b) {
  if (b.cross) return {{"kind", "pair"}, {"z", b.z}, {"ztilde", b.ztilde}};
  return {{"kind", "single"}, {"z", b.z}};
}

}  // namespace detail

template <typename T>
nlohmann::ordered_json bounds_report_json(const BoundsReport<T>& rep, const RunManifest& m) {
  using detail::scalar_to_json;
  nlohmann::ordered_json out;
  static const char* kKeys[4] = {"00", "01", "10", "11"};  // "ij"
  nlohmann::ordered_json g, g_float, argmin;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& term = rep.g_at(i, j);
      g[kKeys[2 * i + j]] = scalar_to_json<T>(term.value);
      g_float[kKeys[2 * i + j]] = to_double(term.value);
      argmin[kKeys[2 * i + j]] = detail::branch_json(term.branch);
    }
  out["g"] = g;
  if constexpr (scalar_traits<T>::exact) out["g_float"] = g_float;
  out["marginal_x0"] = detail::interval_json(rep.marginal_x0);
  out["marginal_x1"] = detail::interval_json(rep.marginal_x1);
  out["ace_sharp"] = detail::interval_json(rep.ace_sharp);
  out["ace_natural"] = detail::interval_json(rep.ace_natural);
  if constexpr (scalar_traits<T>::exact) {
    out["marginal_x0_float"] = detail::interval_float_json(rep.marginal_x0);
    out["marginal_x1_float"] = detail::interval_float_json(rep.marginal_x1);
    out["ace_sharp_float"] = detail::interval_float_json(rep.ace_sharp);
    out["ace_natural_float"] = detail::interval_float_json(rep.ace_natural);
  }
  out["compatible"] = rep.compatible;
  out["argmin"] = argmin;
  out["manifest"] = manifest_json(m);
  return out;
}

template <typename T>
nlohmann::ordered_json inequality_record_json(const InequalityRecord<T>& rec) {
  using detail::scalar_to_json;
  nlohmann::ordered_json out;
  out["kind"] = rec.kind == IneqKind::kMarginal ? "marginal" : "joint";
  out["z"] = rec.z;
  out["y"] = rec.y;
  if (rec.kind == IneqKind::kMarginal)
    out["i"] = rec.i;
  else
    out["ytilde"] = rec.ytilde;
  out["lhs"] = scalar_to_json<T>(rec.lhs);
  out["rhs"] = scalar_to_json<T>(rec.rhs);
  if constexpr (scalar_traits<T>::exact) {
    out["lhs_float"] = to_double(rec.lhs);
    out["rhs_float"] = to_double(rec.rhs);
  }
  out["ok"] = rec.satisfied;
  return out;
}

template <typename T>
nlohmann::ordered_json witness_json(const ResponseTypeDistribution<T>& d) {
  nlohmann::ordered_json types = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < d.types.size(); ++t) {
    if (d.weights[t] == T(0)) continue;
    nlohmann::ordered_json entry;
    entry["y0"] = d.types[t].y0;
    entry["y1"] = d.types[t].y1;
    entry["x_word"] = d.types[t].word;
    entry["weight"] = detail::scalar_to_json<T>(d.weights[t]);
    if constexpr (scalar_traits<T>::exact) entry["weight_float"] = to_double(d.weights[t]);
    types.push_back(std::move(entry));
  }
  return {{"K", d.K}, {"types", types}};
}

// matches: 1 agree, 0 disagree, -1 not applicable (emitted as null).
template <typename T>
nlohmann::ordered_json oracle_report_json(const OracleReport<T>& rep, int matches,
                                          const RunManifest& m) {
  nlohmann::ordered_json out;
  out["feasible"] = rep.feasible;
  if (rep.feasible) {
    out["ace"] = detail::interval_json(rep.ace);
    if constexpr (scalar_traits<T>::exact) out["ace_float"] = detail::interval_float_json(rep.ace);
  } else {
    out["ace"] = nullptr;
  }
  out["monotone"] = rep.monotone;
  if (matches < 0)
    out["matches_closed_form"] = nullptr;
  else
    out["matches_closed_form"] = matches != 0;
  if (rep.feasible) {
    out["witness_min"] = witness_json(rep.witness_min);
    out["witness_max"] = witness_json(rep.witness_max);
  } else {
    out["witness_min"] = nullptr;
    out["witness_max"] = nullptr;
  }
  out["manifest"] = manifest_json(m);
  return out;
}

inline nlohmann::ordered_json averages_json(const IntervalAverages& avg) {
  return {{"p_bar", avg.p_bar},
          {"q_d_bar", avg.q_d_bar},
          {"q_s_bar", avg.q_s_bar},
          {"p_end", avg.p_end},
          {"end_residual", avg.end_residual},
          {"steps", avg.steps},
          {"converged", avg.converged},
          {"diverged", avg.diverged}};
}

}  // namespace ivb
