#pragma once

// Observed-law data model: the conditional distribution P(X,Y | Z=z) over
// binary treatment X and binary outcome Y for each of K instrument arms,
// plus the candidate joint distribution over the two potential outcomes.
// Values are immutable after construction and safe to share across threads.

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivb/scalar.hpp"

namespace ivb {

template <typename T>
struct ObservedLaw {
  using value_type = T;

  int K = 0;
  std::vector<std::string> arm_labels;      // K labels, first-appearance order
  std::vector<std::array<T, 4>> cells;      // per arm, index 2*x + y

  // z is 1-based throughout.
  const T& p(int z, int x, int y) const { return cells[z - 1][2 * x + y]; }
  T px(int z, int x) const { return p(z, x, 0) + p(z, x, 1); }
};

// P(Y(x0)=y, Y(x1)=yt), index 2*y + yt.
template <typename T>
struct CounterfactualJoint {
  std::array<T, 4> pi{};

  const T& at(int y, int yt) const { return pi[2 * y + yt]; }
  T& at(int y, int yt) { return pi[2 * y + yt]; }
  // Margins of the two potential outcomes.
  T margin_x0(int y) const { return at(y, 0) + at(y, 1); }
  T margin_x1(int yt) const { return at(0, yt) + at(1, yt); }
  T sum() const { return pi[0] + pi[1] + pi[2] + pi[3]; }
};

struct CountRow {
  std::string z_label;
  int x = 0;
  int y = 0;
  std::int64_t count = 0;
};

struct Violation {
  std::string arm;      // empty when not arm-specific
  std::string message;  // includes the discrepancy
};

// Empirical law from integer cell counts. Cells absent from `rows` count as
// zero. Output is exact: cells(z,x,y) = count / arm total.
inline ObservedLaw<Rat> law_from_counts(const std::vector<CountRow>& rows) {
  ObservedLaw<Rat> law;
  std::map<std::string, int> index_of;  // label -> 0-based arm index
  std::vector<std::array<std::int64_t, 4>> counts;

  for (const CountRow& r : rows) {
    if (r.count < 0)
      throw std::invalid_argument("negative count for arm '" + r.z_label + "'");
    if (r.x != 0 && r.x != 1)
      throw std::invalid_argument("x outside {0,1} for arm '" + r.z_label + "'");
    if (r.y != 0 && r.y != 1)
      throw std::invalid_argument("y outside {0,1} for arm '" + r.z_label + "'");
    auto it = index_of.find(r.z_label);
    if (it == index_of.end()) {
      it = index_of.emplace(r.z_label, static_cast<int>(law.arm_labels.size())).first;
      law.arm_labels.push_back(r.z_label);
      counts.push_back({0, 0, 0, 0});
    }
    counts[it->second][2 * r.x + r.y] += r.count;
  }
  if (counts.empty()) throw std::invalid_argument("no count rows");

  law.K = static_cast<int>(counts.size());
  law.cells.resize(law.K);
  for (int a = 0; a < law.K; ++a) {
    std::int64_t total = counts[a][0] + counts[a][1] + counts[a][2] + counts[a][3];
    if (total == 0)
      throw std::invalid_argument("empty instrument arm '" + law.arm_labels[a] + "'");
    for (int c = 0; c < 4; ++c) {
      law.cells[a][c] = Rat(counts[a][c], total);
      law.cells[a][c].canonicalize();
    }
  }
  return law;
}

namespace detail {
inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
template <typename T>
std::string fmt_scalar(const T& v) {
  if constexpr (scalar_traits<T>::exact)
    return rat_to_string(v);
  else
    return fmt_double(v);
}
}  // namespace detail

// Reports every invariant violation; never throws.
template <typename T>
std::vector<Violation> validate_law(const ObservedLaw<T>& law, const T& tol) {
  std::vector<Violation> out;
  if (law.K < 1 || static_cast<int>(law.cells.size()) != law.K ||
      static_cast<int>(law.arm_labels.size()) != law.K) {
    out.push_back({"", "inconsistent arm count"});
    return out;
  }
  for (int a = 0; a < law.K; ++a)
    for (int b = a + 1; b < law.K; ++b)
      if (law.arm_labels[a] == law.arm_labels[b])
        out.push_back({law.arm_labels[a], "duplicate arm label '" + law.arm_labels[a] + "'"});

  for (int a = 0; a < law.K; ++a) {
    const std::string& label = law.arm_labels[a];
    T sum(0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const T& v = law.cells[a][2 * x + y];
        if (v < -tol)
          out.push_back({label, "arm '" + label + "' cell (x=" + std::to_string(x) +
                                    ",y=" + std::to_string(y) +
                                    "): negative probability " + detail::fmt_scalar(v)});
        if (v > T(1) + tol)
          out.push_back({label, "arm '" + label + "' cell (x=" + std::to_string(x) +
                                    ",y=" + std::to_string(y) + "): probability " +
                                    detail::fmt_scalar(v) + " exceeds 1"});
        sum += v;
      }
    T disc = sum - T(1);
    if (abs_val<T>(disc) > tol)
      out.push_back({label, "arm '" + label + "' probabilities sum to " +
                                detail::fmt_scalar(sum) + " (off by " +
                                detail::fmt_scalar(disc) + ")"});
  }
  return out;
}

template <typename T>
std::vector<Violation> validate_joint(const CounterfactualJoint<T>& joint, const T& tol) {
  std::vector<Violation> out;
  for (int y = 0; y < 2; ++y)
    for (int yt = 0; yt < 2; ++yt)
      if (joint.at(y, yt) < -tol)
        out.push_back({"", "joint entry (" + std::to_string(y) + "," + std::to_string(yt) +
                               "): negative probability"});
  T disc = joint.sum() - T(1);
  if (abs_val<T>(disc) > tol)
    out.push_back({"", "joint entries sum to " + detail::fmt_scalar(joint.sum()) +
                           " (off by " + detail::fmt_scalar(disc) + ")"});
  return out;
}

template <typename T>
void require_valid(const ObservedLaw<T>& law) {
  auto v = validate_law(law, scalar_traits<T>::tol());
  if (!v.empty()) throw std::invalid_argument("invalid law: " + v.front().message);
}

template <typename T>
void require_valid(const CounterfactualJoint<T>& joint) {
  auto v = validate_joint(joint, scalar_traits<T>::tol());
  if (!v.empty()) throw std::invalid_argument("invalid joint: " + v.front().message);
}

inline ObservedLaw<double> to_float(const ObservedLaw<Rat>& law) {
  ObservedLaw<double> out;
  out.K = law.K;
  out.arm_labels = law.arm_labels;
  out.cells.resize(law.K);
  for (int a = 0; a < law.K; ++a)
    for (int c = 0; c < 4; ++c) out.cells[a][c] = law.cells[a][c].get_d();
  return out;
}

inline CounterfactualJoint<double> to_float(const CounterfactualJoint<Rat>& j) {
  CounterfactualJoint<double> out;
  for (int c = 0; c < 4; ++c) out.pi[c] = j.pi[c].get_d();
  return out;
}

// Sub-law on all arms except `drop_z` (1-based). Arm pmfs are untouched.
template <typename T>
ObservedLaw<T> drop_arm(const ObservedLaw<T>& law, int drop_z) {
  if (law.K <= 1) throw std::invalid_argument("cannot drop the only arm");
  ObservedLaw<T> out;
  out.K = law.K - 1;
  for (int a = 0; a < law.K; ++a) {
    if (a == drop_z - 1) continue;
    out.arm_labels.push_back(law.arm_labels[a]);
    out.cells.push_back(law.cells[a]);
  }
  return out;
}

// Arms reordered so that new arm k is old arm order[k-1] (1-based entries).
template <typename T>
ObservedLaw<T> permute_arms(const ObservedLaw<T>& law, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != law.K)
    throw std::invalid_argument("arm order must list every arm exactly once");
  std::vector<bool> seen(law.K, false);
  ObservedLaw<T> out;
  out.K = law.K;
  for (int z : order) {
    if (z < 1 || z > law.K || seen[z - 1])
      throw std::invalid_argument("arm order must list every arm exactly once");
    seen[z - 1] = true;
    out.arm_labels.push_back(law.arm_labels[z - 1]);
    out.cells.push_back(law.cells[z - 1]);
  }
  return out;
}

}  // namespace ivb
