#pragma once

// Compatibility of an observed law with the IV model, decided through the
// 8K-inequality system on the counterfactual joint pi(y, yt):
//
//   marginal, per arm z:  P(Y(x_i) = y) <= P(Y=y, X=i | z) + P(X=1-i | z)
//   joint, per arm z:     pi(y, yt)     <= P(Y=y, X=0 | z) + P(Y=yt, X=1 | z)
//
// A law is compatible exactly when some pi on the 4-point simplex satisfies
// all of them; the check is a small LP feasibility problem, optionally with
// the two margins of pi pinned.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ivb/envelope.hpp"
#include "ivb/interval.hpp"
#include "ivb/law.hpp"
#include "ivb/simplex.hpp"

namespace ivb {

enum class IneqKind { kMarginal, kJoint };

template <typename T>
struct InequalityRecord {
  IneqKind kind = IneqKind::kMarginal;
  int z = 0;       // 1-based arm index
  int y = 0;
  int i = 0;       // treatment index, marginal kind only
  int ytilde = 0;  // joint kind only
  T lhs{};
  T rhs{};
  bool satisfied = false;
};

namespace detail {

// One inequality as coefficients over (pi00, pi01, pi10, pi11), index 2y+yt.
template <typename T>
struct IneqSpec {
  IneqKind kind;
  int z, y, i, ytilde;
  std::array<T, 4> coef;
  T rhs;
};

template <typename T>
std::vector<IneqSpec<T>> enumerate_inequalities(const ObservedLaw<T>& law) {
  std::vector<IneqSpec<T>> out;
  out.reserve(8 * law.K);
  for (int z = 1; z <= law.K; ++z) {
    for (int i = 0; i < 2; ++i)
      for (int y = 0; y < 2; ++y) {
        IneqSpec<T> s{IneqKind::kMarginal, z, y, i, 0, {T(0), T(0), T(0), T(0)}, T(0)};
        if (i == 0) {
          s.coef[2 * y + 0] = T(1);
          s.coef[2 * y + 1] = T(1);
        } else {
          s.coef[0 + y] = T(1);
          s.coef[2 + y] = T(1);
        }
        s.rhs = law.p(z, i, y) + law.px(z, 1 - i);
        out.push_back(std::move(s));
      }
    for (int y = 0; y < 2; ++y)
      for (int yt = 0; yt < 2; ++yt) {
        IneqSpec<T> s{IneqKind::kJoint, z, y, 0, yt, {T(0), T(0), T(0), T(0)}, T(0)};
        s.coef[2 * y + yt] = T(1);
        s.rhs = law.p(z, 0, y) + law.p(z, 1, yt);
        out.push_back(std::move(s));
      }
  }
  return out;
}

// Equality-standard LP: 4 pi entries plus one slack per inequality, rows for
// every inequality, the sum-to-one row, and the pinned margins when present.
template <typename T>
LinearProgram<T> pi_lp(const ObservedLaw<T>& law, const T* a, const T* b) {
  const auto ineqs = enumerate_inequalities<T>(law);
  const int n_ineq = static_cast<int>(ineqs.size());
  LinearProgram<T> lp;
  lp.num_vars = 4 + n_ineq;
  lp.c.assign(lp.num_vars, T(0));
  for (int r = 0; r < n_ineq; ++r) {
    std::vector<T> row(lp.num_vars, T(0));
    for (int j = 0; j < 4; ++j) row[j] = ineqs[r].coef[j];
    row[4 + r] = T(1);
    lp.a.push_back(std::move(row));
    lp.b.push_back(ineqs[r].rhs);
  }
  std::vector<T> sum_row(lp.num_vars, T(0));
  for (int j = 0; j < 4; ++j) sum_row[j] = T(1);
  lp.a.push_back(std::move(sum_row));
  lp.b.push_back(T(1));
  if (a != nullptr) {  // P(Y(x0)=1) = pi10 + pi11
    std::vector<T> row(lp.num_vars, T(0));
    row[2] = T(1);
    row[3] = T(1);
    lp.a.push_back(std::move(row));
    lp.b.push_back(*a);
  }
  if (b != nullptr) {  // P(Y(x1)=1) = pi01 + pi11
    std::vector<T> row(lp.num_vars, T(0));
    row[1] = T(1);
    row[3] = T(1);
    lp.a.push_back(std::move(row));
    lp.b.push_back(*b);
  }
  return lp;
}

template <typename T>
CounterfactualJoint<T> joint_from_vertex(const std::vector<T>& x) {
  CounterfactualJoint<T> pi;
  for (int j = 0; j < 4; ++j) pi.pi[j] = x[j];
  return pi;
}

}  // namespace detail

template <typename T>
std::vector<InequalityRecord<T>> check_joint(const ObservedLaw<T>& law,
                                             const CounterfactualJoint<T>& joint) {
  require_valid(law);
  require_valid(joint);
  const T tol = scalar_traits<T>::tol();
  std::vector<InequalityRecord<T>> out;
  for (const auto& s : detail::enumerate_inequalities<T>(law)) {
    InequalityRecord<T> rec;
    rec.kind = s.kind;
    rec.z = s.z;
    rec.y = s.y;
    rec.i = s.i;
    rec.ytilde = s.ytilde;
    rec.lhs = T(0);
    for (int j = 0; j < 4; ++j)
      if (!(s.coef[j] == T(0))) rec.lhs += s.coef[j] * joint.pi[j];
    rec.rhs = s.rhs;
    rec.satisfied = !(rec.lhs > rec.rhs + tol);
    out.push_back(std::move(rec));
  }
  return out;
}

template <typename T>
struct FeasibilityResult {
  bool feasible = false;
  CounterfactualJoint<T> witness;  // meaningful only when feasible
};

template <typename T>
FeasibilityResult<T> joint_feasible(const ObservedLaw<T>& law,
                                    const std::optional<std::pair<T, T>>& margins = {}) {
  require_valid(law);
  const T* a = nullptr;
  const T* b = nullptr;
  if (margins) {
    const T tol = scalar_traits<T>::tol();
    if (margins->first < T(0) - tol || margins->first > T(1) + tol ||
        margins->second < T(0) - tol || margins->second > T(1) + tol)
      throw std::invalid_argument("margin outside [0,1]");
    a = &margins->first;
    b = &margins->second;
  }
  auto lp = detail::pi_lp<T>(law, a, b);
  SimplexTableau<T> tableau(lp);
  FeasibilityResult<T> res;
  if (tableau.phase1() != LpStatus::kOptimal) return res;
  res.feasible = true;
  res.witness = detail::joint_from_vertex<T>(tableau.extract());
  return res;
}

template <typename T>
bool iv_compatible(const ObservedLaw<T>& law) {
  require_valid(law);
  for (int i = 0; i < 2; ++i) {
    const T lo = T(1) - g_value(law, i, 0).value;
    const T hi = g_value(law, i, 1).value;
    if (hi < lo - scalar_traits<T>::tol()) return false;
  }
  return joint_feasible(law).feasible;
}

// Extremal ACE over all joints the inequalities admit; the max LP reuses the
// min LP's feasible basis. Empty when the law is incompatible.
template <typename T>
std::optional<Interval<T>> ace_over_joints(const ObservedLaw<T>& law) {
  require_valid(law);
  auto lp = detail::pi_lp<T>(law, nullptr, nullptr);
  // ACE = P(Y(x1)=1) - P(Y(x0)=1) = pi01 - pi10.
  lp.c[1] = T(1);
  lp.c[2] = T(-1);
  SimplexTableau<T> tableau(lp);
  if (tableau.phase1() != LpStatus::kOptimal) return std::nullopt;
  Interval<T> ace;
  if (tableau.phase2(lp.c, false) != LpStatus::kOptimal)
    throw std::runtime_error("bounded objective reported unbounded");
  auto x = tableau.extract();
  ace.lo = x[1] - x[2];
  if (tableau.phase2(lp.c, true) != LpStatus::kOptimal)
    throw std::runtime_error("bounded objective reported unbounded");
  x = tableau.extract();
  ace.hi = x[1] - x[2];
  return ace;
}

template <typename T>
bool variation_independence_probe(const ObservedLaw<T>& law, int grid_n) {
  require_valid(law);
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  const Interval<T> m0{T(1) - g_value(law, 0, 0).value, g_value(law, 0, 1).value};
  const Interval<T> m1{T(1) - g_value(law, 1, 0).value, g_value(law, 1, 1).value};
  if (m0.empty() || m1.empty() || !iv_compatible(law))
    throw std::runtime_error("no feasible rectangle");
  const T denom(grid_n - 1);
  for (int u = 0; u < grid_n; ++u)
    for (int v = 0; v < grid_n; ++v) {
      const T a = m0.lo + (m0.hi - m0.lo) * T(u) / denom;
      const T b = m1.lo + (m1.hi - m1.lo) * T(v) / denom;
      if (!joint_feasible(law, std::make_optional(std::make_pair(a, b))).feasible)
        return false;
    }
  return true;
}

}  // namespace ivb
