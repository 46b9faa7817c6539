#pragma once

// Closed-form envelope g(i,j): the least upper bound the observed law puts on
// P(Y(x_i)=j). The minimum runs over K single-arm terms
//
//     P(X=i, Y=j | Z=z) + P(X=1-i | Z=z)
//
// and K(K-1) ordered cross-arm terms
//
//     P(X=i, Y=j | Z=z) + P(X=1-i, Y=0 | Z=z)
//       + P(X=i, Y=j | Z=zt) + P(X=1-i, Y=1 | Z=zt),   z != zt.
//
// For K=1 the cross-arm set is empty and only single-arm terms apply.

#include <stdexcept>

#include "ivb/interval.hpp"
#include "ivb/law.hpp"

namespace ivb {

struct EnvelopeBranch {
  bool cross = false;  // false: single arm z; true: ordered pair (z, ztilde)
  int z = 0;
  int ztilde = 0;      // 0 unless cross
};

template <typename T>
struct EnvelopeTerm {
  T value{};
  EnvelopeBranch branch;
};

// Ties resolve to the earliest branch in scan order: single arms by z, then
// pairs lexicographically by (z, ztilde). Deterministic across runs.
template <typename T>
EnvelopeTerm<T> g_value(const ObservedLaw<T>& law, int i, int j) {
  if (i != 0 && i != 1) throw std::invalid_argument("i must be 0 or 1");
  if (j != 0 && j != 1) throw std::invalid_argument("j must be 0 or 1");
  require_valid(law);
  EnvelopeTerm<T> best;
  bool have = false;
  for (int z = 1; z <= law.K; ++z) {
    T v = law.p(z, i, j) + law.px(z, 1 - i);
    if (!have || v < best.value) {
      best = {v, {false, z, 0}};
      have = true;
    }
  }
  for (int z = 1; z <= law.K; ++z)
    for (int zt = 1; zt <= law.K; ++zt) {
      if (zt == z) continue;
      T v = law.p(z, i, j) + law.p(z, 1 - i, 0) + law.p(zt, i, j) + law.p(zt, 1 - i, 1);
      if (v < best.value) best = {v, {true, z, zt}};
    }
  return best;
}

// Single-arm restriction of the envelope (cross-arm terms dropped).
template <typename T>
T g_single_arm(const ObservedLaw<T>& law, int i, int j) {
  T best{};
  bool have = false;
  for (int z = 1; z <= law.K; ++z) {
    T v = law.p(z, i, j) + law.px(z, 1 - i);
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }
  return best;
}

// Marginal interval for P(Y(x_i)=1): [1 - g(i,0), g(i,1)].
template <typename T>
Interval<T> marginal_interval(const T& g_i0, const T& g_i1) {
  return {T(1) - g_i0, g_i1};
}

// ACE interval by interval subtraction of the two marginal intervals.
template <typename T>
Interval<T> ace_from_marginals(const Interval<T>& m0, const Interval<T>& m1) {
  return {m1.lo - m0.hi, m1.hi - m0.lo};
}

}  // namespace ivb
