#pragma once

// Closed-form bound assembly: the four g(i,j) envelope values, the marginal
// intervals [1 - g(i,0), g(i,1)] for P(Y(x_i)=1), the sharp ACE interval,
// the natural (single-arm-branch) interval, and the classical two-arm
// expressions kept as an independently coded redundancy check.
//
// Intervals are reported raw, never clipped; the compatible flag is the
// reader's cue when an interval comes out empty or out of range.

#include <array>
#include <stdexcept>

#include "ivb/envelope.hpp"
#include "ivb/feasibility.hpp"
#include "ivb/interval.hpp"
#include "ivb/law.hpp"

namespace ivb {

template <typename T>
struct BoundsReport {
  std::array<EnvelopeTerm<T>, 4> g;  // index 2i+j
  Interval<T> marginal_x0;
  Interval<T> marginal_x1;
  Interval<T> ace_sharp;
  Interval<T> ace_natural;
  bool compatible = false;

  const EnvelopeTerm<T>& g_at(int i, int j) const { return g[2 * i + j]; }
};

template <typename T>
Interval<T> natural_bounds(const ObservedLaw<T>& law) {
  require_valid(law);
  const Interval<T> m0 = marginal_interval(g_single_arm(law, 0, 0), g_single_arm(law, 0, 1));
  const Interval<T> m1 = marginal_interval(g_single_arm(law, 1, 0), g_single_arm(law, 1, 1));
  return ace_from_marginals(m0, m1);
}

template <typename T>
BoundsReport<T> sharp_report(const ObservedLaw<T>& law) {
  require_valid(law);
  BoundsReport<T> rep;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rep.g[2 * i + j] = g_value(law, i, j);
  rep.marginal_x0 = marginal_interval(rep.g_at(0, 0).value, rep.g_at(0, 1).value);
  rep.marginal_x1 = marginal_interval(rep.g_at(1, 0).value, rep.g_at(1, 1).value);
  rep.ace_sharp = ace_from_marginals(rep.marginal_x0, rep.marginal_x1);
  rep.ace_natural = natural_bounds(law);
  rep.compatible = iv_compatible(law);
  return rep;
}

// Classical two-arm ACE bounds, written out as the usual eight max terms and
// eight min terms rather than through g_value. Redundant on purpose: the
// envelope at K = 2 must reproduce these exactly.
template <typename T>
Interval<T> balke_pearl_k2(const ObservedLaw<T>& law) {
  require_valid(law);
  if (law.K != 2) throw std::invalid_argument("balke_pearl_k2 requires K = 2");
  auto p = [&law](int x, int y, int z) { return law.p(z, x, y); };

  const std::array<T, 8> lower = {
      -p(0, 1, 1) - p(1, 0, 1),
      p(1, 1, 1) + p(0, 0, 2) - T(1),
      p(1, 1, 2) + p(0, 0, 1) - T(1),
      -p(0, 1, 2) - p(1, 0, 2),
      p(1, 1, 1) - p(0, 1, 1) - p(1, 0, 1) - p(0, 1, 2) - p(1, 1, 2),
      p(1, 1, 2) - p(0, 1, 2) - p(1, 0, 2) - p(0, 1, 1) - p(1, 1, 1),
      p(0, 0, 1) - p(1, 0, 2) - p(0, 0, 2) - p(1, 0, 1) - p(0, 1, 1),
      p(0, 0, 2) - p(1, 0, 1) - p(0, 0, 1) - p(1, 0, 2) - p(0, 1, 2),
  };
  const std::array<T, 8> upper = {
      T(1) - p(0, 1, 1) - p(1, 0, 1),
      T(1) - p(0, 1, 1) - p(1, 0, 2),
      T(1) - p(0, 1, 2) - p(1, 0, 1),
      T(1) - p(0, 1, 2) - p(1, 0, 2),
      p(1, 1, 1) + p(0, 0, 1) + p(1, 1, 2) + p(0, 1, 2) - p(0, 1, 1),
      p(1, 1, 2) + p(0, 0, 2) + p(1, 1, 1) + p(0, 1, 1) - p(0, 1, 2),
      p(0, 0, 2) + p(1, 0, 2) + p(0, 0, 1) + p(1, 1, 1) - p(1, 0, 1),
      p(0, 0, 1) + p(1, 0, 1) + p(0, 0, 2) + p(1, 1, 2) - p(1, 0, 2),
  };

  Interval<T> ace{lower[0], upper[0]};
  for (const T& v : lower)
    if (v > ace.lo) ace.lo = v;
  for (const T& v : upper)
    if (v < ace.hi) ace.hi = v;
  return ace;
}

}  // namespace ivb
