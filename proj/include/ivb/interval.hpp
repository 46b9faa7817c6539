#pragma once

#include "ivb/scalar.hpp"

namespace ivb {

template <typename T>
struct Interval {
  T lo{};
  T hi{};

  bool empty() const { return lo > hi; }
  T width() const { return hi - lo; }

  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

template <typename T>
bool operator==(const Interval<T>& a, const Interval<T>& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

// Endpointwise distance, for float-mode comparisons.
template <typename T>
T interval_gap(const Interval<T>& a, const Interval<T>& b) {
  T dl = abs_val<T>(a.lo - b.lo);
  T dh = abs_val<T>(a.hi - b.hi);
  return dl > dh ? dl : dh;
}

}  // namespace ivb
