#pragma once

// Number-mode support. A whole computation runs either on exact rationals
// (inputs given as integer counts) or on doubles with a fixed tolerance.
// Numeric code is templated on the scalar type; these traits supply the
// per-mode comparison tolerance.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ivb {

using Rat = mpq_class;

template <typename T>
struct scalar_traits;

// Float-mode comparison tolerance, 1e-9 unless overridden (CLI --tol).
inline double& float_tolerance() {
  static double tol = 1e-9;
  return tol;
}

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static double tol() { return float_tolerance(); }
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";
  static Rat tol() { return Rat(0); }
};

inline double to_double(double v) { return v; }
inline double to_double(const Rat& v) { return v.get_d(); }

// mpq_class(num, den) stores the pair verbatim; GMP comparisons require the
// reduced form, so every fraction built from parts must pass through here.
inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

template <typename T>
T abs_val(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Parses "num", "-num" or "num/den". Throws on malformed input or zero
// denominator.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_to_string(const Rat& v) { return v.get_str(); }

}  // namespace ivb
