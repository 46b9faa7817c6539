#pragma once

// Brute-force certification path, independent of the closed-form envelope.
// A unit's full counterfactual description is a response type: the pair
// (Y(x0), Y(x1)) plus a treatment map z -> X(z) packed into a K-bit word.
// Any distribution over the 4 * 2^K types induces an observed law; the ACE
// extrema over all type distributions matching a given law are two small LPs,
// and their infeasibility is exactly model incompatibility.
//
// The monotone variant keeps only types whose treatment word is nondecreasing
// in the arm index (no defiers under the declared arm order): the K+1
// threshold words.

#include <stdexcept>
#include <string>
#include <vector>

#include "ivb/interval.hpp"
#include "ivb/law.hpp"
#include "ivb/simplex.hpp"

namespace ivb {

struct ResponseType {
  int y0 = 0;             // Y(x0)
  int y1 = 0;             // Y(x1)
  unsigned word = 0;      // bit z-1 holds X(z)

  int x_at(int z) const { return static_cast<int>((word >> (z - 1)) & 1u); }
  int y_observed(int x) const { return x == 0 ? y0 : y1; }
};

constexpr int kOracleMaxK = 12;

inline void oracle_size_check(int K) {
  if (K > kOracleMaxK) throw std::invalid_argument("oracle size guard");
}

inline std::vector<ResponseType> enumerate_types(int K) {
  oracle_size_check(K);
  std::vector<ResponseType> out;
  out.reserve(std::size_t(4) << K);
  for (int y0 = 0; y0 < 2; ++y0)
    for (int y1 = 0; y1 < 2; ++y1)
      for (unsigned w = 0; w < (1u << K); ++w) out.push_back({y0, y1, w});
  return out;
}

// Threshold words: X(z) = 1 for all z >= s, one word per cut point s = 1..K+1
// (s = K+1 is the never-taker word 0).
inline std::vector<ResponseType> enumerate_monotone_types(int K) {
  oracle_size_check(K);
  std::vector<ResponseType> out;
  out.reserve(4 * (K + 1));
  for (int y0 = 0; y0 < 2; ++y0)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int s = 1; s <= K + 1; ++s) {
        unsigned w = 0;
        for (int z = s; z <= K; ++z) w |= 1u << (z - 1);
        out.push_back({y0, y1, w});
      }
  return out;
}

template <typename T>
struct ResponseTypeDistribution {
  int K = 0;
  std::vector<ResponseType> types;
  std::vector<T> weights;  // aligned with types

  ResponseTypeDistribution normalized() const {
    ResponseTypeDistribution d = *this;
    T total(0);
    for (const T& w : d.weights) total += w;
    if (total == T(0)) throw std::invalid_argument("zero total weight");
    for (T& w : d.weights) w /= total;
    return d;
  }
};

template <typename T>
ObservedLaw<T> implied_law(const ResponseTypeDistribution<T>& d) {
  if (d.types.size() != d.weights.size()) throw std::invalid_argument("dimension mismatch");
  ObservedLaw<T> law;
  law.K = d.K;
  for (int z = 1; z <= d.K; ++z) law.arm_labels.push_back("z" + std::to_string(z));
  law.cells.assign(d.K, {T(0), T(0), T(0), T(0)});
  for (std::size_t t = 0; t < d.types.size(); ++t) {
    if (d.weights[t] == T(0)) continue;
    for (int z = 1; z <= d.K; ++z) {
      const int x = d.types[t].x_at(z);
      const int y = d.types[t].y_observed(x);
      law.cells[z - 1][2 * x + y] += d.weights[t];
    }
  }
  return law;
}

template <typename T>
T ace_of(const ResponseTypeDistribution<T>& d) {
  T ace(0);
  for (std::size_t t = 0; t < d.types.size(); ++t)
    ace += d.weights[t] * T(d.types[t].y1 - d.types[t].y0);
  return ace;
}

template <typename T>
struct OracleReport {
  bool feasible = false;
  bool monotone = false;
  Interval<T> ace;
  ResponseTypeDistribution<T> witness_min;
  ResponseTypeDistribution<T> witness_max;
};

namespace detail {

// Equality system: three cells per arm (the fourth is redundant given the
// sum row) plus total mass one.
template <typename T>
LinearProgram<T> oracle_lp(const ObservedLaw<T>& law, const std::vector<ResponseType>& types) {
  const int n = static_cast<int>(types.size());
  LinearProgram<T> lp;
  lp.num_vars = n;
  lp.c.assign(n, T(0));
  for (int z = 1; z <= law.K; ++z)
    for (int cell = 0; cell < 3; ++cell) {  // cell = 2x + y, skipping (1,1)
      std::vector<T> row(n, T(0));
      for (int t = 0; t < n; ++t) {
        const int x = types[t].x_at(z);
        const int y = types[t].y_observed(x);
        if (2 * x + y == cell) row[t] = T(1);
      }
      lp.a.push_back(std::move(row));
      lp.b.push_back(law.p(z, cell / 2, cell % 2));
    }
  lp.a.emplace_back(n, T(1));
  lp.b.push_back(T(1));
  return lp;
}

template <typename T>
ResponseTypeDistribution<T> witness_from_vertex(int K, const std::vector<ResponseType>& types,
                                                const std::vector<T>& x) {
  ResponseTypeDistribution<T> d;
  d.K = K;
  d.types = types;
  d.weights = x;
  return d;
}

}  // namespace detail

template <typename T>
OracleReport<T> oracle_ace_bounds(const ObservedLaw<T>& law, bool monotone = false) {
  require_valid(law);
  oracle_size_check(law.K);
  const auto types = monotone ? enumerate_monotone_types(law.K) : enumerate_types(law.K);
  auto lp = detail::oracle_lp<T>(law, types);
  for (std::size_t t = 0; t < types.size(); ++t) lp.c[t] = T(types[t].y1 - types[t].y0);

  OracleReport<T> rep;
  rep.monotone = monotone;
  SimplexTableau<T> tableau(lp);
  if (tableau.phase1() != LpStatus::kOptimal) return rep;
  rep.feasible = true;

  auto optimize = [&](bool maximize) {
    if (tableau.phase2(lp.c, maximize) != LpStatus::kOptimal)
      throw std::runtime_error("bounded objective reported unbounded");
    return tableau.extract();
  };
  auto value_of = [&](const std::vector<T>& x) {
    T v(0);
    for (std::size_t t = 0; t < x.size(); ++t) v += lp.c[t] * x[t];
    return v;
  };

  auto x_min = optimize(false);
  rep.ace.lo = value_of(x_min);
  rep.witness_min = detail::witness_from_vertex<T>(law.K, types, x_min);
  auto x_max = optimize(true);
  rep.ace.hi = value_of(x_max);
  rep.witness_max = detail::witness_from_vertex<T>(law.K, types, x_max);
  return rep;
}

}  // namespace ivb
