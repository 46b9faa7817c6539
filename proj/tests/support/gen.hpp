#pragma once

// Shared fixtures and random-law generators for the test suite. Laws built
// through implied_law are model-compatible by construction; corrupted_law
// builds a provably incompatible one (two arms pin the same potential
// outcome to contradictory values, leaving g(0,0) + g(0,1) < 1).

#include <random>
#include <vector>

#include "ivb/law.hpp"
#include "ivb/oracle.hpp"

namespace gen {

using ivb::ObservedLaw;
using ivb::Rat;
using ivb::rat;
using ivb::ResponseTypeDistribution;

inline ObservedLaw<Rat> worked_example() {
  ObservedLaw<Rat> law;
  law.K = 2;
  law.arm_labels = {"z1", "z2"};
  law.cells = {
      {rat(5, 10), rat(3, 10), rat(1, 10), rat(1, 10)},
      {rat(2, 10), rat(1, 10), rat(3, 10), rat(4, 10)},
  };
  return law;
}

inline ObservedLaw<Rat> perfect_compliance() {
  ObservedLaw<Rat> law;
  law.K = 2;
  law.arm_labels = {"z1", "z2"};
  law.cells = {
      {rat(6, 10), rat(4, 10), Rat(0), Rat(0)},
      {Rat(0), Rat(0), rat(3, 10), rat(7, 10)},
  };
  return law;
}

// Every unit takes treatment under arm 1 and refuses under arm 2, with
// Y(x0)=0, Y(x1)=1: rationalizable, but only by a defier treatment word.
inline ObservedLaw<Rat> defier_point_law() {
  ResponseTypeDistribution<Rat> d;
  d.K = 2;
  d.types = {{0, 1, 1u}};  // X(z1)=1, X(z2)=0
  d.weights = {Rat(1)};
  return implied_law(d);
}

inline ResponseTypeDistribution<Rat> random_distribution(int K, std::mt19937_64& rng,
                                                         bool monotone = false) {
  auto types = monotone ? ivb::enumerate_monotone_types(K) : ivb::enumerate_types(K);
  std::uniform_int_distribution<int> u(0, 8);
  std::vector<long> w(types.size());
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& wi : w) {
      wi = u(rng);
      total += wi;
    }
  }
  ResponseTypeDistribution<Rat> d;
  d.K = K;
  d.types = std::move(types);
  for (long wi : w) d.weights.push_back(rat(wi, total));
  return d;
}

inline ObservedLaw<Rat> random_compatible_law(int K, std::mt19937_64& rng) {
  return implied_law(random_distribution(K, rng));
}

// Arbitrary per-arm pmfs with no compatibility guarantee either way.
inline ObservedLaw<Rat> random_raw_law(int K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, 8);
  ObservedLaw<Rat> law;
  law.K = K;
  for (int a = 0; a < K; ++a) {
    law.arm_labels.push_back("z" + std::to_string(a + 1));
    std::array<long, 4> w{};
    long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& wi : w) {
        wi = u(rng);
        total += wi;
      }
    }
    std::array<Rat, 4> cells;
    for (int c = 0; c < 4; ++c) cells[c] = rat(w[c], total);
    law.cells.push_back(cells);
  }
  return law;
}

// Arm 1 squeezes P(Y(x0)=1) below m_a, arm 2 squeezes P(Y(x0)=0) below m_b,
// with m_a + m_b < 1; the x0 marginal interval is empty, so no response-type
// distribution can produce this law.
inline ObservedLaw<Rat> corrupted_law(int K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> m(0, 4);   // tenths
  std::uniform_int_distribution<int> u(0, 8);
  ObservedLaw<Rat> law;
  law.K = K;
  for (int a = 0; a < K; ++a) law.arm_labels.push_back("z" + std::to_string(a + 1));
  law.cells.resize(K);

  const int ma = m(rng), mb = m(rng);
  // arm 1: cell 00 holds 1 - m_a, the rest leaks to x=1 cells, 01 stays 0
  law.cells[0] = {rat(10 - ma, 10), Rat(0), rat(ma, 10), Rat(0)};
  // arm 2: cell 01 holds 1 - m_b, the rest leaks to x=1 cells, 00 stays 0
  law.cells[1] = {Rat(0), rat(10 - mb, 10), Rat(0), rat(mb, 10)};
  for (int a = 2; a < K; ++a) {
    std::array<long, 4> w{};
    long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& wi : w) {
        wi = u(rng);
        total += wi;
      }
    }
    for (int c = 0; c < 4; ++c) law.cells[a][c] = rat(w[c], total);
  }
  return law;
}

}  // namespace gen
