#pragma once

// Discrete intra-interval market dynamics in log units. Within one unit
// interval of calendar time the system takes delta^-1 steps of
//
//   q_d <- alpha_d + beta_d * p + eps_d
//   q_s <- alpha_s + beta_s * p + eps_s
//   p   <- p + lambda * (q_d - q_s)
//
// where quantities respond to the lagged price and the price to the lagged
// quantities, and the disturbances stay fixed for the whole interval. The
// price gap from equilibrium follows e' = (1 + lambda*(beta_d - beta_s)) e,
// so the contraction factor |1 + lambda*(beta_d - beta_s)| decides stability.
// Interval summaries are left-endpoint Riemann averages of the trajectory.

#include <cstdint>
#include <vector>

namespace ivb {

struct MarketConfig {
  double alpha_d = 0;
  double beta_d = 0;
  double alpha_s = 0;
  double beta_s = 0;
  double lambda = 0;
  double delta = 1e-2;
  double p_init = 0;
};

struct MarketState {
  long k = 0;
  double p = 0;
  double q_d = 0;
  double q_s = 0;
};

struct IntervalAverages {
  double p_bar = 0;
  double q_d_bar = 0;
  double q_s_bar = 0;
  double p_end = 0;         // hand-off price after the last step
  double end_residual = 0;  // |q_d - q_s| at the final state
  double contraction = 0;
  long steps = 0;
  bool stable = false;
  bool converged = false;
  bool diverged = false;
};

struct PanelRow {
  long t = 0;
  double p_bar = 0;
  double q_bar = 0;
  double eps_d = 0;
  double eps_s = 0;
};

// Number of steps per unit interval; rejects delta unless its inverse is a
// positive integer (within rounding).
long steps_per_interval(const MarketConfig& cfg);

void validate_config(const MarketConfig& cfg);

MarketState step(const MarketState& state, const MarketConfig& cfg, double eps_d, double eps_s);

// p* = (alpha_s - alpha_d + eps_s - eps_d) / (beta_d - beta_s), q* on either
// response line at p*.
std::pair<double, double> equilibrium_point(const MarketConfig& cfg, double eps_d, double eps_s);

std::pair<double, bool> stability(const MarketConfig& cfg);

IntervalAverages simulate_interval(const MarketConfig& cfg, double eps_d, double eps_s,
                                   double tol = 1e-6);

std::vector<PanelRow> run_panel(const MarketConfig& cfg, long T, double noise_sd_d,
                                double noise_sd_s, std::uint64_t seed);

}  // namespace ivb
