#include "ivb/market.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ivb {

namespace {

constexpr double kDivergenceCap = 1e12;

bool out_of_range(const MarketState& s) {
  return !std::isfinite(s.p) || !std::isfinite(s.q_d) || !std::isfinite(s.q_s) ||
         std::abs(s.p) > kDivergenceCap || std::abs(s.q_d) > kDivergenceCap ||
         std::abs(s.q_s) > kDivergenceCap;
}

// Quantities open the interval already on their response lines at the
// opening price.
MarketState initial_state(const MarketConfig& cfg, double eps_d, double eps_s) {
  MarketState s;
  s.k = 0;
  s.p = cfg.p_init;
  s.q_d = cfg.alpha_d + cfg.beta_d * cfg.p_init + eps_d;
  s.q_s = cfg.alpha_s + cfg.beta_s * cfg.p_init + eps_s;
  return s;
}

}  // namespace

long steps_per_interval(const MarketConfig& cfg) {
  if (!(cfg.delta > 0.0) || cfg.delta > 1.0)
    throw std::invalid_argument("delta must lie in (0, 1]");
  const double inv = 1.0 / cfg.delta;
  const long steps = std::lround(inv);
  if (steps < 1 || std::abs(inv - static_cast<double>(steps)) > 1e-6 * inv)
    throw std::invalid_argument("delta inverse must be a positive integer");
  return steps;
}

void validate_config(const MarketConfig& cfg) {
  if (!std::isfinite(cfg.alpha_d) || !std::isfinite(cfg.beta_d) || !std::isfinite(cfg.alpha_s) ||
      !std::isfinite(cfg.beta_s) || !std::isfinite(cfg.lambda) || !std::isfinite(cfg.p_init))
    throw std::invalid_argument("non-finite coefficient");
  steps_per_interval(cfg);
}

MarketState step(const MarketState& state, const MarketConfig& cfg, double eps_d, double eps_s) {
  if (out_of_range(state)) throw std::runtime_error("diverged");
  MarketState next;
  next.k = state.k + 1;
  next.q_d = cfg.alpha_d + cfg.beta_d * state.p + eps_d;
  next.q_s = cfg.alpha_s + cfg.beta_s * state.p + eps_s;
  next.p = state.p + cfg.lambda * (state.q_d - state.q_s);
  return next;
}

std::pair<double, double> equilibrium_point(const MarketConfig& cfg, double eps_d, double eps_s) {
  const double denom = cfg.beta_d - cfg.beta_s;
  if (denom == 0.0) throw std::runtime_error("no unique equilibrium");
  const double p_star = (cfg.alpha_s - cfg.alpha_d + eps_s - eps_d) / denom;
  const double q_star = cfg.alpha_d + cfg.beta_d * p_star + eps_d;
  return {p_star, q_star};
}

std::pair<double, bool> stability(const MarketConfig& cfg) {
  const double contraction = std::abs(1.0 + cfg.lambda * (cfg.beta_d - cfg.beta_s));
  return {contraction, contraction < 1.0};
}

IntervalAverages simulate_interval(const MarketConfig& cfg, double eps_d, double eps_s,
                                   double tol) {
  validate_config(cfg);
  const long steps = steps_per_interval(cfg);
  auto [contraction, stable] = stability(cfg);

  IntervalAverages avg;
  avg.contraction = contraction;
  avg.stable = stable;
  avg.steps = steps;

  MarketState s = initial_state(cfg, eps_d, eps_s);
  double sum_p = 0, sum_qd = 0, sum_qs = 0;
  for (long k = 0; k < steps; ++k) {
    if (out_of_range(s)) {
      avg.diverged = true;
      break;
    }
    sum_p += s.p;
    sum_qd += s.q_d;
    sum_qs += s.q_s;
    s = step(s, cfg, eps_d, eps_s);
  }
  if (!avg.diverged && out_of_range(s)) avg.diverged = true;

  if (avg.diverged) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    avg.p_bar = avg.q_d_bar = avg.q_s_bar = avg.p_end = avg.end_residual = nan;
    avg.converged = false;
    return avg;
  }
  avg.p_bar = cfg.delta * sum_p;
  avg.q_d_bar = cfg.delta * sum_qd;
  avg.q_s_bar = cfg.delta * sum_qs;
  avg.p_end = s.p;
  avg.end_residual = std::abs(s.q_d - s.q_s);
  avg.converged = stable && avg.end_residual < tol;
  return avg;
}

std::vector<PanelRow> run_panel(const MarketConfig& cfg, long T, double noise_sd_d,
                                double noise_sd_s, std::uint64_t seed) {
  validate_config(cfg);
  if (T < 1) throw std::invalid_argument("panel length must be at least 1");
  if (noise_sd_d < 0 || noise_sd_s < 0) throw std::invalid_argument("negative noise sd");
  if (!stability(cfg).second)
    throw std::runtime_error("will not equilibrate within the unit interval");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  MarketConfig interval_cfg = cfg;
  std::vector<PanelRow> panel;
  panel.reserve(static_cast<std::size_t>(T));
  for (long t = 1; t <= T; ++t) {
    const double eps_d = noise_sd_d > 0 ? noise_sd_d * unit_normal(rng) : 0.0;
    const double eps_s = noise_sd_s > 0 ? noise_sd_s * unit_normal(rng) : 0.0;
    IntervalAverages avg = simulate_interval(interval_cfg, eps_d, eps_s);
    if (avg.diverged) throw std::runtime_error("diverged");
    panel.push_back({t, avg.p_bar, avg.q_d_bar, eps_d, eps_s});
    interval_cfg.p_init = avg.p_end;
  }
  return panel;
}

}  // namespace ivb
