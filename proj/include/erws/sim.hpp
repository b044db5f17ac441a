#pragma once

#include "erws/model.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace erws::sim {

constexpr std::uint64_t kDefaultMasterSeed = 123456789ULL;

// Sufficient statistic of a full 1D history: the conditional step law
// depends on the past only through x = sum sigma_k and n = sum sigma_k^2.
struct WalkerState1D {
  std::int64_t t = 0;
  std::int64_t x = 0;
  std::int64_t n = 0;
};

// 2D reduction: position plus per-axis counts of nonzero steps.
struct WalkerState2D {
  std::int64_t t = 0;
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
  std::int64_t nx = 0;
  std::int64_t ny = 0;
};

struct MomentCurve {
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_x;
  std::vector<double> mean_y;  // empty for 1D curves
  std::vector<double> msd;
  std::vector<double> msd_se;
  std::uint64_t walkers = 0;
  int dim = 1;
};

struct EnsembleConfig {
  std::uint64_t walkers = 0;
  std::int64_t t_max = 0;
  std::vector<std::int64_t> checkpoints;
  std::uint64_t master_seed = kDefaultMasterSeed;
  unsigned worker_count = 1;
};

// Powers of two up to t_max, plus t_max itself; the default checkpoint set.
std::vector<std::int64_t> log_checkpoints(std::int64_t t_max);

// P(sigma_{t+1} = +1 | state), P(-1 | state), P(0 | state):
//   P(+-1) = (n (1-eps-r) +- x gamma) / (2t) + eps/2
//   P(0)   = 1 - eps - n (1-eps-r) / t
// This is the single canonical evaluation; the full-history oracle calls it
// too, so the sufficient-statistic check is an exact (bitwise) comparison.
inline std::array<double, 3> step_distribution(const WalkerState1D& state,
                                               const Params1D& params) {
  const double inv2t = 0.5 / static_cast<double>(state.t);
  const double a = static_cast<double>(state.n) * (1.0 - params.eps - params.r);
  const double b = static_cast<double>(state.x) * params.gamma;
  const double he = 0.5 * params.eps;
  return {(a + b) * inv2t + he, (a - b) * inv2t + he,
          1.0 - params.eps - a / static_cast<double>(state.t)};
}

// Five-outcome law in the fixed order (+i, +j, -i, -j, 0).
inline std::array<double, 5> step_distribution_2d(const WalkerState2D& state,
                                                  const Params2D& params) {
  const double t = static_cast<double>(state.t);
  const double inv2t = 0.5 / t;
  const double nx = static_cast<double>(state.nx);
  const double ny = static_cast<double>(state.ny);
  const double x1g = static_cast<double>(state.x1) * params.gamma;
  const double x2g = static_cast<double>(state.x2) * params.gamma;
  const double x1gp = static_cast<double>(state.x1) * params.gammap;
  const double x2gp = static_cast<double>(state.x2) * params.gammap;
  const double half_eps_n = (nx + ny) * 0.5 * params.eps;
  const double base_i = nx * (params.p + params.q) + ny * (params.pp + params.qp) - half_eps_n;
  const double base_j = ny * (params.p + params.q) + nx * (params.pp + params.qp) - half_eps_n;
  const double qe = 0.25 * params.eps;
  return {(x1g - x2gp + base_i) * inv2t + qe, (x2g + x1gp + base_j) * inv2t + qe,
          (-x1g + x2gp + base_i) * inv2t + qe, (-x2g - x1gp + base_j) * inv2t + qe,
          (nx + ny) * (params.r + params.eps - 1.0) / t + 1.0 - params.eps};
}

// Inverse-transform step in the fixed outcome order (+1, -1, 0).
inline WalkerState1D advance(const WalkerState1D& state, const Params1D& params, double u) {
  const std::array<double, 3> dist = step_distribution(state, params);
  WalkerState1D next = state;
  next.t = state.t + 1;
  if (u < dist[0]) {
    next.x += 1;
    next.n += 1;
  } else if (u < dist[0] + dist[1]) {
    next.x -= 1;
    next.n += 1;
  }
  return next;
}

inline WalkerState2D advance_2d(const WalkerState2D& state, const Params2D& params, double u) {
  const std::array<double, 5> dist = step_distribution_2d(state, params);
  WalkerState2D next = state;
  next.t = state.t + 1;
  double acc = dist[0];
  if (u < acc) {
    next.x1 += 1;
    next.nx += 1;
    return next;
  }
  acc += dist[1];
  if (u < acc) {
    next.x2 += 1;
    next.ny += 1;
    return next;
  }
  acc += dist[2];
  if (u < acc) {
    next.x1 -= 1;
    next.nx += 1;
    return next;
  }
  acc += dist[3];
  if (u < acc) {
    next.x2 -= 1;
    next.ny += 1;
    return next;
  }
  return next;
}

inline WalkerState1D init_walker(const Params1D& params, double u) {
  return {1, u < params.s ? std::int64_t{1} : std::int64_t{-1}, 1};
}

// Initial direction in the order (+i, +j, -i, -j) weighted by s1..s4.
inline WalkerState2D init_walker_2d(const Params2D& params, double u) {
  WalkerState2D st;
  st.t = 1;
  double acc = params.s1;
  if (u < acc) {
    st.x1 = 1;
    st.nx = 1;
    return st;
  }
  acc += params.s2;
  if (u < acc) {
    st.x2 = 1;
    st.ny = 1;
    return st;
  }
  acc += params.s3;
  if (u < acc) {
    st.x1 = -1;
    st.nx = 1;
    return st;
  }
  st.x2 = -1;
  st.ny = 1;
  return st;
}

// Deterministic ensemble runs: per-walker Philox streams keyed by
// (master_seed, walker_index), fixed 1024-walker accumulation chunks, and a
// reduction in ascending chunk order, so the result is bit-identical for any
// worker_count. Throws RangeError on a malformed config and ResourceError
// when the per-chunk accumulator table would exceed the memory cap.
MomentCurve run_ensemble(const Params1D& params, const EnsembleConfig& cfg);
MomentCurve run_ensemble_2d(const Params2D& params, const EnsembleConfig& cfg);

// Ordinary least squares of ln msd on ln t over checkpoints inside
// [t_lo, t_hi]. Needs at least five checkpoints with positive msd in the
// window, else InsufficientData. Returns (exponent, log_coefficient,
// r_squared); the fitted curve is exp(log_coefficient) * t^exponent.
struct ExponentFit {
  double exponent = 0;
  double log_coefficient = 0;
  double r_squared = 0;
};

ExponentFit fit_exponent(const MomentCurve& curve, std::pair<double, double> window);

}  // namespace erws::sim
