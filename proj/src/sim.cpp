#include "erws/sim.hpp"

#include "erws/errors.hpp"
#include "erws/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace erws::sim {

namespace {

constexpr std::int64_t kChunk = 1024;          // accumulation grouping, fixed for determinism
constexpr std::uint64_t kMaxSlots = 50000000;  // ~2 GB of accumulator table

// Exact integer sums inside a chunk; the only float accumulator is the
// fourth moment used for the standard error.
struct Slot {
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  __int128 sum_sq = 0;
  double sum_quad = 0;
};

void validate_config(const EnsembleConfig& cfg) {
  if (cfg.walkers < 1) throw RangeError("walkers must be >= 1");
  if (cfg.t_max < 1) throw RangeError("t_max must be >= 1");
  if (cfg.checkpoints.empty()) throw RangeError("checkpoints must be non-empty");
  std::int64_t prev = 0;
  for (std::int64_t c : cfg.checkpoints) {
    if (c <= prev || c > cfg.t_max) {
      throw RangeError("checkpoints must be strictly increasing within [1, t_max]");
    }
    prev = c;
  }
}

// Neumaier compensated sum for the cross-chunk float reduction.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

template <typename ProcessChunk>
void run_chunks(const EnsembleConfig& cfg, std::int64_t n_chunks, ProcessChunk&& process) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(cfg.worker_count, static_cast<unsigned>(n_chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) process(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= n_chunks) break;
        process(c);
      }
    });
  }
  for (auto& th : pool) th.join();
}

MomentCurve reduce_slots(const EnsembleConfig& cfg, const std::vector<Slot>& slots,
                         std::size_t n_cp, int dim) {
  const std::int64_t n_chunks = static_cast<std::int64_t>(slots.size() / n_cp);
  MomentCurve curve;
  curve.checkpoints = cfg.checkpoints;
  curve.walkers = cfg.walkers;
  curve.dim = dim;
  const double w = static_cast<double>(cfg.walkers);
  for (std::size_t ci = 0; ci < n_cp; ++ci) {
    std::int64_t sx = 0;
    std::int64_t sy = 0;
    __int128 ssq = 0;
    CompensatedSum squad;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
      const Slot& slot = slots[static_cast<std::size_t>(c) * n_cp + ci];
      sx += slot.sum_x;
      sy += slot.sum_y;
      ssq += slot.sum_sq;
      squad.add(slot.sum_quad);
    }
    const double msd = static_cast<double>(ssq) / w;
    const double quad = squad.value() / w;
    curve.mean_x.push_back(static_cast<double>(sx) / w);
    if (dim == 2) curve.mean_y.push_back(static_cast<double>(sy) / w);
    curve.msd.push_back(msd);
    curve.msd_se.push_back(std::sqrt(std::max(0.0, quad - msd * msd) / w));
  }
  return curve;
}

}  // namespace

std::vector<std::int64_t> log_checkpoints(std::int64_t t_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t < t_max && t > 0; t *= 2) out.push_back(t);
  if (out.empty() || out.back() != t_max) out.push_back(t_max);
  return out;
}

MomentCurve run_ensemble(const Params1D& params, const EnsembleConfig& cfg) {
  validate_config(cfg);
  const std::size_t n_cp = cfg.checkpoints.size();
  const std::int64_t n_chunks =
      static_cast<std::int64_t>((cfg.walkers + kChunk - 1) / static_cast<std::uint64_t>(kChunk));
  if (static_cast<std::uint64_t>(n_chunks) * n_cp > kMaxSlots) {
    throw ResourceError("accumulator table exceeds memory cap: walkers=" +
                        std::to_string(cfg.walkers) +
                        " checkpoints=" + std::to_string(n_cp));
  }
  std::vector<Slot> slots(static_cast<std::size_t>(n_chunks) * n_cp);

  run_chunks(cfg, n_chunks, [&](std::int64_t chunk) {
    const std::uint64_t w0 = static_cast<std::uint64_t>(chunk) * kChunk;
    const std::uint64_t w1 = std::min(cfg.walkers, w0 + kChunk);
    const std::size_t nw = static_cast<std::size_t>(w1 - w0);
    Slot* chunk_slots = &slots[static_cast<std::size_t>(chunk) * n_cp];

    std::vector<RngStream> rng;
    rng.reserve(nw);
    std::vector<WalkerState1D> state(nw);
    for (std::size_t i = 0; i < nw; ++i) {
      rng.emplace_back(cfg.master_seed, w0 + i);
      state[i] = init_walker(params, rng[i].next_double());
    }

    std::size_t ci = 0;
    auto record = [&](std::size_t idx) {
      Slot& slot = chunk_slots[idx];
      for (std::size_t i = 0; i < nw; ++i) {
        const std::int64_t x = state[i].x;
        const std::int64_t sq = x * x;
        slot.sum_x += x;
        slot.sum_sq += sq;
        const double sqd = static_cast<double>(sq);
        slot.sum_quad += sqd * sqd;
      }
    };
    if (cfg.checkpoints[ci] == 1) record(ci++);
    for (std::int64_t t = 1; t < cfg.t_max && ci < n_cp; ++t) {
      for (std::size_t i = 0; i < nw; ++i) {
        state[i] = advance(state[i], params, rng[i].next_double());
      }
      if (t + 1 == cfg.checkpoints[ci]) record(ci++);
    }
  });

  return reduce_slots(cfg, slots, n_cp, 1);
}

MomentCurve run_ensemble_2d(const Params2D& params, const EnsembleConfig& cfg) {
  validate_config(cfg);
  const std::size_t n_cp = cfg.checkpoints.size();
  const std::int64_t n_chunks =
      static_cast<std::int64_t>((cfg.walkers + kChunk - 1) / static_cast<std::uint64_t>(kChunk));
  if (static_cast<std::uint64_t>(n_chunks) * n_cp > kMaxSlots) {
    throw ResourceError("accumulator table exceeds memory cap");
  }
  std::vector<Slot> slots(static_cast<std::size_t>(n_chunks) * n_cp);

  run_chunks(cfg, n_chunks, [&](std::int64_t chunk) {
    const std::uint64_t w0 = static_cast<std::uint64_t>(chunk) * kChunk;
    const std::uint64_t w1 = std::min(cfg.walkers, w0 + kChunk);
    const std::size_t nw = static_cast<std::size_t>(w1 - w0);
    Slot* chunk_slots = &slots[static_cast<std::size_t>(chunk) * n_cp];

    std::vector<RngStream> rng;
    rng.reserve(nw);
    std::vector<WalkerState2D> state(nw);
    for (std::size_t i = 0; i < nw; ++i) {
      rng.emplace_back(cfg.master_seed, w0 + i);
      state[i] = init_walker_2d(params, rng[i].next_double());
    }

    std::size_t ci = 0;
    auto record = [&](std::size_t idx) {
      Slot& slot = chunk_slots[idx];
      for (std::size_t i = 0; i < nw; ++i) {
        const std::int64_t sq = state[i].x1 * state[i].x1 + state[i].x2 * state[i].x2;
        slot.sum_x += state[i].x1;
        slot.sum_y += state[i].x2;
        slot.sum_sq += sq;
        const double sqd = static_cast<double>(sq);
        slot.sum_quad += sqd * sqd;
      }
    };
    if (cfg.checkpoints[ci] == 1) record(ci++);
    for (std::int64_t t = 1; t < cfg.t_max && ci < n_cp; ++t) {
      for (std::size_t i = 0; i < nw; ++i) {
        state[i] = advance_2d(state[i], params, rng[i].next_double());
      }
      if (t + 1 == cfg.checkpoints[ci]) record(ci++);
    }
  });

  return reduce_slots(cfg, slots, n_cp, 2);
}

ExponentFit fit_exponent(const MomentCurve& curve, std::pair<double, double> window) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::int64_t n = 0;
  for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
    const double t = static_cast<double>(curve.checkpoints[i]);
    if (t < window.first || t > window.second) continue;
    if (!(curve.msd[i] > 0.0)) {
      throw InsufficientData("msd must be positive throughout the fit window");
    }
    const double lx = std::log(t);
    const double ly = std::log(curve.msd[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 5) {
    throw InsufficientData("need at least 5 checkpoints in the window, found " +
                           std::to_string(n));
  }
  const double nd = static_cast<double>(n);
  const double sxx_c = sxx - sx * sx / nd;
  const double sxy_c = sxy - sx * sy / nd;
  const double syy_c = syy - sy * sy / nd;
  ExponentFit fit;
  fit.exponent = sxy_c / sxx_c;
  fit.log_coefficient = (sy - fit.exponent * sx) / nd;
  fit.r_squared = syy_c > 0.0 ? (sxy_c * sxy_c) / (sxx_c * syy_c) : 1.0;
  return fit;
}

}  // namespace erws::sim
