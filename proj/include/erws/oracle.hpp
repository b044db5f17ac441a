#pragma once

#include "erws/model.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

namespace erws::oracle {

// Enumeration caps: 2*3^(t-1) histories in 1D, 4*5^(t-1) in 2D. Config
// knobs, not API surface; the defaults keep a full sweep under a second.
constexpr std::int64_t kEnumCap1D = 8;
constexpr std::int64_t kEnumCap2D = 5;

struct MomentTable {
  std::vector<std::int64_t> t_values;
  std::vector<double> sigma2;
  std::vector<double> m1;
  std::vector<double> m2;
};

// Forward iteration of the three moment recurrences from their t = 1 initial
// conditions (sigma2 = 1, m1 = 2s-1, m2 = 1), sampled at the checkpoints.
MomentTable iterate_recurrences(const Params1D& params, std::int64_t t_max,
                                const std::vector<std::int64_t>& checkpoints);

struct ExactMoments1D {
  mpq_class m1;
  mpq_class m2;
  mpq_class total_probability;  // must come out exactly 1
};

struct ExactMoments2D {
  std::array<mpq_class, 2> m1;
  mpq_class m2;
  mpq_class total_probability;
};

// Brute-force expansion of every history (base-3 / base-5 integer codes),
// with all probabilities as exact rationals built from the dyadic values of
// the double parameters. The conditional law is the uniform-memory mixture:
// weight n+/t applies (p,q,r-hat), n-/t applies (q,p,r-hat), n0/t applies
// (eps/2, eps/2, 1-eps). Throws CapExceeded beyond the caps.
ExactMoments1D enumerate_exact(const Params1D& params, std::int64_t t);
ExactMoments2D enumerate_exact_2d(const Params2D& params, std::int64_t t);

// Conditional step law of the next step given a full explicit history
// (entries +1/-1/0), evaluated from the freshly accumulated raw sums
// sum sigma_k and sum sigma_k^2 through the canonical double expression.
// Exact-equality comparisons against sim::step_distribution verify that the
// incrementally maintained sufficient statistic is the same reduction.
std::array<double, 3> conditional_dist_full_history(const std::vector<int>& history,
                                                    const Params1D& params);

// 2D history entries use the fixed direction codes 0:+i 1:+j 2:-i 3:-j 4:0.
std::array<double, 5> conditional_dist_full_history_2d(const std::vector<int>& history,
                                                       const Params2D& params);

namespace detail {

// The two rational forms of the 1D conditional law: the mixture over the
// remembered step and the reduced sufficient-statistic expression. They are
// equal as rationals for every reachable count vector; the test suite checks
// that identity exhaustively.
std::array<mpq_class, 3> mixture_law(std::int64_t n_pos, std::int64_t n_neg, std::int64_t n_zero,
                                     const Params1D& params);
std::array<mpq_class, 3> sufficient_law(std::int64_t x, std::int64_t n, std::int64_t t,
                                        const Params1D& params);

// 2D counterparts; counts ordered (n+i, n+j, n-i, n-j, n0).
std::array<mpq_class, 5> mixture_law_2d(const std::array<std::int64_t, 5>& counts,
                                        const Params2D& params);
std::array<mpq_class, 5> sufficient_law_2d(std::int64_t x1, std::int64_t x2, std::int64_t nx,
                                           std::int64_t ny, std::int64_t t,
                                           const Params2D& params);

}  // namespace detail

}  // namespace erws::oracle
