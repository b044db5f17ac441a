#include "erws/oracle.hpp"

#include "erws/errors.hpp"
#include "erws/sim.hpp"

#include <map>
#include <string>

namespace erws::oracle {

namespace {

void check_checkpoints(const std::vector<std::int64_t>& checkpoints, std::int64_t t_max) {
  if (checkpoints.empty()) throw RangeError("checkpoints must be non-empty");
  std::int64_t prev = 0;
  for (std::int64_t c : checkpoints) {
    if (c <= prev || c > t_max) {
      throw RangeError("checkpoints must be strictly increasing within [1, t_max]");
    }
    prev = c;
  }
}

}  // namespace

MomentTable iterate_recurrences(const Params1D& params, std::int64_t t_max,
                                const std::vector<std::int64_t>& checkpoints) {
  check_checkpoints(checkpoints, t_max);
  MomentTable table;
  double s2 = 1.0;
  double m1 = 2.0 * params.s - 1.0;
  double m2 = 1.0;
  std::size_t ci = 0;
  for (std::int64_t t = 1; t <= t_max && ci < checkpoints.size(); ++t) {
    if (t == checkpoints[ci]) {
      table.t_values.push_back(t);
      table.sigma2.push_back(s2);
      table.m1.push_back(m1);
      table.m2.push_back(m2);
      ++ci;
    }
    const double ti = 1.0 / static_cast<double>(t);
    s2 = (1.0 - (params.eps + params.r) * ti) * s2 + params.eps * ti;
    m1 = (1.0 + params.gamma * ti) * m1;
    m2 = (1.0 + 2.0 * params.gamma * ti) * m2 + s2;
  }
  return table;
}

namespace detail {

std::array<mpq_class, 3> mixture_law(std::int64_t n_pos, std::int64_t n_neg, std::int64_t n_zero,
                                     const Params1D& params) {
  const mpq_class p(params.p), q(params.q), eps(params.eps);
  const mpq_class r_hat = 1 - p - q;  // exact complement so each law sums to 1
  const mpq_class np(n_pos), nm(n_neg), nz(n_zero);
  const mpq_class k = np + nm + nz;
  const mpq_class half_eps = eps / 2;
  std::array<mpq_class, 3> law = {(np * p + nm * q + nz * half_eps) / k,
                                  (np * q + nm * p + nz * half_eps) / k,
                                  ((np + nm) * r_hat + nz * (1 - eps)) / k};
  return law;
}

std::array<mpq_class, 3> sufficient_law(std::int64_t x, std::int64_t n, std::int64_t t,
                                        const Params1D& params) {
  const mpq_class p(params.p), q(params.q), eps(params.eps);
  const mpq_class c1 = p + q - eps;  // 1 - eps - r with r = 1 - p - q, exactly
  const mpq_class xv(x), nv(n), tv(t);
  const mpq_class a = nv * c1;
  const mpq_class g = p - q;
  return {(a + xv * g) / (2 * tv) + eps / 2, (a - xv * g) / (2 * tv) + eps / 2,
          1 - eps - a / tv};
}

std::array<mpq_class, 5> mixture_law_2d(const std::array<std::int64_t, 5>& counts,
                                        const Params2D& params) {
  const mpq_class p(params.p), q(params.q), pp(params.pp), qp(params.qp), eps(params.eps);
  const mpq_class r_hat = 1 - p - q - pp - qp;
  const mpq_class npi(counts[0]), npj(counts[1]), nmi(counts[2]), nmj(counts[3]), nz(counts[4]);
  const mpq_class k = npi + npj + nmi + nmj + nz;
  const mpq_class quarter_eps = eps / 4;
  // A maps +i -> +j -> -i -> -j -> +i; a remembered step contributes p to its
  // copy, q to its reverse, pp to its rotation, qp to its counter-rotation.
  return {(npi * p + nmi * q + nmj * pp + npj * qp + nz * quarter_eps) / k,
          (npj * p + nmj * q + npi * pp + nmi * qp + nz * quarter_eps) / k,
          (nmi * p + npi * q + npj * pp + nmj * qp + nz * quarter_eps) / k,
          (nmj * p + npj * q + nmi * pp + npi * qp + nz * quarter_eps) / k,
          ((npi + npj + nmi + nmj) * r_hat + nz * (1 - eps)) / k};
}

std::array<mpq_class, 5> sufficient_law_2d(std::int64_t x1, std::int64_t x2, std::int64_t nx,
                                           std::int64_t ny, std::int64_t t,
                                           const Params2D& params) {
  const mpq_class p(params.p), q(params.q), pp(params.pp), qp(params.qp), eps(params.eps);
  const mpq_class r_hat = 1 - p - q - pp - qp;
  const mpq_class g = p - q;
  const mpq_class gp = pp - qp;
  const mpq_class x1v(x1), x2v(x2), nxv(nx), nyv(ny), tv(t);
  const mpq_class half_eps_n = (nxv + nyv) * eps / 2;
  const mpq_class base_i = nxv * (p + q) + nyv * (pp + qp) - half_eps_n;
  const mpq_class base_j = nyv * (p + q) + nxv * (pp + qp) - half_eps_n;
  const mpq_class two_t = 2 * tv;
  const mpq_class qe = eps / 4;
  return {(x1v * g - x2v * gp + base_i) / two_t + qe, (x2v * g + x1v * gp + base_j) / two_t + qe,
          (-x1v * g + x2v * gp + base_i) / two_t + qe,
          (-x2v * g - x1v * gp + base_j) / two_t + qe,
          (nxv + nyv) * (r_hat + eps - 1) / tv + 1 - eps};
}

}  // namespace detail

ExactMoments1D enumerate_exact(const Params1D& params, std::int64_t t) {
  if (t < 1 || t > kEnumCap1D) {
    throw CapExceeded("enumerate_exact supports t in [1, " + std::to_string(kEnumCap1D) +
                      "], got " + std::to_string(t));
  }
  const mpq_class s(params.s);

  // law cache keyed by (k, n_pos, n_neg); k <= 7 keeps this tiny
  std::map<std::array<std::int64_t, 3>, std::array<mpq_class, 3>> laws;
  auto law_for = [&](std::int64_t k, std::int64_t np,
                     std::int64_t nm) -> const std::array<mpq_class, 3>& {
    const std::array<std::int64_t, 3> key = {k, np, nm};
    auto it = laws.find(key);
    if (it == laws.end()) {
      it = laws.emplace(key, detail::mixture_law(np, nm, k - np - nm, params)).first;
    }
    return it->second;
  };

  ExactMoments1D out;
  out.m1 = 0;
  out.m2 = 0;
  out.total_probability = 0;

  std::int64_t n_codes = 1;
  for (std::int64_t i = 1; i < t; ++i) n_codes *= 3;

  for (int first = 0; first < 2; ++first) {
    const int sigma1 = first == 0 ? 1 : -1;
    for (std::int64_t code = 0; code < n_codes; ++code) {
      mpq_class prob = sigma1 == 1 ? s : mpq_class(1) - s;
      std::int64_t np = sigma1 == 1 ? 1 : 0;
      std::int64_t nm = 1 - np;
      std::int64_t c = code;
      bool dead = false;
      for (std::int64_t k = 1; k < t; ++k) {
        const int digit = static_cast<int>(c % 3);
        c /= 3;
        const std::array<mpq_class, 3>& law = law_for(k, np, nm);
        prob *= law[digit];
        if (prob == 0) {
          dead = true;
          break;
        }
        if (digit == 0) {
          ++np;
        } else if (digit == 1) {
          ++nm;
        }
      }
      if (dead) continue;
      const mpq_class x(np - nm);
      out.total_probability += prob;
      out.m1 += prob * x;
      out.m2 += prob * x * x;
    }
  }
  return out;
}

ExactMoments2D enumerate_exact_2d(const Params2D& params, std::int64_t t) {
  if (t < 1 || t > kEnumCap2D) {
    throw CapExceeded("enumerate_exact_2d supports t in [1, " + std::to_string(kEnumCap2D) +
                      "], got " + std::to_string(t));
  }
  const std::array<mpq_class, 4> init = {mpq_class(params.s1), mpq_class(params.s2),
                                         mpq_class(params.s3), mpq_class(params.s4)};
  std::map<std::array<std::int64_t, 5>, std::array<mpq_class, 5>> laws;
  auto law_for = [&](const std::array<std::int64_t, 5>& counts)
      -> const std::array<mpq_class, 5>& {
    auto it = laws.find(counts);
    if (it == laws.end()) it = laws.emplace(counts, detail::mixture_law_2d(counts, params)).first;
    return it->second;
  };

  ExactMoments2D out;
  out.m1 = {mpq_class(0), mpq_class(0)};
  out.m2 = 0;
  out.total_probability = 0;

  std::int64_t n_codes = 1;
  for (std::int64_t i = 1; i < t; ++i) n_codes *= 5;

  for (int first = 0; first < 4; ++first) {
    for (std::int64_t code = 0; code < n_codes; ++code) {
      mpq_class prob = init[first];
      if (prob == 0) continue;
      std::array<std::int64_t, 5> counts = {0, 0, 0, 0, 0};
      counts[first] = 1;
      std::int64_t c = code;
      bool dead = false;
      for (std::int64_t k = 1; k < t; ++k) {
        const int digit = static_cast<int>(c % 5);
        c /= 5;
        prob *= law_for(counts)[digit];
        if (prob == 0) {
          dead = true;
          break;
        }
        ++counts[digit];
      }
      if (dead) continue;
      const mpq_class x1(counts[0] - counts[2]);
      const mpq_class x2(counts[1] - counts[3]);
      out.total_probability += prob;
      out.m1[0] += prob * x1;
      out.m1[1] += prob * x2;
      out.m2 += prob * (x1 * x1 + x2 * x2);
    }
  }
  return out;
}

std::array<double, 3> conditional_dist_full_history(const std::vector<int>& history,
                                                    const Params1D& params) {
  if (history.empty()) throw RangeError("history must be non-empty");
  std::int64_t x = 0;
  std::int64_t n = 0;
  for (int step : history) {
    if (step != 1 && step != -1 && step != 0) {
      throw RangeError("1D history entries must be +1, -1, or 0");
    }
    x += step;
    n += step * step;
  }
  const sim::WalkerState1D state{static_cast<std::int64_t>(history.size()), x, n};
  return sim::step_distribution(state, params);
}

std::array<double, 5> conditional_dist_full_history_2d(const std::vector<int>& history,
                                                       const Params2D& params) {
  if (history.empty()) throw RangeError("history must be non-empty");
  static constexpr std::int64_t kDx[5] = {1, 0, -1, 0, 0};
  static constexpr std::int64_t kDy[5] = {0, 1, 0, -1, 0};
  std::int64_t x1 = 0, x2 = 0, nx = 0, ny = 0;
  for (int code : history) {
    if (code < 0 || code > 4) throw RangeError("2D history codes must be in [0, 4]");
    x1 += kDx[code];
    x2 += kDy[code];
    nx += kDx[code] != 0 ? 1 : 0;
    ny += kDy[code] != 0 ? 1 : 0;
  }
  const sim::WalkerState2D state{static_cast<std::int64_t>(history.size()), x1, x2, nx, ny};
  return sim::step_distribution_2d(state, params);
}

}  // namespace erws::oracle
