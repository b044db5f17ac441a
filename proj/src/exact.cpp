#include "erws/exact.hpp"

#include "erws/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace erws::exact {

namespace {

constexpr double kGuard = 1e-9;  // resonance guard radius on vanishing denominators

// Forward iteration of the sigma^2 and second-moment recurrences,
//   sigma2(t+1) = (1 - (eps+r)/t) sigma2(t) + eps/t
//   m2(t+1)     = (1 + 2 gamma/t) m2(t) + sigma2(t+1)
// from the t = 1 initial conditions. Unconditionally stable; used as the
// fallback inside resonance guards and as the eps = 0 baseline fallback.
double iterate_m2(double eps, double r, double gamma, std::int64_t t) {
  double s2 = 1.0;
  double m2 = 1.0;
  for (std::int64_t k = 1; k < t; ++k) {
    const double ki = 1.0 / static_cast<double>(k);
    s2 = (1.0 - (eps + r) * ki) * s2 + eps * ki;
    m2 = (1.0 + 2.0 * gamma * ki) * m2 + s2;
  }
  return m2;
}

double iterate_sigma2(double eps, double r, std::int64_t t) {
  double s2 = 1.0;
  for (std::int64_t k = 1; k < t; ++k) {
    const double ki = 1.0 / static_cast<double>(k);
    s2 = (1.0 - (eps + r) * ki) * s2 + eps * ki;
  }
  return s2;
}

// C from the sigma^2 closed form, written with Gamma(2-eps-r) so the
// evaluation stays away from the Gamma pole at eps+r = 1.
double sigma2_prefactor(double eps, double r) {
  return r * (1.0 - eps - r) /
         ((eps + r) * static_cast<double>(std::tgamma(2.0L - static_cast<long double>(eps) -
                                                      static_cast<long double>(r))));
}

void check_positive_time(std::int64_t t) {
  if (t < 1) throw DomainError("t must be a positive integer, got " + std::to_string(t));
}

// Least-squares fit of ln m2 against ln t over log-spaced checkpoints in
// [2^14, 10^6]; the escape hatch where closed forms are resonance-blocked.
AsymptoticExpansion fitted_expansion(double eps, double r, double gamma) {
  const std::int64_t t_max = 1000000;
  std::vector<std::int64_t> cps;
  for (std::int64_t t = 16384; t < t_max; t *= 2) cps.push_back(t);
  cps.push_back(t_max);

  double s2 = 1.0, m2 = 1.0;
  std::size_t ci = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::int64_t n = 0;
  for (std::int64_t k = 1; k <= t_max; ++k) {
    if (k == cps[ci]) {
      const double lx = std::log(static_cast<double>(k));
      const double ly = std::log(m2);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
      if (++ci == cps.size()) break;
    }
    const double ki = 1.0 / static_cast<double>(k);
    s2 = (1.0 - (eps + r) * ki) * s2 + eps * ki;
    m2 = (1.0 + 2.0 * gamma * ki) * m2 + s2;
  }
  const double nd = static_cast<double>(n);
  const double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / nd;

  AsymptoticExpansion out;
  out.terms.push_back({std::exp(intercept), slope, false});
  out.fitted = true;
  return out;
}

void sort_terms(std::vector<AsymptoticTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [](const AsymptoticTerm& a, const AsymptoticTerm& b) {
    if (a.exponent != b.exponent) return a.exponent > b.exponent;
    return a.has_log && !b.has_log;
  });
}

}  // namespace

double first_moment(const Params1D& params, std::int64_t t) {
  check_positive_time(t);
  const double m1_init = 2.0 * params.s - 1.0;
  if (t == 1) return m1_init;
  return m1_init * gamma_ratio(static_cast<double>(t), params.gamma) *
         reciprocal_gamma(1.0 + params.gamma);
}

std::pair<double, double> first_moment_asymptotic(const Params1D& params) {
  return {(2.0 * params.s - 1.0) * reciprocal_gamma(1.0 + params.gamma), params.gamma};
}

bool sigma2_resonant(double eps, double r) { return std::fabs(1.0 - eps - r) < kGuard; }

bool second_moment_resonant(double eps, double r, double gamma) {
  if (sigma2_resonant(eps, r)) return true;
  if (std::fabs(1.0 - eps - r - 2.0 * gamma) < kGuard) return true;
  // gamma exactly 1/2 has its own closed branch; only near-misses fall back
  if (std::fabs(gamma - 0.5) < kGuard && gamma != 0.5) return true;
  return false;
}

bool baseline_resonant(double gamma, double r) {
  return std::fabs(2.0 * gamma + r - 1.0) < kGuard;
}

double sigma2_raw(double eps, double r, std::int64_t t) {
  check_positive_time(t);
  if (t == 1) return 1.0;
  if (eps + r == 0.0) return 1.0;
  if (sigma2_resonant(eps, r)) return iterate_sigma2(eps, r, t);
  return sigma2_prefactor(eps, r) * gamma_ratio(static_cast<double>(t), -(eps + r)) +
         eps / (eps + r);
}

double sigma2_exact(const Params1D& params, std::int64_t t) {
  return sigma2_raw(params.eps, params.r, t);
}

double baseline_second_moment(double gamma, double r, std::int64_t t) {
  check_positive_time(t);
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw RangeError("baseline requires gamma in (0, 1), got " + std::to_string(gamma));
  }
  if (!(r > 0.0) || !(r < 1.0)) {
    throw RangeError("baseline requires r in (0, 1), got " + std::to_string(r));
  }
  if (baseline_resonant(gamma, r)) return iterate_m2(0.0, r, gamma, t);
  const double td = static_cast<double>(t);
  return (gamma_ratio(td, 2.0 * gamma) * reciprocal_gamma(2.0 * gamma) -
          gamma_ratio(td, 1.0 - r) * reciprocal_gamma(1.0 - r)) /
         (2.0 * gamma + r - 1.0);
}

double second_moment_raw(double eps, double r, double gamma, std::int64_t t) {
  check_positive_time(t);
  if (t == 1) return 1.0;
  if (eps <= 0.0) {
    if (gamma > 0.0 && gamma < 1.0 && !baseline_resonant(gamma, r)) {
      return baseline_second_moment(gamma, r, t);
    }
    return iterate_m2(0.0, r, gamma, t);
  }
  if (second_moment_resonant(eps, r, gamma)) return iterate_m2(eps, r, gamma, t);

  const double td = static_cast<double>(t);
  const double er = eps + r;
  const double tau = 1.0 - eps - r;  // exponent of the sigma^2 transient
  const double big_c = sigma2_prefactor(eps, r);

  if (gamma == 0.5) {
    // t ln t branch; the t-coefficient r/(eps+r)^2 is pinned by the t = 1
    // initial condition.
    return (eps / er) * td * harmonic_number(t) -
           (big_c / er) * gamma_ratio(td, tau) + (r / (er * er)) * td;
  }
  const double one_m_2g = 1.0 - 2.0 * gamma;
  const double a = eps / (one_m_2g * er);
  const double b = big_c / (tau - 2.0 * gamma);
  const double big_d =
      -reciprocal_gamma(2.0 * gamma) * (eps / (er * one_m_2g) + r / (er * (tau - 2.0 * gamma)));
  return a * td + b * gamma_ratio(td, tau) + big_d * gamma_ratio(td, 2.0 * gamma);
}

double second_moment_exact(const Params1D& params, std::int64_t t) {
  return second_moment_raw(params.eps, params.r, params.gamma, t);
}

AsymptoticExpansion second_moment_asymptotics_raw(double eps, double r, double gamma) {
  AsymptoticExpansion out;
  if (eps <= 0.0) {
    if (!(gamma > 0.0) || baseline_resonant(gamma, r)) return fitted_expansion(0.0, r, gamma);
    const double denom = 2.0 * gamma + r - 1.0;
    out.terms.push_back({reciprocal_gamma(2.0 * gamma) / denom, 2.0 * gamma, false});
    out.terms.push_back({-reciprocal_gamma(1.0 - r) / denom, 1.0 - r, false});
    sort_terms(out.terms);
    return out;
  }
  if (second_moment_resonant(eps, r, gamma)) return fitted_expansion(eps, r, gamma);

  const double er = eps + r;
  const double tau = 1.0 - eps - r;
  const double big_c = sigma2_prefactor(eps, r);
  if (gamma == 0.5) {
    out.terms.push_back({eps / er, 1.0, true});
    out.terms.push_back({r / (er * er), 1.0, false});
    out.terms.push_back({-big_c / er, tau, false});
    sort_terms(out.terms);
    return out;
  }
  const double one_m_2g = 1.0 - 2.0 * gamma;
  out.terms.push_back({eps / (one_m_2g * er), 1.0, false});
  out.terms.push_back({big_c / (tau - 2.0 * gamma), tau, false});
  out.terms.push_back(
      {-reciprocal_gamma(2.0 * gamma) * (eps / (er * one_m_2g) + r / (er * (tau - 2.0 * gamma))),
       2.0 * gamma, false});
  sort_terms(out.terms);
  return out;
}

AsymptoticExpansion second_moment_asymptotics(const Params1D& params) {
  return second_moment_asymptotics_raw(params.eps, params.r, params.gamma);
}

RegimeReport classify_regime_raw(double eps, double r, double gamma) {
  RegimeReport rep;
  const AsymptoticExpansion exp = second_moment_asymptotics_raw(eps, r, gamma);
  rep.fitted = exp.fitted;

  if (eps <= 0.0) {
    if (gamma < 0.5) {
      rep.regime = Regime::sub_diffusive;
    } else if (gamma == 0.5) {
      rep.regime = Regime::diffusive;
    } else {
      rep.regime = Regime::super_diffusive;
    }
  } else {
    if (gamma < 0.5) {
      rep.regime = Regime::diffusive;
    } else if (gamma == 0.5) {
      rep.regime = Regime::log_anomalous;
    } else {
      rep.regime = Regime::super_diffusive;
    }
  }

  if (!exp.terms.empty()) {
    rep.leading_exponent = exp.terms.front().exponent;
    rep.leading_coefficient = exp.terms.front().coefficient;
    rep.leading_has_log = exp.terms.front().has_log;
    for (std::size_t i = 1; i < exp.terms.size(); ++i) {
      rep.secondary_terms.emplace_back(exp.terms[i].exponent, exp.terms[i].coefficient);
    }
  }
  if (eps > 0.0 && rep.regime == Regime::diffusive && !rep.fitted) {
    rep.residual_gap = rep.leading_coefficient - 1.0 / r;
  }
  return rep;
}

RegimeReport classify_regime(const Params1D& params) {
  return classify_regime_raw(params.eps, params.r, params.gamma);
}

ResidualReport residual_gap(double eps, double r, ResidualPath path) {
  if (!(eps >= 0.0) || !(eps < 1.0)) {
    throw RangeError("residual_gap requires eps in [0, 1), got " + std::to_string(eps));
  }
  if (!(r > 0.0) || !(r < 1.0)) {
    throw RangeError("residual_gap requires r in (0, 1), got " + std::to_string(r));
  }
  ResidualReport out;
  switch (path) {
    case ResidualPath::regular:
      out.gamma = 0.5 * (1.0 - eps);
      out.value = 1.0 / (eps + r);
      out.gap = out.value - 1.0 / r;
      break;
    case ResidualPath::residual:
      out.gamma = 0.5 * (1.0 - eps * r);
      out.value = 1.0 / (r * (eps + r));
      out.gap = out.value - 1.0 / r;
      break;
    case ResidualPath::super: {
      out.gamma = 0.5 * (1.0 + eps * r);
      const double er = eps + r;
      out.value = (1.0 / static_cast<double>(std::tgamma(1.0L +
                                                         static_cast<long double>(eps) *
                                                             static_cast<long double>(r)))) *
                  (1.0 / (r * er) + r / (er * (er + eps * r)));
      out.gap = out.value - (1.0 / (r * r) + 1.0 / r);
      break;
    }
  }
  if (!(out.gamma > 0.0) || !(out.gamma < 1.0)) {
    throw RangeError("path gamma leaves (0, 1): " + std::to_string(out.gamma));
  }
  const double p_implied = 0.5 * (1.0 - r + out.gamma);
  const double q_implied = 0.5 * (1.0 - r - out.gamma);
  if (!(p_implied > 0.0) || !(p_implied < 1.0) || !(q_implied > 0.0) || !(q_implied < 1.0)) {
    throw RangeError("implied (p, q) leave (0, 1) for gamma = " + std::to_string(out.gamma) +
                     ", r = " + std::to_string(r));
  }
  return out;
}

std::pair<double, double> ode_analogue(const Params1D& params, double c_const, double d_const,
                                       double t) {
  if (!(t > 0.0)) throw DomainError("ode_analogue requires t > 0");
  const double eps = params.eps;
  const double r = params.r;
  const double gamma = params.gamma;
  const double er = eps + r;
  const double tau = 1.0 - eps - r;

  const double x = eps / er + c_const * std::pow(t, -er);
  if (gamma == 0.5) {
    const double y =
        d_const * t + (eps / er) * t * std::log(t) - (c_const / er) * std::pow(t, tau);
    return {x, y};
  }
  if (std::fabs(1.0 - 2.0 * gamma) < kGuard) {
    throw ResonanceError("ode_analogue: 1 - 2 gamma vanishes away from the exact 1/2 branch");
  }
  if (c_const != 0.0 && std::fabs(tau - 2.0 * gamma) < kGuard) {
    throw ResonanceError("ode_analogue: 1 - eps - r - 2 gamma vanishes with c_const != 0");
  }
  const double homog = d_const * std::pow(t, 2.0 * gamma);
  const double linear = eps / (er * (1.0 - 2.0 * gamma)) * t;
  const double transient =
      (c_const == 0.0) ? 0.0 : c_const * std::pow(t, tau) / (tau - 2.0 * gamma);
  return {x, homog + linear + transient};
}

std::array<double, 2> first_moment_2d(const Params2D& params, std::int64_t t) {
  check_positive_time(t);
  double vx = params.s1 - params.s3;
  double vy = params.s2 - params.s4;
  for (std::int64_t k = 1; k < t; ++k) {
    const double ki = 1.0 / static_cast<double>(k);
    // A v = (-vy, vx)
    const double nx = vx + (params.gamma * vx - params.gammap * vy) * ki;
    const double ny = vy + (params.gamma * vy + params.gammap * vx) * ki;
    vx = nx;
    vy = ny;
  }
  return {vx, vy};
}

double second_moment_2d(const Params2D& params, std::int64_t t) {
  return second_moment_raw(params.eps, params.r, params.gamma, t);
}

}  // namespace erws::exact
