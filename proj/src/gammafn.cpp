#include "erws/gammafn.hpp"

#include "erws/errors.hpp"

#include <cmath>
#include <string>

namespace erws::exact {

namespace {

// B_{2k} / (2k (2k-1)) for the Stirling series tail.
constexpr double kStirlingCoef[8] = {
    1.0 / 12,   -1.0 / 360,      1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 7.0 / 1092, -3617.0 / 122400,
};

// lgamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2], valid for z >= 16.
double stirling_tail(double z) {
  const double zi = 1.0 / z;
  const double z2 = zi * zi;
  double term = zi;
  double s = 0.0;
  for (double c : kStirlingCoef) {
    s += c * term;
    term *= z2;
  }
  return s;
}

double gamma_ratio_product(double t, long m) {
  if (m == 0) return 1.0;
  double out = 1.0;
  if (m > 0) {
    for (long j = 0; j < m; ++j) out *= t + static_cast<double>(j);
    return out;
  }
  for (long j = 1; j <= -m; ++j) out *= t - static_cast<double>(j);
  return 1.0 / out;
}

}  // namespace

namespace detail {

double gamma_ratio_stirling(double t, double alpha) {
  // Shift into the Stirling regime; each factor is Gamma recursion applied
  // to numerator and denominator at once.
  double pre = 1.0;
  while (t < 16.0) {
    pre *= t / (t + alpha);
    t += 1.0;
  }
  const double rest = (t + alpha - 0.5) * std::log1p(alpha / t) - alpha +
                      stirling_tail(t + alpha) - stirling_tail(t);
  return pre * std::pow(t, alpha) * std::exp(rest);
}

}  // namespace detail

double gamma_ratio(double t, double alpha) {
  if (!(t >= 1.0)) {
    throw DomainError("gamma_ratio requires t >= 1, got " + std::to_string(t));
  }
  if (!(t + alpha > 0.0)) {
    throw DomainError("gamma_ratio pole: t + alpha = " + std::to_string(t + alpha));
  }
  const double rounded = std::nearbyint(alpha);
  if (std::fabs(alpha - rounded) < 4e-16) {
    return gamma_ratio_product(t, static_cast<long>(rounded));
  }
  return detail::gamma_ratio_stirling(t, alpha);
}

double reciprocal_gamma(double x) {
  return x * (x + 1.0) / static_cast<double>(std::tgamma(static_cast<long double>(x) + 2.0L));
}

double harmonic_number(std::int64_t t) {
  if (t <= 0) return 0.0;
  if (t > 1000000) {
    constexpr double kEulerMascheroni = 0.57721566490153286061;
    const double ti = 1.0 / static_cast<double>(t);
    return std::log(static_cast<double>(t)) + kEulerMascheroni +
           ti * (0.5 - ti * (1.0 / 12 - ti * ti * (1.0 / 120)));
  }
  // Pairwise reduction keeps the roundoff at O(log t) ulps.
  struct Pair {
    static double sum(std::int64_t lo, std::int64_t n) {
      if (n <= 8) {
        double s = 0.0;
        for (std::int64_t k = lo; k < lo + n; ++k) s += 1.0 / static_cast<double>(k);
        return s;
      }
      const std::int64_t h = n / 2;
      return sum(lo, h) + sum(lo + h, n - h);
    }
  };
  return Pair::sum(1, t);
}

}  // namespace erws::exact
