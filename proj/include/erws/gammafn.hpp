#pragma once

#include <cstdint>

namespace erws::exact {

// Gamma(t + alpha) / Gamma(t) for t >= 1 and alpha in (-2, 2).
// Integer alpha takes an exact rising/falling factorial product; every other
// alpha goes through a Stirling-series difference that never subtracts two
// large log-gammas, so the relative error stays near 1e-15 even at t = 1e12
// (a plain exp(lgamma(t+a) - lgamma(t)) loses five digits there).
// Throws DomainError if t < 1 or t + alpha <= 0.
double gamma_ratio(double t, double alpha);

namespace detail {
// Non-integer path, exposed so tests can check agreement with the product
// path on the overlap (integer alpha).
double gamma_ratio_stirling(double t, double alpha);
}  // namespace detail

// 1/Gamma(x) on (-2, 2], computed pole-free as x(x+1)/Gamma(x+2).
// Exactly zero at the poles x = 0 and x = -1.
double reciprocal_gamma(double x);

// H_t = sum_{k=1}^{t} 1/k. Pairwise summation up to 1e6 terms,
// Euler-Maclaurin beyond; the two agree to ~1e-13 at the crossover.
double harmonic_number(std::int64_t t);

}  // namespace erws::exact
