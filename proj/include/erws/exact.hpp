#pragma once

#include "erws/gammafn.hpp"
#include "erws/model.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace erws::exact {

struct AsymptoticTerm {
  double coefficient = 0;
  double exponent = 0;
  bool has_log = false;
};

// Terms ordered by decreasing exponent; at equal exponent the t^a*ln(t) term
// precedes the plain power (only gamma = 1/2 produces that tie). fitted marks
// expansions obtained by fitting the recurrence tail near a resonance, where
// no closed form is available.
struct AsymptoticExpansion {
  std::vector<AsymptoticTerm> terms;
  bool fitted = false;
};

// <X_t> = (2s-1) Gamma(t+gamma) / (Gamma(1+gamma) Gamma(t)).
double first_moment(const Params1D& params, std::int64_t t);

// Coefficient/exponent of <X_t> ~ (2s-1)/Gamma(1+gamma) * t^gamma.
std::pair<double, double> first_moment_asymptotic(const Params1D& params);

// <sigma_t^2> and <X_t^2>. The raw variants take (eps, r, gamma) directly so
// the eps = 0 boundary and algebraic limits are reachable; the Params1D
// entry points forward to them. Single-step resonance guards (radius 1e-9 on
// the vanishing denominators) divert to exact recurrence iteration.
double sigma2_exact(const Params1D& params, std::int64_t t);
double second_moment_exact(const Params1D& params, std::int64_t t);
double sigma2_raw(double eps, double r, std::int64_t t);
double second_moment_raw(double eps, double r, double gamma, std::int64_t t);

// True when the corresponding closed form is inside a resonance guard and
// values are produced by recurrence iteration instead.
bool sigma2_resonant(double eps, double r);
bool second_moment_resonant(double eps, double r, double gamma);
bool baseline_resonant(double gamma, double r);

AsymptoticExpansion second_moment_asymptotics(const Params1D& params);
AsymptoticExpansion second_moment_asymptotics_raw(double eps, double r, double gamma);

// Unperturbed (eps = 0) second moment:
// [G(t+2g)/G(2g) - G(t+1-r)/G(1-r)] / ((2g+r-1) Gamma(t)). gamma in (0,1).
double baseline_second_moment(double gamma, double r, std::int64_t t);

RegimeReport classify_regime(const Params1D& params);
// eps = 0 selects the unperturbed regime rules.
RegimeReport classify_regime_raw(double eps, double r, double gamma);

enum class ResidualPath { regular, residual, super };

struct ResidualReport {
  double gamma = 0;  // the path's memory parameter for this (eps, r)
  double value = 0;  // diffusivity (regular/residual) or t^{1+eps*r} coefficient (super)
  double gap = 0;    // value minus the unperturbed reference (1/r, or 1/r^2 + 1/r for super)
};

ResidualReport residual_gap(double eps, double r, ResidualPath path);

// Continuous-time analogue of the two moment difference equations:
//   x'(t) = (-(eps+r) x + eps)/t,   y'(t) = (2 gamma / t) y + x(t).
// Returns (x(t), y(t)) for integration constants c_const (in x) and d_const
// (in y). Throws ResonanceError where a vanishing denominator multiplies a
// nonzero constant; there is no iterative fallback in continuous time.
std::pair<double, double> ode_analogue(const Params1D& params, double c_const, double d_const,
                                       double t);

// Product of (I + (gamma + gammap A)/k) over k < t applied to the initial
// mean (s1-s3, s2-s4); O(t) iteration, no closed form exists.
std::array<double, 2> first_moment_2d(const Params2D& params, std::int64_t t);

// <|X_t|^2> equals the 1D closed form on (eps, r, gamma); the rotation part
// gammap drops out because v . Av = 0.
double second_moment_2d(const Params2D& params, std::int64_t t);

}  // namespace erws::exact
