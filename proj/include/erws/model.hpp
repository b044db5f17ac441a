#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace erws {

// One-dimensional walk parameters. p/q/r are the copy/reverse/stop
// probabilities for a remembered nonzero step, eps the restart probability
// for a remembered stop, s the probability that the first step is +1.
// gamma = p - q is derived, never set directly. p + q + r = 1; eps is not
// part of that simplex.
struct Params1D {
  double p = 0;
  double q = 0;
  double r = 0;
  double eps = 0;
  double s = 0.5;
  double gamma = 0;
};

// Planar walk parameters. pp/qp are the probabilities of copying the
// remembered step rotated by +90 / -90 degrees (the rotation is the fixed
// matrix v -> (-v_y, v_x)). Constraint p + q + pp + qp + r = 1; eps separate.
// s1..s4 weight the initial direction in the order (+i, +j, -i, -j).
struct Params2D {
  double p = 0;
  double q = 0;
  double pp = 0;
  double qp = 0;
  double r = 0;
  double eps = 0;
  double s1 = 0.25, s2 = 0.25, s3 = 0.25, s4 = 0.25;
  double gamma = 0;
  double gammap = 0;
};

enum class Regime { sub_diffusive, diffusive, log_anomalous, super_diffusive };

const char* regime_name(Regime regime);

// Leading large-time behaviour of the second moment plus the subleading
// power terms. residual_gap is the excess of the diffusivity over the
// unperturbed 1/r and is populated only in the diffusive regime with eps > 0.
// fitted marks reports produced by the recurrence-fit fallback near
// resonant parameter combinations.
struct RegimeReport {
  Regime regime = Regime::diffusive;
  double leading_exponent = 0;
  double leading_coefficient = 0;
  bool leading_has_log = false;
  std::vector<std::pair<double, double>> secondary_terms;  // (exponent, coefficient)
  std::optional<double> residual_gap;
  bool fitted = false;
};

// Both validators throw RangeError for values outside their open interval
// and NormalizationError when the simplex constraint is off by more than
// 1e-12. s and s1..s4 live in the closed interval [0,1]: a deterministic
// first step is a legitimate model.
Params1D validate_params_1d(double p, double q, double r, double eps, double s);
Params2D validate_params_2d(double p, double q, double pp, double qp, double r, double eps,
                            double s1, double s2, double s3, double s4);

}  // namespace erws
