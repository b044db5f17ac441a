#include "erws/model.hpp"

#include "erws/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace erws {

namespace {

constexpr double kNormTol = 1e-12;

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0)) {
    throw RangeError(std::string(name) + " must lie strictly in (0, 1), got " + std::to_string(v));
  }
}

void check_closed_unit(double v, const char* name) {
  if (!(v >= 0.0) || !(v <= 1.0)) {
    throw RangeError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::sub_diffusive: return "sub_diffusive";
    case Regime::diffusive: return "diffusive";
    case Regime::log_anomalous: return "log_anomalous";
    case Regime::super_diffusive: return "super_diffusive";
  }
  return "unknown";
}

Params1D validate_params_1d(double p, double q, double r, double eps, double s) {
  check_open_unit(p, "p");
  check_open_unit(q, "q");
  check_open_unit(r, "r");
  check_open_unit(eps, "eps");
  check_closed_unit(s, "s");
  const double sum = p + q + r;
  if (std::fabs(sum - 1.0) > kNormTol) {
    throw NormalizationError("p + q + r must equal 1, got " + std::to_string(sum));
  }
  Params1D out;
  out.p = p;
  out.q = q;
  out.r = r;
  out.eps = eps;
  out.s = s;
  out.gamma = p - q;
  return out;
}

Params2D validate_params_2d(double p, double q, double pp, double qp, double r, double eps,
                            double s1, double s2, double s3, double s4) {
  check_open_unit(p, "p");
  check_open_unit(q, "q");
  check_open_unit(pp, "pp");
  check_open_unit(qp, "qp");
  check_open_unit(r, "r");
  check_open_unit(eps, "eps");
  check_closed_unit(s1, "s1");
  check_closed_unit(s2, "s2");
  check_closed_unit(s3, "s3");
  check_closed_unit(s4, "s4");
  const double sum = p + q + pp + qp + r;
  if (std::fabs(sum - 1.0) > kNormTol) {
    throw NormalizationError("p + q + pp + qp + r must equal 1, got " + std::to_string(sum));
  }
  const double ssum = s1 + s2 + s3 + s4;
  if (std::fabs(ssum - 1.0) > kNormTol) {
    throw NormalizationError("s1 + s2 + s3 + s4 must equal 1, got " + std::to_string(ssum));
  }
  Params2D out;
  out.p = p;
  out.q = q;
  out.pp = pp;
  out.qp = qp;
  out.r = r;
  out.eps = eps;
  out.s1 = s1;
  out.s2 = s2;
  out.s3 = s3;
  out.s4 = s4;
  out.gamma = p - q;
  out.gammap = pp - qp;
  return out;
}

}  // namespace erws
